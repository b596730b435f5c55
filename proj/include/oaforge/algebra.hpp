#pragma once

// Orthogonal-array and equitable-partition verification, the classical
// bounds, and the structural transforms between arrays and partitions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oaforge/cube.hpp"

namespace oaforge {

struct OAParams {
    std::uint64_t N = 0;
    int n = 0;
    int q = 2;
    int t = 0;

    // Throws InvalidArgument unless q^t divides N and 0 <= t <= n.
    void validate() const;
    std::uint64_t lambda() const;
};

struct QuotientMatrix {
    std::vector<std::vector<int>> s;

    QuotientMatrix() = default;
    QuotientMatrix(std::initializer_list<std::initializer_list<int>> rows);
    explicit QuotientMatrix(std::vector<std::vector<int>> rows) : s(std::move(rows)) {}

    int k() const noexcept { return static_cast<int>(s.size()); }
    // Common row sum; throws InvalidArgument if rows disagree.
    int row_sum() const;
    std::string to_string() const;  // [[0,13],[3,10]]
    friend bool operator==(const QuotientMatrix&, const QuotientMatrix&) = default;
};

struct EquitablePartition {
    int n = 0;
    std::vector<VertexSet> cells;
    QuotientMatrix matrix;
};

// Largest t with a vanishing spectrum on weights 1..t; n for a spectrum
// concentrated at zero. Throws InvalidArgument on the empty set.
int oa_strength(const VertexSet& s);

// Brute-force strength check by counting every t-coordinate pattern.
bool strength_oracle(const VertexSet& s, int t);

// Checks every vertex; throws NotEquitable with a witness on the first violation.
QuotientMatrix verify_equitable(const std::vector<VertexSet>& cells);
QuotientMatrix verify_equitable(EquitablePartition& p);

struct StrengthFromMatrix {
    int t = 0;
    int theta = 0;          // second largest eigenvalue
    bool integral = true;   // false: t is a floor, or the spectrum was not integral
};

StrengthFromMatrix quotient_to_strength(const QuotientMatrix& m, int q = 2);

// Characteristic polynomial det(xI - M), coefficients from x^k down to x^0.
std::vector<std::int64_t> characteristic_polynomial(const QuotientMatrix& m);
// Integer eigenvalues with multiplicity, descending; nullopt when some root is not an integer.
std::optional<std::vector<int>> integer_spectrum(const QuotientMatrix& m);

enum class BoundStatus { Tight, StrictSlack, Violated, NotApplicable };
std::string to_string(BoundStatus s);

struct BoundsReport {
    BoundStatus bierbrauer_friedman = BoundStatus::NotApplicable;
    BoundStatus levenshtein = BoundStatus::NotApplicable;  // q = 2, even t
    BoundStatus fdf_khalyavin = BoundStatus::NotApplicable;
    bool fdf_equality = false;           // t = 2n/3 - 1 exactly
    bool fdf_requires_simple = false;    // N > 2^(n-1): only the simple-array form applies
};

BoundsReport check_bounds(const OAParams& p);

// (C, complement) for an array on the Bierbrauer-Friedman bound, verified.
EquitablePartition oa_to_equitable(const VertexSet& c);

// C|0 u (C+1)|1 for an array of even strength t; strength >= t+1 is verified.
VertexSet lengthen(const VertexSet& c);

// Words with `symbol` at 1-based `coord`, that coordinate deleted.
VertexSet shorten(const VertexSet& c, int coord, int symbol);

// (C, C+1, rest) for an array of even strength on the Levenshtein bound.
EquitablePartition three_partition(const VertexSet& c);

// (C_even u C'_odd, C'', C'_even u C_odd) from a three_partition result.
EquitablePartition completely_regular_split(const EquitablePartition& p);

// All periods k with k + C = C.
VertexSet kernel(const VertexSet& c);

}  // namespace oaforge
