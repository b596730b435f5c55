#pragma once

// Exact Fourier summaries of a vertex set: support, dyadic value histogram,
// and the structural checks for the length-13 array.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oaforge/cube.hpp"

namespace oaforge {

// num / 2^log2_den in lowest terms (num odd unless log2_den == 0).
struct Dyadic {
    std::int64_t num = 0;
    int log2_den = 0;

    static Dyadic from_scaled(std::int64_t coef, int n);  // coef / 2^n
    std::string to_string() const;                        // "3/16", "-1/32", "1"
    friend auto operator<=>(const Dyadic& a, const Dyadic& b) {
        // compare num_a * 2^db with num_b * 2^da; exponents stay below 63 for n <= 31
        const int shift = std::max(a.log2_den, b.log2_den);
        return (a.num << (shift - a.log2_den)) <=> (b.num << (shift - b.log2_den));
    }
    friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

struct ValueCount {
    Dyadic value;
    std::uint64_t count = 0;
};

struct FourierEntry {
    Dyadic value;
    Word y = 0;
};

struct FourierReport {
    int n = 0;
    std::uint64_t nonzero = 0;
    Dyadic at_zero;
    std::vector<ValueCount> histogram;  // increasing value
    std::vector<FourierEntry> support;  // increasing y
    int strength = 0;                   // -1 for the empty set
    bool single_weight = false;         // every nonzero y != 0 has one weight

    // Only filled for n = 13.
    std::optional<bool> pi_invariant;
    std::optional<bool> sixteenths_structure;
    std::optional<bool> thirty_seconds_structure;
    std::optional<bool> table_matches;
};

FourierReport fourier_report(const VertexSet& c);

// The coordinate permutation (2 3 4 5 6)(8 9 10 11 12) on Q_13.
CoordPerm c13_pi();

// Representatives of the nonzero coefficients of the length-13 array under pi.
std::vector<FourierEntry> c13_fourier_table();

}  // namespace oaforge
