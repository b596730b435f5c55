#pragma once

// Canonical forms, equivalence, and automorphism groups of vertex sets of
// Q_n under the full hypercube group (translations and coordinate
// permutations) or under coordinate permutations only.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oaforge/cube.hpp"

namespace oaforge {

using GroupOrder = unsigned __int128;
std::string to_string(GroupOrder v);
GroupOrder factorial(int k);

enum class GroupKind : std::uint8_t {
    FullAut = 1,            // translations and all coordinate permutations, order 2^n n!
    CoordPermFixFirst = 2,  // permutations of coordinates 2..n, order (n-1)!
    CoordPerm = 3,          // all coordinate permutations, order n!
};

std::string to_string(GroupKind k);
GroupKind parse_group_kind(const std::string& name);

struct SymmetryGroup {
    GroupKind kind = GroupKind::FullAut;
    int n = 0;
    GroupOrder order() const;
};

// w -> perm(w) xor shift
struct AffineMap {
    CoordPerm perm;
    Word shift = 0;

    static AffineMap identity(int n) { return {CoordPerm(n), 0}; }
    Word apply(Word w) const noexcept { return perm.apply(w) ^ shift; }
    // (a * b)(w) = a(b(w))
    friend AffineMap operator*(const AffineMap& a, const AffineMap& b) {
        return {a.perm * b.perm, a.perm.apply(b.shift) ^ a.shift};
    }
    AffineMap inverse() const {
        CoordPerm inv = perm.inverse();
        return {inv, inv.apply(shift)};
    }
    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

// Embeds (encoding version, n, group kind) ahead of the canonical image.
class CanonicalKey {
public:
    static constexpr std::uint8_t kEncodingVersion = 1;

    CanonicalKey() = default;
    explicit CanonicalKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}
    static CanonicalKey from_hex(const std::string& hex);

    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
    std::string hex() const;
    bool empty() const noexcept { return bytes_.empty(); }

    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;

private:
    std::vector<std::uint8_t> bytes_;
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept;
};

struct CanonResult {
    CanonicalKey key;
    std::vector<Word> image;        // sorted canonical image of the words
    AffineMap labeling;             // maps the input onto `image`
    GroupOrder aut_order = 1;       // order of the stabilizer in the group
    std::vector<AffineMap> generators;
};

// `words` may repeat (multisets). For FullAut, n <= kMaxDenseDim.
CanonResult canonize(int n, std::span<const Word> words, GroupKind kind);

CanonicalKey canonical_form(const VertexSet& s, const SymmetryGroup& g);
bool are_equivalent(const VertexSet& a, const VertexSet& b, const SymmetryGroup& g);

struct AutGroupReport {
    GroupOrder order = 1;
    std::vector<AffineMap> generators;
    std::vector<std::uint64_t> set_orbit_sizes;         // descending
    std::vector<std::uint64_t> complement_orbit_sizes;  // descending
    std::vector<std::vector<Word>> orbits;              // every orbit of Q_n, by least member
};

AutGroupReport automorphism_group(const VertexSet& s, const SymmetryGroup& g);

// Orbits of the group generated by `gens` on all of Q_n.
std::vector<std::vector<Word>> vertex_orbits(int n, const std::vector<AffineMap>& gens);

}  // namespace oaforge
