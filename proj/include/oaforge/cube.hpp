#pragma once

// Hypercube primitives. Coordinate i (1-based) of a word is bit i-1, so the
// first coordinate is the least significant bit.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oaforge {

using Word = std::uint32_t;

inline constexpr int kMaxDim = 31;
inline constexpr int kMaxDenseDim = 25;

inline int weight(Word w) noexcept { return std::popcount(w); }
inline int distance(Word a, Word b) noexcept { return std::popcount(a ^ b); }
inline Word unit(int coord) noexcept { return Word{1} << (coord - 1); }
inline bool has_coord(Word w, int coord) noexcept { return (w >> (coord - 1)) & 1u; }
inline Word all_ones(int n) noexcept { return n >= 32 ? ~Word{0} : (Word{1} << n) - 1; }
inline std::uint64_t cube_size(int n) noexcept { return std::uint64_t{1} << n; }

void check_dimension(int n, int max_dim = kMaxDim);

// The n neighbours of w, flipping coordinates 1..n in order.
std::vector<Word> neighbors(Word w, int n);

// Text form lists coordinates 1..n left to right; '|' and spaces are ignored.
Word parse_word(std::string_view text);
std::string format_word(Word w, int n);

// Coordinate permutation: image[i] is the 0-based image of 0-based coordinate i.
class CoordPerm {
public:
    CoordPerm() = default;
    explicit CoordPerm(int n);
    explicit CoordPerm(std::vector<int> image);

    // Builds from a 1-based cycle list such as {{2,3,4,5,6},{8,9,10,11,12}}.
    static CoordPerm from_cycles(int n, const std::vector<std::vector<int>>& cycles);

    int size() const noexcept { return static_cast<int>(image_.size()); }
    int operator[](int i) const noexcept { return image_[i]; }
    const std::vector<int>& image() const noexcept { return image_; }

    Word apply(Word w) const noexcept;
    bool is_identity() const noexcept;
    CoordPerm inverse() const;
    // (a * b)(i) = a(b(i))
    friend CoordPerm operator*(const CoordPerm& a, const CoordPerm& b);
    friend bool operator==(const CoordPerm&, const CoordPerm&) = default;

private:
    std::vector<int> image_;
};

// A multiset of vertices of Q_n backed by a dense table of multiplicities.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n);
    static VertexSet from_words(int n, std::span<const Word> words);
    static VertexSet full(int n);

    int dim() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool is_simple() const noexcept { return repeated_ == 0; }

    std::uint32_t multiplicity(Word w) const noexcept { return mult_[w]; }
    bool contains(Word w) const noexcept { return mult_[w] != 0; }
    const std::vector<std::uint32_t>& table() const noexcept { return mult_; }

    void insert(Word w, std::uint32_t count = 1);
    // Removes one copy; returns false when w is absent.
    bool erase(Word w);

    // Distinct members in increasing order.
    std::vector<Word> members() const;
    // Members repeated by multiplicity, increasing order.
    std::vector<Word> words() const;

    VertexSet complement() const;
    VertexSet translated(Word shift) const;
    VertexSet permuted(const CoordPerm& perm) const;

    std::uint64_t recount() const;

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.n_ == b.n_ && a.mult_ == b.mult_; }

private:
    int n_ = 0;
    std::vector<std::uint32_t> mult_;
    std::uint64_t size_ = 0;
    std::uint64_t repeated_ = 0;  // number of words with multiplicity > 1
};

// Stores 2^n * fhat(y) exactly.
struct SpectrumVector {
    int n = 0;
    std::vector<std::int64_t> coef;
};

// Fast in-place butterfly; throws InvalidArgument if the length is not a power of two.
SpectrumVector walsh_hadamard(std::span<const std::int64_t> f);
SpectrumVector spectrum(const VertexSet& s);

// Total multiplicity of members agreeing with `fixed_values` on `fixed_coords`.
std::uint64_t subcube_count(const VertexSet& s, Word fixed_coords, Word fixed_values);

}  // namespace oaforge
