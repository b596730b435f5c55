#include "oaforge/cube.hpp"

#include <algorithm>
#include <numeric>

#include "oaforge/errors.hpp"

namespace oaforge {

void check_dimension(int n, int max_dim) {
    if (n < 1 || n > max_dim) {
        throw InvalidArgument("dimension " + std::to_string(n) + " outside 1.." + std::to_string(max_dim));
    }
}

std::vector<Word> neighbors(Word w, int n) {
    std::vector<Word> out(n);
    for (int i = 0; i < n; ++i) out[i] = w ^ (Word{1} << i);
    return out;
}

Word parse_word(std::string_view text) {
    Word w = 0;
    int pos = 0;
    for (char ch : text) {
        if (ch == '|' || ch == ' ' || ch == '\t') continue;
        if (ch != '0' && ch != '1') throw InvalidArgument("bad symbol in word: " + std::string(text));
        if (pos >= kMaxDim) throw InvalidArgument("word too long: " + std::string(text));
        if (ch == '1') w |= Word{1} << pos;
        ++pos;
    }
    return w;
}

std::string format_word(Word w, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if ((w >> i) & 1u) s[i] = '1';
    return s;
}

CoordPerm::CoordPerm(int n) : image_(n) { std::iota(image_.begin(), image_.end(), 0); }

CoordPerm::CoordPerm(std::vector<int> image) : image_(std::move(image)) {
    std::vector<char> seen(image_.size(), 0);
    for (int v : image_) {
        if (v < 0 || v >= size() || seen[v]) throw InvalidArgument("not a permutation");
        seen[v] = 1;
    }
}

CoordPerm CoordPerm::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 0);
    for (const auto& cyc : cycles) {
        for (std::size_t j = 0; j < cyc.size(); ++j) {
            int from = cyc[j] - 1;
            int to = cyc[(j + 1) % cyc.size()] - 1;
            if (from < 0 || from >= n || to < 0 || to >= n) throw InvalidArgument("cycle entry out of range");
            image[from] = to;
        }
    }
    return CoordPerm(std::move(image));
}

Word CoordPerm::apply(Word w) const noexcept {
    Word out = 0;
    while (w) {
        int i = std::countr_zero(w);
        w &= w - 1;
        out |= Word{1} << image_[i];
    }
    return out;
}

bool CoordPerm::is_identity() const noexcept {
    for (int i = 0; i < size(); ++i)
        if (image_[i] != i) return false;
    return true;
}

CoordPerm CoordPerm::inverse() const {
    std::vector<int> inv(image_.size());
    for (int i = 0; i < size(); ++i) inv[image_[i]] = i;
    return CoordPerm(std::move(inv));
}

CoordPerm operator*(const CoordPerm& a, const CoordPerm& b) {
    std::vector<int> out(b.image_.size());
    for (int i = 0; i < b.size(); ++i) out[i] = a.image_[b.image_[i]];
    return CoordPerm(std::move(out));
}

VertexSet::VertexSet(int n) : n_(n) {
    check_dimension(n, kMaxDenseDim);
    mult_.assign(cube_size(n), 0);
}

VertexSet VertexSet::from_words(int n, std::span<const Word> words) {
    VertexSet s(n);
    for (Word w : words) s.insert(w);
    return s;
}

VertexSet VertexSet::full(int n) {
    VertexSet s(n);
    std::fill(s.mult_.begin(), s.mult_.end(), 1u);
    s.size_ = cube_size(n);
    return s;
}

void VertexSet::insert(Word w, std::uint32_t count) {
    if (w >= mult_.size()) throw InvalidArgument("word " + std::to_string(w) + " outside Q_" + std::to_string(n_));
    if (count == 0) return;
    std::uint32_t before = mult_[w];
    mult_[w] += count;
    size_ += count;
    if (before <= 1 && mult_[w] > 1) ++repeated_;
}

bool VertexSet::erase(Word w) {
    if (w >= mult_.size() || mult_[w] == 0) return false;
    if (mult_[w] == 2) --repeated_;
    --mult_[w];
    --size_;
    return true;
}

std::vector<Word> VertexSet::members() const {
    std::vector<Word> out;
    for (Word w = 0; w < mult_.size(); ++w)
        if (mult_[w]) out.push_back(w);
    return out;
}

std::vector<Word> VertexSet::words() const {
    std::vector<Word> out;
    out.reserve(size_);
    for (Word w = 0; w < mult_.size(); ++w)
        for (std::uint32_t k = 0; k < mult_[w]; ++k) out.push_back(w);
    return out;
}

VertexSet VertexSet::complement() const {
    if (!is_simple()) throw InvalidArgument("complement of a multiset is undefined");
    VertexSet out(n_);
    for (Word w = 0; w < mult_.size(); ++w) out.mult_[w] = mult_[w] ? 0u : 1u;
    out.size_ = cube_size(n_) - size_;
    return out;
}

VertexSet VertexSet::translated(Word shift) const {
    VertexSet out(n_);
    for (Word w = 0; w < mult_.size(); ++w) out.mult_[w ^ shift] = mult_[w];
    out.size_ = size_;
    out.repeated_ = repeated_;
    return out;
}

VertexSet VertexSet::permuted(const CoordPerm& perm) const {
    if (perm.size() != n_) throw InvalidArgument("permutation size does not match dimension");
    VertexSet out(n_);
    for (Word w = 0; w < mult_.size(); ++w) out.mult_[perm.apply(w)] = mult_[w];
    out.size_ = size_;
    out.repeated_ = repeated_;
    return out;
}

std::uint64_t VertexSet::recount() const { return std::accumulate(mult_.begin(), mult_.end(), std::uint64_t{0}); }

SpectrumVector walsh_hadamard(std::span<const std::int64_t> f) {
    const std::size_t len = f.size();
    if (len == 0 || (len & (len - 1)) != 0) throw InvalidArgument("transform length must be a power of two");
    SpectrumVector out;
    out.n = std::countr_zero(len);
    out.coef.assign(f.begin(), f.end());
    auto& a = out.coef;
    for (std::size_t h = 1; h < len; h <<= 1) {
        for (std::size_t i = 0; i < len; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                std::int64_t x = a[j];
                std::int64_t y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
    }
    return out;
}

SpectrumVector spectrum(const VertexSet& s) {
    std::vector<std::int64_t> f(s.table().begin(), s.table().end());
    return walsh_hadamard(f);
}

std::uint64_t subcube_count(const VertexSet& s, Word fixed_coords, Word fixed_values) {
    const auto& t = s.table();
    std::uint64_t total = 0;
    const Word want = fixed_values & fixed_coords;
    for (Word w = 0; w < t.size(); ++w)
        if ((w & fixed_coords) == want) total += t[w];
    return total;
}

}  // namespace oaforge
