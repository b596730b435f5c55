#pragma once

// Brute-force reference implementations used by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "oaforge/canon.hpp"
#include "oaforge/cube.hpp"
#include "oaforge/xcover.hpp"

namespace oracle {

using oaforge::Word;

// fhat by the defining sum, scaled by 2^n.
inline std::vector<std::int64_t> naive_wht(const std::vector<std::int64_t>& f) {
    const std::size_t len = f.size();
    std::vector<std::int64_t> out(len, 0);
    for (std::size_t y = 0; y < len; ++y)
        for (std::size_t x = 0; x < len; ++x) out[y] += (std::popcount(x & y) & 1) ? -f[x] : f[x];
    return out;
}

// Largest t such that every t columns show each pattern equally often.
inline int brute_strength(const oaforge::VertexSet& s) {
    const int n = s.dim();
    const auto rows = s.words();
    int best = 0;
    for (int t = 1; t <= n; ++t) {
        bool ok = true;
        for (Word cols = 0; cols < (Word{1} << n) && ok; ++cols) {
            if (std::popcount(cols) != t) continue;
            std::vector<std::uint64_t> hist(Word{1} << n, 0);
            for (Word r : rows) ++hist[r & cols];
            std::uint64_t first = hist[0];
            for (Word pat = cols;; pat = (pat - 1) & cols) {
                if (hist[pat] != first) {
                    ok = false;
                    break;
                }
                if (pat == 0) break;
            }
        }
        if (!ok) break;
        best = t;
    }
    return best;
}

// Number of block subsets meeting every multiplicity, by enumerating all subsets.
inline std::uint64_t subset_cover_count(const oaforge::CoverInstance& inst) {
    const int b = inst.block_count();
    std::uint64_t count = 0;
    std::vector<int> load(inst.item_count());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b); ++mask) {
        std::fill(load.begin(), load.end(), 0);
        for (int j = 0; j < b; ++j)
            if (mask >> j & 1)
                for (int it : inst.block(j)) ++load[it];
        bool ok = true;
        for (int i = 0; i < inst.item_count() && ok; ++i) ok = load[i] == inst.alpha(i);
        count += ok;
    }
    return count;
}

struct GroupElement {
    std::vector<int> perm;  // 0-based images
    Word shift = 0;
    Word apply(Word w) const {
        Word out = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (w >> i & 1) out |= Word{1} << perm[i];
        return out ^ shift;
    }
};

// Every element of the group, by listing permutations and shifts.
inline std::vector<GroupElement> group_elements(int n, oaforge::GroupKind kind) {
    std::vector<GroupElement> out;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    const Word shifts = kind == oaforge::GroupKind::FullAut ? (Word{1} << n) : 1;
    do {
        if (kind == oaforge::GroupKind::CoordPermFixFirst && p[0] != 0) continue;
        for (Word s = 0; s < shifts; ++s) out.push_back({p, s});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Image sets of s under the whole group: the minimum, and the stabilizer size.
struct OrbitSummary {
    std::vector<Word> least_image;
    std::uint64_t stabilizer = 0;
    std::uint64_t orbit = 0;
};

inline OrbitSummary orbit_summary(const std::vector<Word>& words, const std::vector<GroupElement>& group) {
    OrbitSummary out;
    std::vector<Word> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<Word>> images;
    for (const auto& g : group) {
        std::vector<Word> img;
        for (Word w : sorted) img.push_back(g.apply(w));
        std::sort(img.begin(), img.end());
        if (img == sorted) ++out.stabilizer;
        images.push_back(std::move(img));
    }
    std::sort(images.begin(), images.end());
    out.least_image = images.front();
    out.orbit = static_cast<std::uint64_t>(std::unique(images.begin(), images.end()) - images.begin());
    return out;
}

inline oaforge::VertexSet random_set(int n, std::mt19937_64& rng, double density) {
    std::bernoulli_distribution coin(density);
    oaforge::VertexSet s(n);
    for (Word w = 0; w < (Word{1} << n); ++w)
        if (coin(rng)) s.insert(w);
    return s;
}

}  // namespace oracle
