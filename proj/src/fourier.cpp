#include "oaforge/fourier.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "oaforge/algebra.hpp"
#include "oaforge/errors.hpp"

namespace oaforge {

Dyadic Dyadic::from_scaled(std::int64_t coef, int n) {
    Dyadic d{coef, n};
    if (coef == 0) return {0, 0};
    while (d.log2_den > 0 && (d.num & 1) == 0) {
        d.num /= 2;
        --d.log2_den;
    }
    return d;
}

std::string Dyadic::to_string() const {
    if (log2_den == 0) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(std::int64_t{1} << log2_den);
}

CoordPerm c13_pi() { return CoordPerm::from_cycles(13, {{2, 3, 4, 5, 6}, {8, 9, 10, 11, 12}}); }

std::vector<FourierEntry> c13_fourier_table() {
    struct Row {
        std::int64_t num;
        int log2_den;
        std::vector<const char*> reps;
    };
    static const std::vector<Row> rows = {
        {3, 4, {"0 00000|0 00000|0"}},
        {-1, 4, {"1 01011|1 01011|0"}},
        {1, 4, {"1 00111|1 00111|0", "0 01111|0 01111|0"}},
        {-1, 5,
         {"0 10100|1 01111|1", "0 10010|1 01111|1", "0 01111|1 10100|1", "0 01111|1 10010|1", "1 00111|0 11100|1",
          "1 11100|0 00111|1", "1 01011|0 10101|1", "1 10101|0 01011|1"}},
        {1, 5,
         {"1 11111|1 00000|1", "1 01110|1 10001|1", "1 10101|1 01010|1", "1 00100|1 11011|1", "1 00100|0 11111|1",
          "1 11111|0 00100|1", "1 10101|0 01110|1", "1 01110|0 10101|1", "0 11110|1 10001|1", "0 01111|1 10001|1",
          "0 11000|1 01111|1", "0 00011|1 11110|1"}},
    };
    std::vector<FourierEntry> out;
    for (const auto& r : rows)
        for (const char* text : r.reps) out.push_back({Dyadic{r.num, r.log2_den}, parse_word(text)});
    return out;
}

namespace {

bool zero_sets_disjoint(Word u, Word w, int len) {
    const Word mask = all_ones(len);
    return ((~u & mask) & (~w & mask)) == 0;
}

}  // namespace

FourierReport fourier_report(const VertexSet& c) {
    const int n = c.dim();
    FourierReport rep;
    rep.n = n;
    const SpectrumVector s = spectrum(c);
    std::map<Dyadic, std::uint64_t> hist;
    std::set<int> weights;
    std::vector<std::int64_t> coef_of(s.coef.size(), 0);
    for (Word y = 0; y < s.coef.size(); ++y) {
        const std::int64_t v = s.coef[y];
        coef_of[y] = v;
        if (v == 0) continue;
        const Dyadic d = Dyadic::from_scaled(v, n);
        rep.support.push_back({d, y});
        ++hist[d];
        if (y != 0) weights.insert(weight(y));
    }
    rep.nonzero = rep.support.size();
    rep.at_zero = Dyadic::from_scaled(s.coef[0], n);
    for (const auto& [v, cnt] : hist) rep.histogram.push_back({v, cnt});
    rep.single_weight = weights.size() <= 1;
    rep.strength = c.empty() ? -1 : oa_strength(c);

    if (n == 13) {
        const CoordPerm pi = c13_pi();
        bool inv = true;
        for (Word y = 0; y < coef_of.size() && inv; ++y) inv = coef_of[pi.apply(y)] == coef_of[y];
        rep.pi_invariant = inv;

        // +-1/16 exactly on (u|u|0) with wt(u) = 4; +-1/32 exactly on weight-8
        // (u|w|1) with wt(u) even and disjoint zero sets.
        std::set<Word> sixteenths, thirty_seconds;
        for (Word u = 0; u < 64; ++u) {
            if (weight(u) == 4) sixteenths.insert(u | (u << 6));
            if (weight(u) % 2) continue;
            for (Word w = 0; w < 64; ++w) {
                const Word y = u | (w << 6) | unit(13);
                if (weight(y) == 8 && zero_sets_disjoint(u, w, 6)) thirty_seconds.insert(y);
            }
        }
        std::set<Word> got16, got32;
        for (const auto& e : rep.support) {
            if (e.value.log2_den == 4 && (e.value.num == 1 || e.value.num == -1)) got16.insert(e.y);
            if (e.value.log2_den == 5 && (e.value.num == 1 || e.value.num == -1)) got32.insert(e.y);
        }
        rep.sixteenths_structure = sixteenths.size() == 15 && got16 == sixteenths;
        rep.thirty_seconds_structure = thirty_seconds.size() == 96 && got32 == thirty_seconds;

        // The pi-orbits of the tabulated representatives must reproduce the support exactly.
        std::map<Word, Dyadic> expected;
        bool consistent = true;
        for (const auto& e : c13_fourier_table()) {
            Word y = e.y;
            do {
                auto [it, fresh] = expected.emplace(y, e.value);
                if (!fresh && it->second != e.value) consistent = false;
                y = pi.apply(y);
            } while (y != e.y);
        }
        std::map<Word, Dyadic> actual;
        for (const auto& e : rep.support) actual.emplace(e.y, e.value);
        rep.table_matches = consistent && expected == actual;
    }
    return rep;
}

}  // namespace oaforge
