#include "oaforge/constructions.hpp"

#include <algorithm>
#include <array>
#include <queue>

#include "oaforge/algebra.hpp"
#include "oaforge/errors.hpp"

namespace oaforge {

namespace {

// Rows of the length-6 cell: two edges per row, the row index is the direction.
constexpr std::array<std::array<const char*, 4>, 6> kC6Rows = {{
    {"000000", "100000", "111111", "011111"},
    {"000110", "010110", "111001", "101001"},
    {"000011", "001011", "111100", "110100"},
    {"010001", "010101", "101110", "101010"},
    {"011000", "011010", "100111", "100101"},
    {"001100", "001101", "110011", "110010"},
}};

constexpr std::array<const char*, 8> kM2 = {"00", "01", "10", "12", "22", "23", "31", "33"};
constexpr std::array<const char*, 8> kM2Prime = {"00", "01", "11", "12", "22", "23", "30", "33"};

// z[i][b]
constexpr std::array<std::array<const char*, 2>, 4> kZ = {{
    {"000", "111"},
    {"110", "001"},
    {"011", "100"},
    {"101", "010"},
}};

constexpr std::array<const char*, 7> kSevenCycle = {"01", "00", "10", "12", "121", "111", "011"};

QuotientMatrix two_cell_matrix(const VertexSet& c) {
    std::vector<VertexSet> cells{c, c.complement()};
    return verify_equitable(cells);
}

std::uint32_t pow4(int k) { return std::uint32_t{1} << (2 * k); }

MdsCode complement_of(const MdsCode& m) {
    std::vector<std::uint32_t> w;
    for (std::uint32_t x = 0; x < pow4(m.k); ++x)
        if (!m.member[x]) w.push_back(x);
    return mds_from_words(m.k, w);
}

// M_a|0 u M_b|1 u M_c|2 u M_d|3
MdsCode append_layers(const MdsCode& a, const MdsCode& b, const MdsCode& c, const MdsCode& d) {
    const int k = a.k + 1;
    const std::array<const MdsCode*, 4> parts{&a, &b, &c, &d};
    std::vector<std::uint32_t> w;
    for (std::uint32_t s = 0; s < 4; ++s)
        for (auto x : parts[s]->words) w.push_back(x | (s << (2 * a.k)));
    return mds_from_words(k, w);
}

}  // namespace

std::vector<std::pair<Word, Word>> LabeledCode::edges() const {
    std::vector<std::pair<Word, Word>> out;
    for (const auto& row : kC6Rows) {
        out.emplace_back(parse_word(row[0]), parse_word(row[1]));
        out.emplace_back(parse_word(row[2]), parse_word(row[3]));
    }
    return out;
}

LabeledCode fdf_c6() {
    LabeledCode lc;
    lc.words = VertexSet(6);
    lc.dir.assign(64, 0);
    for (int i = 0; i < 6; ++i)
        for (const char* text : kC6Rows[i]) {
            const Word w = parse_word(text);
            lc.words.insert(w);
            lc.dir[w] = i + 1;
        }
    for (Word w : lc.words.members())
        if (!lc.words.contains(w ^ unit(lc.dir[w]))) throw VerificationFailure("C_6 edge table is inconsistent");
    return lc;
}

VertexSet fdf_c13() {
    const LabeledCode c6 = fdf_c6();
    VertexSet out(13);
    for (Word c : c6.words.members()) {
        const int i = c6.dir[c];
        for (Word b = 0; b < 64; ++b) {
            const int last = (weight(b) + has_coord(b, i) + has_coord(c, i)) & 1;
            out.insert(b | ((b ^ c) << 6) | (Word(last) << 12));
        }
    }
    return out;
}

VertexSet switching(const VertexSet& c13, const std::vector<int>& edges) {
    if (c13.dim() != 13) throw InvalidArgument("switching needs a set in Q_13");
    const LabeledCode c6 = fdf_c6();
    const auto edge_list = c6.edges();
    std::vector<char> used(edge_list.size(), 0);
    VertexSet out = c13;
    for (int e : edges) {
        if (e < 0 || e >= static_cast<int>(edge_list.size()))
            throw InvalidArgument("unknown edge id " + std::to_string(e));
        if (used[e]++) continue;
        for (Word c : {edge_list[e].first, edge_list[e].second})
            for (Word b = 0; b < 64; ++b) {
                const Word prefix = b | ((b ^ c) << 6);
                const Word with_last = prefix | unit(13);
                if (out.contains(prefix) == out.contains(with_last))
                    throw InvalidArgument("set does not carry the construction's block structure");
                if (out.contains(prefix)) {
                    out.erase(prefix);
                    out.insert(with_last);
                } else {
                    out.erase(with_last);
                    out.insert(prefix);
                }
            }
    }
    if (two_cell_matrix(out) != QuotientMatrix{{0, 13}, {3, 10}})
        throw VerificationFailure("switched partition has the wrong quotient matrix");
    return out;
}

VertexSet hamming_code(int r) {
    if (r < 2) throw InvalidArgument("hamming_code needs r >= 2");
    const int n = (1 << r) - 1;
    check_dimension(n, kMaxDenseDim);
    VertexSet out(n);
    for (Word w = 0; w < cube_size(n); ++w) {
        int syndrome = 0;
        for (Word x = w; x; x &= x - 1) syndrome ^= std::countr_zero(x) + 1;
        if (syndrome == 0) out.insert(w);
    }
    return out;
}

int quaternary_symbol(std::uint32_t w, int pos) { return static_cast<int>((w >> (2 * (pos - 1))) & 3u); }

std::uint32_t parse_quaternary(const std::string& text) {
    std::uint32_t w = 0;
    int pos = 0;
    for (char ch : text) {
        if (ch == ' ' || ch == '|') continue;
        if (ch < '0' || ch > '3') throw InvalidArgument("bad quaternary symbol in `" + text + "`");
        w |= static_cast<std::uint32_t>(ch - '0') << (2 * pos++);
    }
    return w;
}

std::string format_quaternary(std::uint32_t w, int k) {
    std::string s;
    for (int i = 1; i <= k; ++i) s.push_back(static_cast<char>('0' + quaternary_symbol(w, i)));
    return s;
}

MdsCode mds_from_words(int k, const std::vector<std::uint32_t>& words) {
    if (k < 1 || k > 12) throw InvalidArgument("quaternary length out of range");
    MdsCode m;
    m.k = k;
    m.member.assign(pow4(k), 0);
    for (auto w : words) {
        if (w >= pow4(k)) throw InvalidArgument("quaternary word out of range");
        m.member[w] = 1;
    }
    for (std::uint32_t w = 0; w < pow4(k); ++w)
        if (m.member[w]) m.words.push_back(w);
    return m;
}

bool mds_property_lines(const MdsCode& m) {
    for (int i = 1; i <= m.k; ++i) {
        const std::uint32_t mask = 3u << (2 * (i - 1));
        for (std::uint32_t x = 0; x < pow4(m.k); ++x) {
            if (x & mask) continue;
            int hits = 0;
            for (std::uint32_t s = 0; s < 4; ++s) hits += m.member[x | (s << (2 * (i - 1)))];
            if (hits != 2) return false;
        }
    }
    return true;
}

bool mds_property_pairing(const MdsCode& m) {
    const int shift = 2 * (m.k - 1);
    for (std::uint32_t x = 0; x < pow4(m.k - 1); ++x) {
        if (m.member[x | (0u << shift)] != m.member[x | (1u << shift)]) return false;
        if (m.member[x | (2u << shift)] != m.member[x | (3u << shift)]) return false;
    }
    return true;
}

MdsCode build_mk(int k) {
    if (k < 2) throw InvalidArgument("build_mk needs k >= 2");
    std::vector<std::uint32_t> a, b;
    for (auto t : kM2) a.push_back(parse_quaternary(t));
    for (auto t : kM2Prime) b.push_back(parse_quaternary(t));
    MdsCode m = mds_from_words(2, a);
    if (k > 2) {
        const MdsCode mp = mds_from_words(2, b);
        m = append_layers(m, mp, complement_of(m), complement_of(mp));
        for (int i = 4; i <= k; ++i) {
            const MdsCode bar = complement_of(m);
            m = append_layers(m, m, bar, bar);
        }
    }
    if (m.size() != 2 * (std::size_t{1} << (2 * (k - 1))))
        throw VerificationFailure("M_k has the wrong size");
    if (!mds_property_lines(m)) throw VerificationFailure("M_k is not a 2-fold MDS code");
    if (k > 3 && !mds_property_pairing(m)) throw VerificationFailure("M_k fails the last-symbol pairing");
    return m;
}

std::vector<std::uint32_t> odd_cycle_witness(const MdsCode& m) {
    auto adjacent = [&](std::uint32_t x, std::uint32_t y) {
        int diff = 0;
        for (int i = 1; i <= m.k; ++i) diff += quaternary_symbol(x, i) != quaternary_symbol(y, i);
        return diff == 1;
    };
    if (m.k >= 3) {
        std::vector<std::uint32_t> cyc;
        for (auto t : kSevenCycle) cyc.push_back(parse_quaternary(t));
        bool ok = true;
        for (std::size_t i = 0; i < cyc.size() && ok; ++i)
            ok = m.contains(cyc[i]) && adjacent(cyc[i], cyc[(i + 1) % cyc.size()]);
        if (ok) return cyc;
    }
    // Breadth-first 2-colouring; the first monochromatic edge closes an odd cycle.
    const std::size_t total = m.member.size();
    std::vector<int> depth(total, -1);
    std::vector<std::uint32_t> parent(total, 0);
    for (auto root : m.words) {
        if (depth[root] >= 0) continue;
        depth[root] = 0;
        std::queue<std::uint32_t> q;
        q.push(root);
        while (!q.empty()) {
            const std::uint32_t x = q.front();
            q.pop();
            for (int i = 1; i <= m.k; ++i)
                for (std::uint32_t s = 0; s < 4; ++s) {
                    const std::uint32_t y = (x & ~(3u << (2 * (i - 1)))) | (s << (2 * (i - 1)));
                    if (y == x || !m.member[y]) continue;
                    if (depth[y] < 0) {
                        depth[y] = depth[x] + 1;
                        parent[y] = x;
                        q.push(y);
                    } else if (depth[y] == depth[x]) {
                        std::vector<std::uint32_t> left{x}, right{y};
                        while (left.back() != right.back()) {
                            left.push_back(parent[left.back()]);
                            right.push_back(parent[right.back()]);
                        }
                        right.pop_back();
                        std::reverse(left.begin(), left.end());
                        left.insert(left.end(), right.begin(), right.end());
                        std::rotate(left.begin(), left.begin() + 1, left.end());
                        return left;
                    }
                }
        }
    }
    throw VerificationFailure("pair graph is bipartite; no odd cycle");
}

void for_each_phelps_word(int m, const std::function<void(Word)>& visit) {
    if (m < 4) throw InvalidArgument("phelps construction needs m >= 4");
    const int n = (1 << m) - 1;
    if (n > kMaxDim) throw ResourceGate("length 2^m - 1 exceeds 31 coordinates");
    const int k = 1 << (m - 2);
    const MdsCode mk = build_mk(k);
    const VertexSet p = hamming_code(m - 2);
    const auto p_words = p.members();
    std::array<std::array<Word, 2>, 4> z{};
    for (int i = 0; i < 4; ++i)
        for (int b = 0; b < 2; ++b) z[i][b] = parse_word(kZ[i][b]);
    // y[i][c][b] = z[i][b] | (b xor c)
    std::array<std::array<std::array<Word, 2>, 2>, 4> y{};
    for (int i = 0; i < 4; ++i)
        for (int c = 0; c < 2; ++c)
            for (int b = 0; b < 2; ++b) y[i][c][b] = z[i][b] | (Word((b ^ c) & 1) << 3);
    const Word b_count = Word{1} << k;
    for (auto a : mk.words)
        for (Word c : p_words)
            for (Word bits = 0; bits < b_count; ++bits) {
                Word w = 0;
                for (int j = 0; j < k - 1; ++j)
                    w |= y[quaternary_symbol(a, j + 1)][(c >> j) & 1][(bits >> j) & 1] << (4 * j);
                w |= z[quaternary_symbol(a, k)][(bits >> (k - 1)) & 1] << (4 * (k - 1));
                visit(w);
            }
}

VertexSet phelps_code(int m) {
    if (m < 4) throw InvalidArgument("phelps construction needs m >= 4");
    const int n = (1 << m) - 1;
    if (n > kMaxDenseDim) throw ResourceGate("C_" + std::to_string(n) + " needs a dense table beyond 2^25; stream it instead");
    VertexSet out(n);
    for_each_phelps_word(m, [&](Word w) { out.insert(w); });
    if (!out.is_simple()) throw VerificationFailure("phelps construction produced a repeated word");
    const QuotientMatrix expect{{1, n - 1}, {2, n - 2}};
    if (two_cell_matrix(out) != expect) throw VerificationFailure("phelps code is not a 2-fold perfect code");
    for (Word w : out.members())
        if (!out.contains(w ^ unit(n))) throw VerificationFailure("phelps code is not closed under flipping the last coordinate");
    return out;
}

VertexSet shorten_phelps(int m) {
    const VertexSet full = phelps_code(m);
    const int n = full.dim() - 1;
    VertexSet out = shorten(full, full.dim(), 0);
    const QuotientMatrix expect{{0, n}, {2, n - 2}};
    if (two_cell_matrix(out) != expect) throw VerificationFailure("shortened phelps code has the wrong quotient matrix");
    const int t = (1 << (m - 1)) - 1;
    if (oa_strength(out) < t) throw VerificationFailure("shortened phelps code has too small a strength");
    return out;
}

}  // namespace oaforge
