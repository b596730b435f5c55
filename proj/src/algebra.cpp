#include "oaforge/algebra.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

#include "oaforge/errors.hpp"

namespace oaforge {

namespace {

using boost::multiprecision::cpp_int;

cpp_int ipow(int base, int exp) {
    cpp_int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

BoundStatus compare(const cpp_int& lhs, const cpp_int& rhs) {
    if (lhs == rhs) return BoundStatus::Tight;
    return lhs > rhs ? BoundStatus::StrictSlack : BoundStatus::Violated;
}

// Packs the bits of w selected by mask into the low bits.
inline Word extract_bits(Word w, Word mask) {
    Word out = 0;
    int k = 0;
    while (mask) {
        int i = std::countr_zero(mask);
        mask &= mask - 1;
        out |= ((w >> i) & 1u) << k++;
    }
    return out;
}

std::vector<int> cell_index(const std::vector<VertexSet>& cells, int n) {
    std::vector<int> idx(cube_size(n), -1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].dim() != n) throw InvalidArgument("cells have different dimensions");
        if (!cells[c].is_simple()) throw InvalidArgument("cell " + std::to_string(c) + " is not a simple set");
        const auto& t = cells[c].table();
        for (Word w = 0; w < t.size(); ++w) {
            if (!t[w]) continue;
            if (idx[w] != -1) throw InvalidArgument("cells overlap at " + format_word(w, n));
            idx[w] = static_cast<int>(c);
        }
    }
    for (Word w = 0; w < idx.size(); ++w)
        if (idx[w] == -1) throw InvalidArgument("cells do not cover " + format_word(w, n));
    return idx;
}

void expect_matrix(const QuotientMatrix& got, const QuotientMatrix& want, const char* what) {
    if (got != want)
        throw VerificationFailure(std::string(what) + ": expected " + want.to_string() + ", got " + got.to_string());
}

}  // namespace

void OAParams::validate() const {
    if (q < 2) throw InvalidArgument("alphabet size must be at least 2");
    if (t < 0 || t > n) throw InvalidArgument("strength must lie in 0..n");
    cpp_int qt = ipow(q, t);
    if (cpp_int(N) % qt != 0) throw InvalidArgument("q^t does not divide N");
}

std::uint64_t OAParams::lambda() const {
    validate();
    return static_cast<std::uint64_t>(cpp_int(N) / ipow(q, t));
}

QuotientMatrix::QuotientMatrix(std::initializer_list<std::initializer_list<int>> rows) {
    for (const auto& r : rows) s.emplace_back(r);
}

int QuotientMatrix::row_sum() const {
    if (s.empty()) throw InvalidArgument("empty quotient matrix");
    int sum = -1;
    for (const auto& row : s) {
        if (row.size() != s.size()) throw InvalidArgument("quotient matrix is not square");
        int r = 0;
        for (int v : row) {
            if (v < 0) throw InvalidArgument("negative quotient matrix entry");
            r += v;
        }
        if (sum >= 0 && r != sum) throw InvalidArgument("quotient matrix rows have different sums");
        sum = r;
    }
    return sum;
}

std::string QuotientMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < s[i].size(); ++j) os << (j ? "," : "") << s[i][j];
        os << ']';
    }
    os << ']';
    return os.str();
}

int oa_strength(const VertexSet& s) {
    if (s.empty()) throw InvalidArgument("strength of the empty set is undefined");
    const int n = s.dim();
    auto sp = spectrum(s);
    int min_weight = n + 1;
    for (Word y = 1; y < sp.coef.size(); ++y)
        if (sp.coef[y] != 0) min_weight = std::min(min_weight, weight(y));
    return min_weight > n ? n : min_weight - 1;
}

bool strength_oracle(const VertexSet& s, int t) {
    const int n = s.dim();
    if (t < 0 || t > n) return false;
    const std::uint64_t size = s.size();
    if (size % (std::uint64_t{1} << t) != 0) return false;
    const std::uint64_t target = size >> t;
    const auto members = s.members();
    std::vector<std::uint64_t> counts(std::size_t{1} << t);
    // Gosper's hack over all t-subsets of coordinates.
    Word mask = t == 0 ? 0 : all_ones(t);
    const Word limit = all_ones(n);
    while (true) {
        std::fill(counts.begin(), counts.end(), 0);
        for (Word w : members) counts[extract_bits(w, mask)] += s.multiplicity(w);
        for (auto c : counts)
            if (c != target) return false;
        if (mask == 0) break;
        Word lo = mask & (~mask + 1);
        Word ripple = mask + lo;
        if (ripple == 0 || ripple > limit) break;
        mask = ripple | (((mask ^ ripple) >> 2) / lo);
        if (mask > limit) break;
    }
    return true;
}

QuotientMatrix verify_equitable(const std::vector<VertexSet>& cells) {
    if (cells.empty()) throw InvalidArgument("partition has no cells");
    const int n = cells.front().dim();
    const int k = static_cast<int>(cells.size());
    const auto idx = cell_index(cells, n);
    std::vector<std::vector<int>> rows(k);
    std::vector<char> seen(k, 0);
    std::vector<int> row(k);
    for (Word v = 0; v < idx.size(); ++v) {
        std::fill(row.begin(), row.end(), 0);
        for (int i = 0; i < n; ++i) ++row[idx[v ^ (Word{1} << i)]];
        const int c = idx[v];
        if (!seen[c]) {
            rows[c] = row;
            seen[c] = 1;
        } else if (rows[c] != row) {
            std::ostringstream os;
            os << "vertex " << format_word(v, n) << " in cell " << c << " has neighbour row [";
            for (int j = 0; j < k; ++j) os << (j ? "," : "") << row[j];
            os << "], cell row is [";
            for (int j = 0; j < k; ++j) os << (j ? "," : "") << rows[c][j];
            os << ']';
            throw NotEquitable(v, c, row, rows[c], os.str());
        }
    }
    for (int c = 0; c < k; ++c)
        if (!seen[c]) throw InvalidArgument("cell " + std::to_string(c) + " is empty");
    return QuotientMatrix(std::move(rows));
}

QuotientMatrix verify_equitable(EquitablePartition& p) {
    p.matrix = verify_equitable(p.cells);
    return p.matrix;
}

std::vector<std::int64_t> characteristic_polynomial(const QuotientMatrix& m) {
    const int k = m.k();
    // Faddeev-LeVerrier; every division below is exact.
    std::vector<std::int64_t> c(k + 1, 0);
    c[k] = 1;
    std::vector<std::vector<std::int64_t>> M(k, std::vector<std::int64_t>(k, 0)), AM(k, std::vector<std::int64_t>(k));
    for (int i = 1; i <= k; ++i) {
        // M_i = A M_{i-1} + c_{k-i+1} I
        for (int r = 0; r < k; ++r)
            for (int col = 0; col < k; ++col) {
                std::int64_t v = 0;
                for (int j = 0; j < k; ++j) v += m.s[r][j] * M[j][col];
                AM[r][col] = v;
            }
        for (int r = 0; r < k; ++r) AM[r][r] += c[k - i + 1];
        M = AM;
        std::int64_t tr = 0;
        for (int r = 0; r < k; ++r)
            for (int j = 0; j < k; ++j) tr += m.s[r][j] * M[j][r];
        c[k - i] = -tr / i;
    }
    return {c.rbegin(), c.rend()};
}

std::optional<std::vector<int>> integer_spectrum(const QuotientMatrix& m) {
    auto poly = characteristic_polynomial(m);  // leading coefficient first
    int bound = 0;
    for (const auto& row : m.s) {
        int r = 0;
        for (int v : row) r += std::abs(v);
        bound = std::max(bound, r);
    }
    std::vector<int> roots;
    for (int x = bound; x >= -bound; --x) {
        while (poly.size() > 1) {
            // Synthetic division by (X - x).
            std::vector<std::int64_t> q(poly.size() - 1);
            __int128 acc = 0;
            for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
                acc = acc * x + poly[i];
                q[i] = static_cast<std::int64_t>(acc);
            }
            acc = acc * x + poly.back();
            if (acc != 0) break;
            roots.push_back(x);
            poly = std::move(q);
        }
    }
    if (static_cast<int>(roots.size()) != m.k()) return std::nullopt;
    return roots;
}

StrengthFromMatrix quotient_to_strength(const QuotientMatrix& m, int q) {
    const int n = m.row_sum();
    StrengthFromMatrix out;
    if (m.k() == 2) {
        const int b = m.s[0][1], c = m.s[1][0];
        out.theta = m.s[0][0] - c;
        out.integral = (b + c) % q == 0;
        out.t = (b + c) / q - 1;
        return out;
    }
    auto spec = integer_spectrum(m);
    if (!spec || spec->size() < 2) {
        out.integral = false;
        out.t = -1;
        return out;
    }
    // spec is descending and spec[0] is the row sum.
    out.theta = (*spec)[1];
    const int num = n * (q - 1) - out.theta;
    out.integral = num % q == 0;
    out.t = num / q - 1;
    return out;
}

std::string to_string(BoundStatus s) {
    switch (s) {
        case BoundStatus::Tight: return "tight";
        case BoundStatus::StrictSlack: return "strict-slack";
        case BoundStatus::Violated: return "violated";
        case BoundStatus::NotApplicable: return "not-applicable";
    }
    return "?";
}

BoundsReport check_bounds(const OAParams& p) {
    p.validate();
    BoundsReport r;
    const cpp_int N = p.N;
    const cpp_int qn = ipow(p.q, p.n);
    // N >= q^n (1 - (q-1)n / (q(t+1)))
    {
        const cpp_int den = cpp_int(p.q) * (p.t + 1);
        r.bierbrauer_friedman = compare(N * den, qn * (den - cpp_int(p.q - 1) * p.n));
    }
    if (p.q == 2 && p.t % 2 == 0) {
        // N >= 2^n (1 - (n+1) / (2(t+2)))
        const cpp_int den = cpp_int(2) * (p.t + 2);
        r.levenshtein = compare(N * den, qn * (den - (p.n + 1)));
    }
    if (p.q == 2) {
        const cpp_int half = qn / 2;
        if (N != 0 && N != half && N < qn) {
            // t <= 2n/3 - 1  <=>  3(t+1) <= 2n
            const int lhs = 3 * (p.t + 1), rhs = 2 * p.n;
            r.fdf_khalyavin = lhs <= rhs ? BoundStatus::StrictSlack : BoundStatus::Violated;
            if (lhs == rhs) {
                r.fdf_khalyavin = BoundStatus::Tight;
                r.fdf_equality = true;
            }
            r.fdf_requires_simple = N > half;
        }
    }
    return r;
}

EquitablePartition oa_to_equitable(const VertexSet& c) {
    if (!c.is_simple()) throw InvalidArgument("array must be simple");
    const int n = c.dim();
    const int t = oa_strength(c);
    OAParams p{c.size(), n, 2, t};
    if (check_bounds(p).bierbrauer_friedman != BoundStatus::Tight)
        throw InvalidArgument("array does not meet the Bierbrauer-Friedman bound with equality");
    EquitablePartition out;
    out.n = n;
    out.cells = {c, c.complement()};
    verify_equitable(out);
    const int cc = 2 * (t + 1) - n;
    expect_matrix(out.matrix, QuotientMatrix{{0, n}, {cc, n - cc}}, "oa_to_equitable");
    return out;
}

VertexSet lengthen(const VertexSet& c) {
    const int n = c.dim();
    const int t = oa_strength(c);
    if (t % 2 != 0) throw InvalidArgument("lengthening needs even strength, got " + std::to_string(t));
    check_dimension(n + 1, kMaxDenseDim);
    VertexSet out(n + 1);
    const Word ones = all_ones(n);
    const Word top = Word{1} << n;
    for (Word w : c.members()) {
        out.insert(w, c.multiplicity(w));
        out.insert((w ^ ones) | top, c.multiplicity(w));
    }
    if (oa_strength(out) < t + 1) throw VerificationFailure("lengthened array lost strength");
    return out;
}

VertexSet shorten(const VertexSet& c, int coord, int symbol) {
    const int n = c.dim();
    if (coord < 1 || coord > n) throw InvalidArgument("coordinate out of range");
    if (symbol != 0 && symbol != 1) throw InvalidArgument("binary symbol expected");
    if (n == 1) throw InvalidArgument("cannot shorten a length-1 array");
    VertexSet out(n - 1);
    const Word low = all_ones(coord - 1);
    for (Word w : c.members()) {
        if (static_cast<int>(has_coord(w, coord)) != symbol) continue;
        Word v = (w & low) | ((w >> coord) << (coord - 1));
        out.insert(v, c.multiplicity(w));
    }
    return out;
}

EquitablePartition three_partition(const VertexSet& c) {
    if (!c.is_simple()) throw InvalidArgument("array must be simple");
    const int n = c.dim();
    const int t = oa_strength(c);
    if (t % 2 != 0) throw InvalidArgument("three_partition needs even strength");
    if (check_bounds({c.size(), n, 2, t}).levenshtein != BoundStatus::Tight)
        throw InvalidArgument("array does not meet the Levenshtein bound with equality");
    VertexSet shifted = c.translated(all_ones(n));
    for (Word w : c.members())
        if (shifted.contains(w)) throw VerificationFailure("C and C+1 overlap at " + format_word(w, n));
    VertexSet rest = VertexSet::full(n);
    for (Word w : c.members()) rest.erase(w);
    for (Word w : shifted.members()) rest.erase(w);
    EquitablePartition out;
    out.n = n;
    out.cells = {c, std::move(shifted), std::move(rest)};
    verify_equitable(out);
    const int a = 2 * t - n + 2;
    expect_matrix(out.matrix, QuotientMatrix{{0, a, n - a}, {a, 0, n - a}, {a + 1, a + 1, n - 2 * a - 2}},
                  "three_partition");
    return out;
}

EquitablePartition completely_regular_split(const EquitablePartition& p) {
    if (p.cells.size() != 3) throw InvalidArgument("three cells expected");
    const int n = p.cells[0].dim();
    const int a = p.matrix.k() == 3 ? p.matrix.s[0][1] : -1;
    if (p.matrix != QuotientMatrix{{0, a, n - a}, {a, 0, n - a}, {a + 1, a + 1, n - 2 * a - 2}})
        throw InvalidArgument("input does not carry the three-cell array matrix");
    VertexSet first(n), last(n);
    for (Word w : p.cells[0].members()) (weight(w) % 2 == 0 ? first : last).insert(w);
    for (Word w : p.cells[1].members()) (weight(w) % 2 == 1 ? first : last).insert(w);
    EquitablePartition out;
    out.n = n;
    out.cells = {std::move(first), p.cells[2], std::move(last)};
    verify_equitable(out);
    expect_matrix(out.matrix, QuotientMatrix{{a, n - a, 0}, {a + 1, n - 2 * a - 2, a + 1}, {0, n - a, a}},
                  "completely_regular_split");
    return out;
}

VertexSet kernel(const VertexSet& c) {
    if (!c.is_simple()) throw InvalidArgument("kernel needs a simple set");
    const int n = c.dim();
    VertexSet out(n);
    const auto members = c.members();
    if (members.empty()) return VertexSet::full(n);
    const Word c0 = members.front();
    for (Word m : members) {
        const Word k = m ^ c0;
        bool period = true;
        for (Word w : members)
            if (!c.contains(w ^ k)) {
                period = false;
                break;
            }
        if (period) out.insert(k);
    }
    return out;
}

}  // namespace oaforge
