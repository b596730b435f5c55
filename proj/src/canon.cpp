#include "oaforge/canon.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "oaforge/errors.hpp"

namespace oaforge {

std::string to_string(GroupOrder v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

GroupOrder factorial(int k) {
    GroupOrder r = 1;
    for (int i = 2; i <= k; ++i) r *= static_cast<GroupOrder>(i);
    return r;
}

std::string to_string(GroupKind k) {
    switch (k) {
        case GroupKind::FullAut: return "full";
        case GroupKind::CoordPermFixFirst: return "fixfirst";
        case GroupKind::CoordPerm: return "perm";
    }
    return "?";
}

GroupKind parse_group_kind(const std::string& name) {
    if (name == "full" || name == "FullAut") return GroupKind::FullAut;
    if (name == "fixfirst" || name == "CoordPermFixFirst") return GroupKind::CoordPermFixFirst;
    if (name == "perm" || name == "CoordPerm") return GroupKind::CoordPerm;
    throw InvalidArgument("unknown symmetry group `" + name + "`");
}

GroupOrder SymmetryGroup::order() const {
    switch (kind) {
        case GroupKind::FullAut: return (GroupOrder{1} << n) * factorial(n);
        case GroupKind::CoordPermFixFirst: return factorial(n - 1);
        case GroupKind::CoordPerm: return factorial(n);
    }
    return 0;
}

CanonicalKey CanonicalKey::from_hex(const std::string& hex) {
    if (hex.size() % 2) throw InvalidArgument("odd-length hex key");
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw InvalidArgument("bad hex digit in key");
    };
    std::vector<std::uint8_t> b(hex.size() / 2);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<std::uint8_t>(nib(hex[2 * i]) << 4 | nib(hex[2 * i + 1]));
    return CanonicalKey(std::move(b));
}

std::string CanonicalKey::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes_.size() * 2);
    for (auto b : bytes_) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : k.bytes()) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

namespace {

constexpr std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::array<std::uint64_t, 32> make_color_table() {
    std::array<std::uint64_t, 32> t{};
    for (int i = 0; i < 32; ++i) t[i] = splitmix(0x51ed2701u + static_cast<std::uint64_t>(i) * 0x2545f491u);
    return t;
}

constexpr auto kColorTable = make_color_table();

using Coloring = std::array<std::uint8_t, 32>;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

// Individualization-refinement over coordinate permutations. Words and
// coordinates form an incidence structure; refinement colours each word by
// the multiset of its coordinates' colours and each coordinate by the
// multiset of colours of the words containing it.
class PermCanonizer {
public:
    PermCanonizer(int n, std::span<const Word> words, const std::vector<int>& initial) : n_(n), words_(words) {
        for (int i = 0; i < n; ++i) initial_[i] = static_cast<std::uint8_t>(initial[i]);
        initial_k_ = initial.empty() ? 0 : *std::max_element(initial.begin(), initial.end()) + 1;
        offsets_.reserve(words_.size() + 1);
        offsets_.push_back(0);
        for (Word w : words_) {
            while (w) {
                bits_.push_back(static_cast<std::uint8_t>(std::countr_zero(w)));
                w &= w - 1;
            }
            offsets_.push_back(static_cast<std::uint32_t>(bits_.size()));
        }
        scratch_.resize(words_.size());
    }

    void run() {
        Coloring col = initial_;
        search(col, initial_k_, 0, true);
    }

    const std::vector<Word>& best_image() const { return best_image_; }
    CoordPerm best_labeling() const { return CoordPerm(std::vector<int>(best_lab_.begin(), best_lab_.begin() + n_)); }
    GroupOrder order() const { return order_; }
    const std::vector<CoordPerm>& generators() const { return gens_; }

private:
    void refine(Coloring& col, int& k) {
        std::array<std::uint64_t, 32> sig{};
        std::array<int, 32> idx{};
        while (k < n_) {
            sig.fill(0);
            const std::size_t nw = words_.size();
            for (std::size_t j = 0; j < nw; ++j) {
                std::uint64_t s = 0;
                for (auto p = offsets_[j]; p < offsets_[j + 1]; ++p) s += kColorTable[col[bits_[p]]];
                const std::uint64_t h = splitmix(s);
                for (auto p = offsets_[j]; p < offsets_[j + 1]; ++p) sig[bits_[p]] += h;
            }
            std::iota(idx.begin(), idx.begin() + n_, 0);
            std::sort(idx.begin(), idx.begin() + n_, [&](int a, int b) {
                if (col[a] != col[b]) return col[a] < col[b];
                return sig[a] < sig[b];
            });
            Coloring next{};
            int c = 0;
            for (int p = 0; p < n_; ++p) {
                if (p > 0) {
                    const int a = idx[p - 1], b = idx[p];
                    if (col[a] != col[b] || sig[a] != sig[b]) ++c;
                }
                next[idx[p]] = static_cast<std::uint8_t>(c);
            }
            const int newk = c + 1;
            col = next;
            if (newk == k) break;
            k = newk;
        }
    }

    // Orbit representative of each coordinate under the generators fixing `prefix_`.
    std::array<int, 32> orbits() {
        UnionFind uf(n_);
        for (const auto& g : gens_) {
            bool fixes = true;
            for (int v : prefix_)
                if (g[v] != v) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int i = 0; i < n_; ++i) uf.unite(i, g[i]);
        }
        std::array<int, 32> rep{};
        for (int i = 0; i < n_; ++i) rep[i] = uf.find(i);
        return rep;
    }

    int common_prefix(const std::vector<int>& other) const {
        std::size_t i = 0;
        while (i < prefix_.size() && i < other.size() && prefix_[i] == other[i]) ++i;
        return static_cast<int>(i);
    }

    void add_generator(const Coloring& from_lab, const Coloring& to_lab) {
        // gamma = from^{-1} o to
        std::array<int, 32> inv{};
        for (int i = 0; i < n_; ++i) inv[from_lab[i]] = i;
        std::vector<int> img(n_);
        bool identity = true;
        for (int i = 0; i < n_; ++i) {
            img[i] = inv[to_lab[i]];
            if (img[i] != i) identity = false;
        }
        if (!identity) gens_.emplace_back(std::move(img));
    }

    // Returns the depth to abort to, or -1.
    int leaf(const Coloring& lab) {
        for (std::size_t j = 0; j < words_.size(); ++j) {
            Word out = 0;
            for (auto p = offsets_[j]; p < offsets_[j + 1]; ++p) out |= Word{1} << lab[bits_[p]];
            scratch_[j] = out;
        }
        std::sort(scratch_.begin(), scratch_.end());
        if (!have_first_) {
            have_first_ = true;
            first_image_ = scratch_;
            first_lab_ = lab;
            first_prefix_ = prefix_;
            best_image_ = scratch_;
            best_lab_ = lab;
            best_prefix_ = prefix_;
            return -1;
        }
        if (scratch_ == first_image_) {
            add_generator(first_lab_, lab);
            return common_prefix(first_prefix_);
        }
        const auto cmp = scratch_ <=> best_image_;
        if (cmp == 0) {
            add_generator(best_lab_, lab);
            return common_prefix(best_prefix_);
        }
        if (cmp < 0) {
            best_image_ = scratch_;
            best_lab_ = lab;
            best_prefix_ = prefix_;
        }
        return -1;
    }

    int search(Coloring col, int k, int depth, bool first_path) {
        refine(col, k);
        if (k == n_) return leaf(col);
        std::array<int, 32> size{};
        for (int i = 0; i < n_; ++i) ++size[col[i]];
        int target = -1;
        for (int c = 0; c < k; ++c)
            if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
        std::array<int, 32> members{};
        int m = 0;
        for (int i = 0; i < n_; ++i)
            if (col[i] == target) members[m++] = i;

        std::vector<int> explored_roots;
        for (int idx = 0; idx < m; ++idx) {
            const int v = members[idx];
            if (idx > 0 && !gens_.empty()) {
                const auto rep = orbits();
                if (std::find(explored_roots.begin(), explored_roots.end(), rep[v]) != explored_roots.end()) continue;
            }
            Coloring child = col;
            for (int i = 0; i < n_; ++i) {
                if (col[i] > target || (col[i] == target && i != v)) child[i] = static_cast<std::uint8_t>(col[i] + 1);
            }
            prefix_.push_back(v);
            const int r = search(child, k + 1, depth + 1, first_path && idx == 0);
            prefix_.pop_back();
            explored_roots.push_back(v);
            if (!gens_.empty()) {
                const auto rep = orbits();
                for (auto& e : explored_roots) e = rep[e];
            }
            if (r >= 0 && r < depth) return r;
        }
        if (first_path) {
            const auto rep = orbits();
            GroupOrder orbit = 0;
            for (int idx = 0; idx < m; ++idx)
                if (rep[members[idx]] == rep[members[0]]) ++orbit;
            order_ *= orbit;
        }
        return -1;
    }

    int n_;
    std::span<const Word> words_;
    Coloring initial_{};
    int initial_k_ = 0;
    std::vector<std::uint8_t> bits_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Word> scratch_;
    std::vector<int> prefix_;

    bool have_first_ = false;
    std::vector<Word> first_image_;
    Coloring first_lab_{};
    std::vector<int> first_prefix_;
    std::vector<Word> best_image_;
    Coloring best_lab_{};
    std::vector<int> best_prefix_;

    std::vector<CoordPerm> gens_;
    GroupOrder order_ = 1;
};

CanonicalKey encode_key(int n, GroupKind kind, const std::vector<Word>& image) {
    const int bytes_per_word = (n + 7) / 8;
    std::vector<std::uint8_t> b;
    b.reserve(8 + image.size() * bytes_per_word);
    b.push_back(CanonicalKey::kEncodingVersion);
    b.push_back(static_cast<std::uint8_t>(n));
    b.push_back(static_cast<std::uint8_t>(kind));
    const auto count = static_cast<std::uint32_t>(image.size());
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(count >> (8 * i)));
    for (Word w : image)
        for (int i = bytes_per_word - 1; i >= 0; --i) b.push_back(static_cast<std::uint8_t>(w >> (8 * i)));
    return CanonicalKey(std::move(b));
}

std::vector<AffineMap> symmetric_group_generators(int n, int first, bool translations) {
    std::vector<AffineMap> gens;
    // transposition (first, first+1) and the cycle first -> first+1 -> ... -> n-1 -> first
    if (n - first >= 2) {
        std::vector<int> swap(n), cyc(n);
        std::iota(swap.begin(), swap.end(), 0);
        std::iota(cyc.begin(), cyc.end(), 0);
        std::swap(swap[first], swap[first + 1]);
        for (int i = first; i < n; ++i) cyc[i] = i + 1 < n ? i + 1 : first;
        gens.push_back({CoordPerm(std::move(swap)), 0});
        if (n - first >= 3) gens.push_back({CoordPerm(std::move(cyc)), 0});
    }
    if (translations) gens.push_back({CoordPerm(n), Word{1}});
    return gens;
}

CanonResult canonize_perm(int n, std::span<const Word> words, GroupKind kind) {
    std::vector<int> initial(n, 0);
    if (kind == GroupKind::CoordPermFixFirst)
        for (int i = 1; i < n; ++i) initial[i] = 1;
    PermCanonizer pc(n, words, initial);
    pc.run();
    CanonResult out;
    out.image = pc.best_image();
    out.key = encode_key(n, kind, out.image);
    out.labeling = {pc.best_labeling(), 0};
    out.aut_order = pc.order();
    for (const auto& g : pc.generators()) out.generators.push_back({g, 0});
    return out;
}

CanonResult canonize_full(int n, std::span<const Word> words) {
    check_dimension(n, kMaxDenseDim);
    const std::size_t cube = cube_size(n);
    std::vector<char> member(cube, 0);
    for (Word w : words) {
        if (w >= cube) throw InvalidArgument("word outside Q_" + std::to_string(n));
        member[w] = 1;
    }
    std::vector<Word> distinct, others;
    for (Word w = 0; w < cube; ++w) (member[w] ? distinct : others).push_back(w);

    CanonResult out;
    if (distinct.empty() || others.empty()) {
        // Every hypercube automorphism fixes the set.
        out.image.assign(words.begin(), words.end());
        std::sort(out.image.begin(), out.image.end());
        out.key = encode_key(n, GroupKind::FullAut, out.image);
        out.labeling = AffineMap::identity(n);
        out.aut_order = SymmetryGroup{GroupKind::FullAut, n}.order();
        out.generators = symmetric_group_generators(n, 0, true);
        return out;
    }

    // Candidate translations: an Aut-invariant set, the smaller of S and its complement.
    const std::vector<Word>& cands = distinct.size() <= others.size() ? distinct : others;
    std::vector<int> index_of(cube, -1);
    for (std::size_t i = 0; i < cands.size(); ++i) index_of[cands[i]] = static_cast<int>(i);
    UnionFind uf(cands.size());
    std::vector<char> root_done(cands.size(), 0);

    struct ClassRep {
        Word x;
        std::vector<Word> image;
        CoordPerm labeling;
        GroupOrder stab_order;
    };
    std::vector<ClassRep> reps;
    std::map<std::vector<Word>, std::size_t> by_image;
    std::vector<AffineMap> gens;

    auto absorb = [&](const AffineMap& g) {
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const int j = index_of[g.apply(cands[i])];
            if (j < 0) throw VerificationFailure("automorphism does not preserve the candidate set");
            const int ri = uf.find(static_cast<int>(i)), rj = uf.find(j);
            if (ri != rj) {
                const bool done = root_done[ri] || root_done[rj];
                uf.unite(ri, rj);
                root_done[uf.find(ri)] = done;
            }
        }
        gens.push_back(g);
    };

    std::vector<Word> shifted(words.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (root_done[uf.find(static_cast<int>(i))]) continue;
        const Word x = cands[i];
        for (std::size_t j = 0; j < words.size(); ++j) shifted[j] = words[j] ^ x;
        CanonResult pr = canonize_perm(n, shifted, GroupKind::CoordPerm);
        root_done[uf.find(static_cast<int>(i))] = 1;
        // Stabilizer generators of x, in the original frame: w -> tau(w + x) + x.
        for (const auto& g : pr.generators) absorb({g.perm, g.perm.apply(x) ^ x});
        auto it = by_image.find(pr.image);
        if (it != by_image.end()) {
            const ClassRep& r = reps[it->second];
            // tau = lab_x^{-1} lab_r maps S+r onto S+x.
            CoordPerm tau = pr.labeling.perm.inverse() * r.labeling;
            absorb({tau, tau.apply(r.x) ^ x});
        } else {
            by_image.emplace(pr.image, reps.size());
            reps.push_back({x, std::move(pr.image), pr.labeling.perm, pr.aut_order});
        }
    }

    const auto best = by_image.begin();
    const ClassRep& r = reps[best->second];
    GroupOrder orbit = 0;
    const int root = uf.find(index_of[r.x]);
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (uf.find(static_cast<int>(i)) == root) ++orbit;
    out.image = r.image;
    out.key = encode_key(n, GroupKind::FullAut, out.image);
    out.labeling = {r.labeling, r.labeling.apply(r.x)};
    out.aut_order = orbit * r.stab_order;
    out.generators = std::move(gens);
    return out;
}

}  // namespace

CanonResult canonize(int n, std::span<const Word> words, GroupKind kind) {
    check_dimension(n);
    if (kind == GroupKind::FullAut) return canonize_full(n, words);
    return canonize_perm(n, words, kind);
}

CanonicalKey canonical_form(const VertexSet& s, const SymmetryGroup& g) {
    if (s.dim() != g.n) throw InvalidArgument("dimension mismatch between set and group");
    const auto words = s.words();
    return canonize(s.dim(), words, g.kind).key;
}

bool are_equivalent(const VertexSet& a, const VertexSet& b, const SymmetryGroup& g) {
    if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
    if (a.size() != b.size()) return false;
    return canonical_form(a, g) == canonical_form(b, g);
}

std::vector<std::vector<Word>> vertex_orbits(int n, const std::vector<AffineMap>& gens) {
    const std::size_t cube = cube_size(n);
    UnionFind uf(cube);
    for (const auto& g : gens)
        for (Word w = 0; w < cube; ++w) uf.unite(static_cast<int>(w), static_cast<int>(g.apply(w)));
    std::vector<int> slot(cube, -1);
    std::vector<std::vector<Word>> orbits;
    for (Word w = 0; w < cube; ++w) {
        const int r = uf.find(static_cast<int>(w));
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(orbits.size());
            orbits.emplace_back();
        }
        orbits[slot[r]].push_back(w);
    }
    return orbits;
}

AutGroupReport automorphism_group(const VertexSet& s, const SymmetryGroup& g) {
    if (s.dim() != g.n) throw InvalidArgument("dimension mismatch between set and group");
    if (!s.is_simple()) throw InvalidArgument("automorphism group needs a simple set");
    const int n = s.dim();
    const auto words = s.members();
    CanonResult cr = canonize(n, words, g.kind);
    AutGroupReport rep;
    rep.order = cr.aut_order;
    rep.generators = std::move(cr.generators);
    for (const auto& gen : rep.generators)
        for (Word w : words)
            if (!s.contains(gen.apply(w))) throw VerificationFailure("reported generator does not stabilize the set");
    if (g.order() % rep.order != 0) throw VerificationFailure("stabilizer order does not divide the group order");
    rep.orbits = vertex_orbits(n, rep.generators);
    for (const auto& o : rep.orbits) (s.contains(o.front()) ? rep.set_orbit_sizes : rep.complement_orbit_sizes).push_back(o.size());
    std::sort(rep.set_orbit_sizes.rbegin(), rep.set_orbit_sizes.rend());
    std::sort(rep.complement_orbit_sizes.rbegin(), rep.complement_orbit_sizes.rend());
    return rep;
}

}  // namespace oaforge
