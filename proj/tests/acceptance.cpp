#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oaforge/algebra.hpp"
#include "oaforge/canon.hpp"
#include "oaforge/constructions.hpp"
#include "oaforge/errors.hpp"
#include "oaforge/fourier.hpp"
#include "oaforge/pipeline.hpp"
#include "oaforge/xcover.hpp"
#include "oracles.hpp"

using namespace oaforge;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::uint64_t as_u64(GroupOrder g) { return static_cast<std::uint64_t>(g); }

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::vector<std::uint64_t> sorted_desc(std::vector<std::uint64_t> v) {
    std::sort(v.rbegin(), v.rend());
    return v;
}

std::vector<std::uint64_t> expand(std::initializer_list<std::pair<std::uint64_t, int>> groups) {
    std::vector<std::uint64_t> out;
    for (auto [value, times] : groups) out.insert(out.end(), times, value);
    return sorted_desc(out);
}

QuotientMatrix two_cells(const VertexSet& c) { return verify_equitable(std::vector<VertexSet>{c, c.complement()}); }

const VertexSet& c13() {
    static const VertexSet c = fdf_c13();
    return c;
}

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

Outcome construction_fidelity() {
    const VertexSet& c = c13();
    const QuotientMatrix m = two_cells(c);
    const int t = oa_strength(c);
    const bool ok = c.size() == 1536 && m == QuotientMatrix{{0, 13}, {3, 10}} && t == 7;
    return {ok, "size=" + std::to_string(c.size()) + " matrix=" + m.to_string() + " t=" + std::to_string(t)};
}

Outcome group_data() {
    const AutGroupReport r = automorphism_group(c13(), {GroupKind::FullAut, 13});
    const VertexSet k = kernel(c13());
    std::vector<int> weights;
    for (Word w : k.members()) weights.push_back(weight(w));
    std::sort(weights.begin(), weights.end());
    const bool ok = as_u64(r.order) == 480 && r.set_orbit_sizes == expand({{240, 6}, {48, 2}}) &&
                    r.complement_orbit_sizes == expand({{48, 2}, {80, 4}, {240, 18}, {480, 4}}) && k.size() == 4 &&
                    weights == std::vector<int>{0, 6, 7, 13};
    return {ok, "order=" + to_string(r.order) + " set=" + join(r.set_orbit_sizes) + " complement=" +
                    join(r.complement_orbit_sizes) + " kernel_weights=" + join(weights)};
}

struct ShorteningClass {
    VertexSet array;
    std::vector<int> positions;
    AutGroupReport group;
};

std::vector<ShorteningClass> shortening_classes() {
    std::map<CanonicalKey, ShorteningClass> by_key;
    for (int i = 1; i <= 13; ++i) {
        const VertexSet s = shorten(c13(), i, 0);
        const CanonicalKey key = canonical_form(s, {GroupKind::FullAut, 12});
        auto [it, fresh] = by_key.try_emplace(key, ShorteningClass{s, {}, {}});
        it->second.positions.push_back(i);
    }
    std::vector<ShorteningClass> out;
    for (auto& [k, cls] : by_key) {
        cls.group = automorphism_group(cls.array, {GroupKind::FullAut, 12});
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.positions.size() < b.positions.size(); });
    return out;
}

Outcome shortenings() {
    const auto classes = shortening_classes();
    std::vector<std::size_t> sizes;
    std::vector<std::uint64_t> orders;
    std::multiset<std::vector<std::uint64_t>> orbit_sets;
    for (const auto& c : classes) {
        sizes.push_back(c.positions.size());
        orders.push_back(as_u64(c.group.order));
        orbit_sets.insert(c.group.set_orbit_sizes);
    }
    const std::multiset<std::vector<std::uint64_t>> expected{expand({{120, 6}, {24, 2}}),
                                                             expand({{4, 2}, {20, 14}, {40, 12}}),
                                                             expand({{4, 2}, {20, 14}, {40, 12}})};
    std::ostringstream os;
    os << "classes=" << classes.size() << " position_orbits=" << join(sizes) << " orders=" << join(orders);
    for (const auto& c : classes) os << " [" << join(c.group.set_orbit_sizes) << "]";
    const bool ok = classes.size() == 3 && sizes == std::vector<std::size_t>{1, 6, 6} &&
                    orders == std::vector<std::uint64_t>{240, 40, 40} && orbit_sets == expected;
    return {ok, os.str()};
}

Outcome three_cells() {
    const QuotientMatrix want3{{0, 2, 10}, {2, 0, 10}, {3, 3, 6}};
    const QuotientMatrix want_split{{2, 10, 0}, {3, 6, 3}, {0, 10, 2}};
    int good = 0;
    std::string observed;
    for (int i = 1; i <= 13; ++i) {
        EquitablePartition p = three_partition(shorten(c13(), i, 0));
        EquitablePartition q = completely_regular_split(p);
        const QuotientMatrix m3 = verify_equitable(p);
        const QuotientMatrix ms = verify_equitable(q);
        if (m3 == want3 && ms == want_split)
            ++good;
        else
            observed = " position " + std::to_string(i) + ": " + m3.to_string() + " / " + ms.to_string();
    }
    return {good == 13, std::to_string(good) + "/13 shortenings verified" + observed};
}

Outcome fourier() {
    const FourierReport r = fourier_report(c13());
    std::map<std::string, std::uint64_t> hist;
    for (const auto& h : r.histogram) hist[h.value.to_string()] = h.count;
    const std::map<std::string, std::uint64_t> expected{{"3/16", 1}, {"-1/16", 5}, {"1/16", 10}, {"-1/32", 40}, {"1/32", 56}};
    const bool ok = r.nonzero == 112 && r.at_zero.to_string() == "3/16" && hist == expected && r.pi_invariant == true &&
                    r.sixteenths_structure == true && r.thirty_seconds_structure == true && r.table_matches == true;
    std::ostringstream os;
    os << "support=" << r.nonzero << " phi(0)=" << r.at_zero.to_string() << " table=" << (r.table_matches == true)
       << " pi=" << (r.pi_invariant == true) << " 1/16=" << (r.sixteenths_structure == true)
       << " 1/32=" << (r.thirty_seconds_structure == true);
    return {ok, os.str()};
}

Outcome small_table_rows() {
    struct Row {
        OAParams p;
        std::size_t expected;
    };
    const std::vector<Row> rows{{{2, 3, 2, 1}, 1}, {{16, 6, 2, 3}, 1}, {{16, 7, 2, 3}, 1}, {{128, 9, 2, 5}, 2}};
    bool ok = true;
    std::ostringstream os;
    for (const auto& row : rows) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto classes = classify_oa(row.p, threads());
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        os << "OA(" << row.p.N << "," << row.p.n << ",2," << row.p.t << ")=" << classes.size() << " (" << secs << " s) ";
        ok = ok && classes.size() == row.expected;
        if (row.p.n == 7) {
            const bool same = classes.size() == 1 && are_equivalent(classes[0].array, hamming_code(3), {GroupKind::FullAut, 7});
            os << "hamming=" << same << " ";
            ok = ok && same;
        }
    }
    return {ok, os.str()};
}

Outcome seeds() {
    const std::vector<std::string> listed{"4+3+3+3", "3+4+3+3", "7+3+3", "3+7+3", "6+4+3", "4+6+3", "3+6+4",
                                          "5+5+3",   "3+5+5",   "5+4+4", "4+5+4", "10+3",  "3+10",  "9+4",
                                          "4+9",     "8+5",     "5+8",   "7+6",   "6+7",   "13"};
    const auto seeds = seed_local_partitions(13);
    std::set<CanonicalKey> keys;
    for (const auto& s : seeds) {
        verify_local(s);
        keys.insert(local_key(s));
    }
    std::vector<std::string> types;
    for (const auto& spec : seed_specs(13)) types.push_back(spec.type());
    std::multiset<std::string> a(types.begin(), types.end()), b(listed.begin(), listed.end());
    const bool ok = seeds.size() == 20 && keys.size() == 20 && a == b;
    return {ok, std::to_string(seeds.size()) + " classes, " + std::to_string(keys.size()) + " distinct keys, types " + join(types)};
}

Outcome level_two_three() {
    LevelOptions opts;
    opts.threads = threads();
    const LevelResult lr = classify_level(seed_classes(13), 2, 3, opts);
    std::map<std::string, std::uint64_t> per;
    for (const auto& c : lr.classes) ++per[c.type];
    const bool ok = per["4+3+3+3"] == 266 && per["3+4+3+3"] == 475 && per["3+5+5"] == 1156 &&
                    lr.classes.size() == 295240 && lr.validation_failures == 0 && lr.validated == lr.classes.size();
    std::ostringstream os;
    os << "4+3+3+3=" << per["4+3+3+3"] << " 3+4+3+3=" << per["3+4+3+3"] << " 3+5+5=" << per["3+5+5"]
       << " total=" << lr.classes.size() << " raw=" << lr.raw_solutions << " validated=" << lr.validated
       << " failures=" << lr.validation_failures << " threads=" << opts.threads;
    return {ok, os.str()};
}

Outcome completion() {
    const LocalPartition lp = restrict_to_local(c13(), 5, 5, 3);
    bool ok = true;
    std::string detail;
    for (auto rule : {CompletionRule::Low, CompletionRule::High}) {
        const VertexSet first = complete_partition(lp, rule).cells[0];
        const VertexSet second = complete_partition(lp, rule).cells[0];
        const bool same = first == c13() && second == first;
        detail += std::string(rule == CompletionRule::Low ? "low" : "high") + "=" + (same ? "exact " : "differs ");
        ok = ok && same;
    }
    return {ok, detail + "from " + std::to_string(lp.plus.size()) + " words"};
}

Outcome switching_classes() {
    std::mt19937_64 rng(20241015);
    std::uniform_int_distribution<int> mask_d(1, (1 << 12) - 1);
    const CanonicalKey target = canonical_form(c13(), {GroupKind::FullAut, 13});
    int good = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int mask = mask_d(rng);
        std::vector<int> edges;
        for (int e = 0; e < 12; ++e)
            if (mask >> e & 1) edges.push_back(e);
        const VertexSet s = switching(c13(), edges);
        const bool ok = two_cells(s) == QuotientMatrix{{0, 13}, {3, 10}} && canonical_form(s, {GroupKind::FullAut, 13}) == target;
        good += ok;
    }
    return {good == 50, std::to_string(good) + "/50 switchings equitable and equivalent"};
}

Outcome phelps() {
    const MdsCode m4 = build_mk(4);
    const bool props = mds_property_lines(m4) && mds_property_pairing(m4) && m4.size() == 128;
    const auto cycle = odd_cycle_witness(m4);
    const VertexSet p = phelps_code(4);
    const QuotientMatrix pm = two_cells(p);
    bool closed = true;
    for (Word w : p.members()) closed = closed && p.contains(w ^ unit(15));
    const VertexSet s = shorten(p, 15, 0);
    const QuotientMatrix sm = two_cells(s);
    const int t = oa_strength(s);
    const BoundsReport b = check_bounds({s.size(), 14, 2, t});
    const QuotientMatrix stated{{0, 14}, {1, 13}};
    std::ostringstream os;
    os << "M4(I,III)=" << props << " odd_cycle=" << cycle.size() << " C15=" << pm.to_string() << " closed=" << closed
       << " shortened=" << sm.to_string() << " (stated " << stated.to_string() << ") size=" << s.size() << " t=" << t
       << " bf=" << to_string(b.bierbrauer_friedman);
    const bool ok = props && cycle.size() % 2 == 1 && pm == QuotientMatrix{{1, 14}, {2, 13}} && closed && sm == stated &&
                    s.size() == 2048 && t == 7 && b.bierbrauer_friedman == BoundStatus::Tight;
    return {ok, os.str()};
}

Outcome property_suites() {
    std::mt19937_64 rng(12);
    std::uint64_t failures = 0;
    std::ostringstream os;

    // WHT involution, Parseval and linearity.
    std::uniform_int_distribution<int> val(-50, 50);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = trial % 11;
        const std::size_t len = std::size_t{1} << n;
        std::vector<std::int64_t> f(len), g(len), sum(len);
        for (std::size_t i = 0; i < len; ++i) {
            f[i] = val(rng);
            g[i] = val(rng);
            sum[i] = 3 * f[i] - 2 * g[i];
        }
        const auto F = walsh_hadamard(f).coef;
        const auto G = walsh_hadamard(g).coef;
        const auto S = walsh_hadamard(sum).coef;
        auto back = walsh_hadamard(F).coef;
        std::int64_t e1 = 0, e2 = 0;
        bool ok = true;
        for (std::size_t i = 0; i < len; ++i) {
            ok = ok && back[i] == (f[i] << n) && S[i] == 3 * F[i] - 2 * G[i];
            e1 += f[i] * f[i];
            e2 += F[i] * F[i];
        }
        ok = ok && (e1 << n) == e2;
        failures += !ok;
    }
    os << "wht_fail=" << failures;

    // Spectral strength against direct counting, on random sets and random linear codes.
    std::uint64_t strength_fail = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 8;
        VertexSet s(n);
        if (trial % 2) {
            s = oracle::random_set(n, rng, 0.5);
        } else {
            std::vector<Word> gens;
            std::uniform_int_distribution<Word> word_d(0, (Word{1} << n) - 1);
            const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
            for (int i = 0; i < k; ++i) gens.push_back(word_d(rng));
            std::set<Word> span{0};
            for (Word g : gens) {
                std::vector<Word> next(span.begin(), span.end());
                for (Word x : next) span.insert(x ^ g);
            }
            for (Word w : span) s.insert(w);
        }
        if (s.empty()) s.insert(0);
        strength_fail += oa_strength(s) != oracle::brute_strength(s);
    }
    os << " strength_fail=" << strength_fail;
    failures += strength_fail;

    // Exact cover against subset enumeration.
    std::uint64_t cover_fail = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::uniform_int_distribution<int> items_d(1, 7), alpha_d(0, 2);
        std::bernoulli_distribution in_block(0.3);
        CoverInstance inst;
        const int items = items_d(rng);
        for (int i = 0; i < items; ++i) inst.add_item(alpha_d(rng));
        for (int b = 0; b < 14; ++b) {
            std::vector<int> its;
            for (int i = 0; i < items; ++i)
                if (in_block(rng)) its.push_back(i);
            inst.add_block(its);
        }
        std::uint64_t valid = 0;
        const auto n = solve_all(inst, [&](const CoverSolution& s) { valid += is_cover(inst, s); });
        cover_fail += n != oracle::subset_cover_count(inst) || valid != n;
    }
    os << " xcover_fail=" << cover_fail;
    failures += cover_fail;

    // Canonical keys against the least image over the group, with orbit-stabilizer.
    std::uint64_t canon_fail = 0;
    const GroupKind kinds[] = {GroupKind::FullAut, GroupKind::CoordPerm, GroupKind::CoordPermFixFirst};
    std::map<std::pair<int, int>, std::vector<oracle::GroupElement>> groups;
    std::map<std::tuple<int, int, std::vector<Word>>, CanonicalKey> least_to_key;
    std::map<CanonicalKey, std::vector<Word>> key_to_least;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 4;
        const GroupKind kind = kinds[trial % 3];
        auto& group = groups[{n, static_cast<int>(kind)}];
        if (group.empty()) group = oracle::group_elements(n, kind);
        const VertexSet s = oracle::random_set(n, rng, 0.4);
        const auto words = s.words();
        const auto summary = oracle::orbit_summary(words, group);
        const CanonResult cr = canonize(n, words, kind);
        bool ok = as_u64(cr.aut_order) == summary.stabilizer && summary.stabilizer * summary.orbit == group.size();
        auto [it, fresh] = least_to_key.try_emplace({n, static_cast<int>(kind), summary.least_image}, cr.key);
        ok = ok && it->second == cr.key;
        auto [jt, jfresh] = key_to_least.try_emplace(cr.key, summary.least_image);
        ok = ok && jt->second == summary.least_image;
        canon_fail += !ok;
    }
    os << " canon_fail=" << canon_fail;
    failures += canon_fail;

    // Orbit-stabilizer on the reported groups: orbits partition the cube and divide the order.
    std::uint64_t orbit_fail = 0;
    std::vector<std::pair<VertexSet, GroupKind>> reported{{c13(), GroupKind::FullAut},
                                                          {c13(), GroupKind::CoordPerm},
                                                          {hamming_code(3), GroupKind::FullAut},
                                                          {hamming_code(4), GroupKind::CoordPerm},
                                                          {fdf_c6().words, GroupKind::FullAut}};
    for (const auto& c : shortening_classes()) reported.emplace_back(c.array, GroupKind::FullAut);
    for (const auto& [set, kind] : reported) {
        const AutGroupReport r = automorphism_group(set, {kind, set.dim()});
        std::uint64_t covered = 0, on_set = 0;
        for (const auto& orbit : r.orbits) {
            covered += orbit.size();
            if (as_u64(r.order) % orbit.size()) ++orbit_fail;
        }
        for (auto x : r.set_orbit_sizes) on_set += x;
        orbit_fail += covered != cube_size(set.dim()) || on_set != set.size();
    }
    os << " orbit_fail=" << orbit_fail << " (" << reported.size() << " groups)";
    failures += orbit_fail;
    return {failures == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"construction of the length-13 array", construction_fidelity},
        {"automorphism group, orbits and kernel", group_data},
        {"shortenings fall into three classes", shortenings},
        {"three-cell partitions of the shortenings", three_cells},
        {"Fourier spectrum", fourier},
        {"small classifications", small_table_rows},
        {"seed local partitions", seeds},
        {"level (2,3) class counts", level_two_three},
        {"completion oracle", completion},
        {"switching", switching_classes},
        {"doubling construction at m=4", phelps},
        {"property suites", property_suites},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << " | "
                  << o.detail << " [" << secs << " s]" << std::endl;
        failed += !o.pass;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
