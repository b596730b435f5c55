#include <doctest.h>

#include "oaforge/algebra.hpp"
#include "oaforge/canon.hpp"
#include "oaforge/constructions.hpp"
#include "oaforge/errors.hpp"

using namespace oaforge;

TEST_CASE("length-6 cell") {
    const LabeledCode c6 = fdf_c6();
    CHECK(c6.words.size() == 24);
    CHECK(oa_strength(c6.words) == 3);
    CHECK(verify_equitable({c6.words, c6.words.complement()}) == QuotientMatrix{{1, 5}, {3, 3}});
    const auto edges = c6.edges();
    REQUIRE(edges.size() == 12);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [a, b] = edges[e];
        CHECK(distance(a, b) == 1);
        CHECK(c6.words.contains(a));
        CHECK(c6.words.contains(b));
        CHECK(c6.direction(a) == static_cast<int>(e / 2) + 1);
        CHECK((a ^ b) == unit(c6.direction(a)));
    }
}

TEST_CASE("length-13 array") {
    const VertexSet c13 = fdf_c13();
    CHECK(c13.size() == 1536);
    CHECK(c13.is_simple());
    CHECK(oa_strength(c13) == 7);
}

TEST_CASE("switching rejects bad edges") {
    CHECK_THROWS_AS(switching(fdf_c13(), {12}), InvalidArgument);
    CHECK_THROWS_AS(switching(hamming_code(3), {0}), InvalidArgument);
}

TEST_CASE("switching keeps the quotient matrix") {
    const VertexSet s = switching(fdf_c13(), {0, 5, 11});
    CHECK(s.size() == 1536);
    CHECK(s != fdf_c13());
    CHECK(verify_equitable({s, s.complement()}) == QuotientMatrix{{0, 13}, {3, 10}});
}

TEST_CASE("Hamming codes") {
    for (int r = 2; r <= 4; ++r) {
        const VertexSet h = hamming_code(r);
        const int n = (1 << r) - 1;
        CHECK(h.dim() == n);
        CHECK(h.size() == (std::uint64_t{1} << n) / static_cast<std::uint64_t>(n + 1));
        CHECK(verify_equitable({h, h.complement()}) == QuotientMatrix{{0, n}, {1, n - 1}});
    }
}

TEST_CASE("quaternary words") {
    const std::uint32_t w = parse_quaternary("0123");
    CHECK(quaternary_symbol(w, 1) == 0);
    CHECK(quaternary_symbol(w, 4) == 3);
    CHECK(format_quaternary(w, 4) == "0123");
}

TEST_CASE("MDS codes used by the doubling construction") {
    for (int k = 2; k <= 4; ++k) {
        const MdsCode m = build_mk(k);
        CHECK(m.size() == 2 * (std::size_t{1} << (2 * (k - 1))));
        CHECK(mds_property_lines(m));
        CHECK(mds_property_pairing(m) == (k == 4));
    }
    CHECK_THROWS_AS(build_mk(1), InvalidArgument);
    const auto cycle = odd_cycle_witness(build_mk(4));
    CHECK(cycle.size() % 2 == 1);
}

TEST_CASE("odd cycles are closed walks in the adjacency graph") {
    const MdsCode m = build_mk(4);
    const auto cycle = odd_cycle_witness(m);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const auto a = cycle[i], b = cycle[(i + 1) % cycle.size()];
        CHECK(m.contains(a));
        int diff = 0;
        for (int p = 1; p <= m.k; ++p) diff += quaternary_symbol(a, p) != quaternary_symbol(b, p);
        CHECK(diff == 1);
    }
}

TEST_CASE("Phelps-style codes") {
    const VertexSet p4 = phelps_code(4);
    CHECK(p4.dim() == 15);
    CHECK(p4.size() == 4096);
    std::uint64_t streamed = 0;
    bool all_inside = true;
    for_each_phelps_word(4, [&](Word w) {
        all_inside = all_inside && p4.contains(w);
        ++streamed;
    });
    CHECK(all_inside);
    CHECK(streamed == p4.size());
    CHECK_THROWS_AS(phelps_code(3), InvalidArgument);
    CHECK_THROWS_AS(phelps_code(5), ResourceGate);
}
