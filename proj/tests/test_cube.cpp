#include <doctest.h>

#include <random>

#include "oaforge/cube.hpp"
#include "oaforge/errors.hpp"
#include "oracles.hpp"

using namespace oaforge;

TEST_CASE("words print coordinate 1 first") {
    CHECK(format_word(0b0011, 4) == "1100");
    CHECK(parse_word("1100") == 0b0011u);
    CHECK(unit(3) == 0b100u);
    CHECK(has_coord(0b100, 3));
    CHECK(weight(0b1011) == 3);
    CHECK(distance(0b1011, 0b0001) == 2);
    CHECK_THROWS_AS(parse_word("10a"), InvalidArgument);
}

TEST_CASE("neighbors flip one coordinate each") {
    const auto nb = neighbors(0b101, 3);
    REQUIRE(nb.size() == 3);
    for (Word w : nb) CHECK(distance(w, 0b101) == 1);
}

TEST_CASE("coordinate permutations compose and invert") {
    const CoordPerm p = CoordPerm::from_cycles(5, {{1, 2, 3}});
    CHECK(p.apply(unit(1)) == unit(2));
    CHECK(p.apply(unit(3)) == unit(1));
    CHECK((p * p.inverse()).is_identity());
    CHECK((p * p * p).is_identity());
}

TEST_CASE("vertex sets track multiplicity") {
    VertexSet s(4);
    s.insert(3);
    s.insert(3);
    s.insert(5);
    CHECK(s.size() == 3);
    CHECK_FALSE(s.is_simple());
    CHECK(s.multiplicity(3) == 2);
    CHECK(s.members() == std::vector<Word>{3, 5});
    CHECK(s.words() == std::vector<Word>{3, 3, 5});
    CHECK(s.erase(3));
    CHECK(s.is_simple());
    CHECK_FALSE(s.erase(7));
    CHECK(s.complement().size() == 14);
    CHECK(s.translated(1).members() == std::vector<Word>{2, 4});
    CHECK(s.recount() == s.size());
}

TEST_CASE("dimensions are range checked") {
    CHECK_THROWS_AS(check_dimension(26, kMaxDenseDim), InvalidArgument);
    CHECK_NOTHROW(check_dimension(25, kMaxDenseDim));
}

TEST_CASE("WHT matches the defining sum and is an involution up to scale") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> val(-5, 5);
    for (int n = 0; n <= 6; ++n) {
        std::vector<std::int64_t> f(std::size_t{1} << n);
        for (auto& x : f) x = val(rng);
        const auto fast = walsh_hadamard(f);
        CHECK(fast.coef == oracle::naive_wht(f));
        auto back = walsh_hadamard(fast.coef).coef;
        for (auto& x : back) x >>= n;
        CHECK(back == f);
    }
    std::vector<std::int64_t> bad(3);
    CHECK_THROWS_AS(walsh_hadamard(bad), InvalidArgument);
}

TEST_CASE("subcube counts") {
    VertexSet s = VertexSet::full(4);
    CHECK(subcube_count(s, 0b0011, 0b0001) == 4);
    CHECK(subcube_count(s, 0, 0) == 16);
}
