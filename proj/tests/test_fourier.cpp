#include <doctest.h>

#include "oaforge/constructions.hpp"
#include "oaforge/fourier.hpp"

using namespace oaforge;

TEST_CASE("dyadic values reduce") {
    CHECK(Dyadic::from_scaled(384, 11).to_string() == "3/16");
    CHECK(Dyadic::from_scaled(-64, 11).to_string() == "-1/32");
    CHECK(Dyadic::from_scaled(8, 3).to_string() == "1");
    CHECK(Dyadic::from_scaled(0, 5).to_string() == "0");
    CHECK(Dyadic::from_scaled(1, 4) < Dyadic::from_scaled(1, 3));
}

TEST_CASE("spectrum of the Hamming code") {
    const FourierReport r = fourier_report(hamming_code(3));
    CHECK(r.nonzero == 8);
    CHECK(r.at_zero.to_string() == "1/8");
    CHECK(r.strength == 3);
    CHECK(r.single_weight);
    CHECK_FALSE(r.pi_invariant.has_value());
}

TEST_CASE("spectrum of the length-13 array") {
    const FourierReport r = fourier_report(fdf_c13());
    CHECK(r.nonzero == 112);
    CHECK(r.at_zero.to_string() == "3/16");
    REQUIRE(r.histogram.size() == 5);
    CHECK(r.histogram[0].value.to_string() == "-1/16");
    CHECK(r.histogram[0].count == 5);
    CHECK(r.histogram[4].value.to_string() == "3/16");
    CHECK(r.pi_invariant == true);
    CHECK(r.sixteenths_structure == true);
    CHECK(r.thirty_seconds_structure == true);
    CHECK(r.table_matches == true);
    CHECK(c13_fourier_table().size() >= 10);
}
