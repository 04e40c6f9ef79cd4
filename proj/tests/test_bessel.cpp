#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wprad/bessel.hpp"

using Catch::Approx;
using namespace wprad;

TEST_CASE("bessel ladder agrees with the standard library") {
    // std::cyl_bessel_j is an independent implementation.
    struct Pin {
        int n;
        double x;
    };
    const Pin pins[] = {{0, 2.5}, {1, 0.5},  {2, 11.4}, {7, 11.4}, {13, 11.4},
                        {25, 11.4}, {5, 0.05}, {40, 30.0}, {60, 40.0}};
    for (auto [n, x] : pins) {
        double ref = std::cyl_bessel_j(double(n), x);
        CAPTURE(n, x);
        REQUIRE(bessel::j(n, x) == Approx(ref).epsilon(1e-9).margin(1e-15));
    }
}

TEST_CASE("bessel fixed values") {
    REQUIRE(bessel::j(0, 1.0) == Approx(0.7651976865579666).margin(1e-14));
    REQUIRE(bessel::j(1, 1.0) == Approx(0.4400505857449335).margin(1e-14));
    REQUIRE(bessel::j(0, 2.5) == Approx(-0.0483837764681979).margin(1e-13));
}

TEST_CASE("bessel deep evanescent orders stay relatively accurate") {
    double ref = std::cyl_bessel_j(50.0, 1.0);  // ~ 1e-80
    REQUIRE(bessel::j(50, 1.0) == Approx(ref).epsilon(1e-9));
}

TEST_CASE("bessel reflection for negative orders") {
    REQUIRE(bessel::j(-3, 2.0) == Approx(-bessel::j(3, 2.0)).margin(1e-16));
    REQUIRE(bessel::j(-4, 2.0) == Approx(bessel::j(4, 2.0)).margin(1e-16));
}

TEST_CASE("bessel at zero argument") {
    auto J = bessel::ladder(0.0, 4);
    REQUIRE(J[0] == 1.0);
    for (int n = 1; n <= 4; ++n) REQUIRE(J[std::size_t(n)] == 0.0);
}

TEST_CASE("bessel sum rules hold to near machine precision") {
    REQUIRE(bessel::sum_rule_defect(11.4, 10) < 1e-12);
    REQUIRE(bessel::sum_rule_defect(2.0, 5) < 1e-12);
}

TEST_CASE("bessel domain checks") {
    REQUIRE_THROWS_AS(bessel::ladder(-1.0, 5), validation_error);
    REQUIRE_THROWS_AS(bessel::ladder(1.0, 201), validation_error);
    REQUIRE_THROWS_AS(bessel::ladder(1.0, -1), validation_error);
}
