#include "doctest.h"
#include "smt/specialfn.hpp"

#include <cmath>
#include <stdexcept>

namespace sf = smt::specialfn;
using sf::bessel_i;
using sf::bessel_j;
using sf::bessel_kernel_i;
using sf::bessel_kernel_j;
using sf::ek_kernel_i;
using sf::ek_kernel_j;
using sf::kPi;
using sf::rgamma;

TEST_CASE("gamma matches classical values") {
    CHECK(std::fabs(sf::gamma(0.5) * sf::gamma(0.5) - kPi) <= 1e-12);
    CHECK(sf::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(sf::gamma(1.5) == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-14));
    CHECK(sf::gamma(-0.5) == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-13));
    CHECK(sf::gamma(30.0) == doctest::Approx(std::tgamma(30.0)).epsilon(1e-13));
    CHECK_THROWS_AS(sf::gamma(-2.0), std::domain_error);
    CHECK_THROWS_AS(sf::gamma(0.0), std::domain_error);
}

TEST_CASE("reciprocal gamma is entire") {
    CHECK(rgamma(-3.0) == 0.0);
    CHECK(rgamma(0.0) == 0.0);
    CHECK(rgamma(4.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("Bessel functions at half-integer orders") {
    for (double x : {0.05, 1.0, 7.3, 18.0, 29.0}) {
        const double c = std::sqrt(2.0 / (kPi * x));
        CHECK(std::fabs(bessel_j(0.5, x) - c * std::sin(x)) <= 1e-10);
        CHECK(std::fabs(bessel_j(-0.5, x) - c * std::cos(x)) <= 1e-10);
        CHECK(std::fabs(bessel_j(1.5, x) - c * (std::sin(x) / x - std::cos(x))) <= 1e-10);
        CHECK(std::fabs(bessel_i(0.5, x) - c * std::sinh(x)) <= 1e-10 * std::cosh(x));
        CHECK(std::fabs(bessel_i(-0.5, x) - c * std::cosh(x)) <= 1e-10 * std::cosh(x));
    }
    CHECK(bessel_j(0.5, 1.0) == doctest::Approx(0.6713967071418031).epsilon(1e-12));
}

TEST_CASE("Bessel functions at integer orders against tabulated values") {
    CHECK(bessel_j(0.0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-11));
    CHECK(bessel_j(1.0, 10.0) == doctest::Approx(0.04347274616886144).epsilon(1e-9));
    CHECK(bessel_j(0.0, 25.0) == doctest::Approx(0.09626678327595811).epsilon(1e-9));
    CHECK(bessel_i(0.0, 1.0) == doctest::Approx(1.2660658777520082).epsilon(1e-12));
    CHECK(bessel_i(1.0, 2.0) == doctest::Approx(1.5906368546373291).epsilon(1e-12));
    CHECK(bessel_j(-1.0, 3.0) == doctest::Approx(-bessel_j(1.0, 3.0)).epsilon(1e-12));
}

TEST_CASE("three-term recurrence") {
    for (double nu : {-0.7, 0.3, 1.0, 2.5, 6.2})
        for (double x : {0.4, 3.0, 12.0, 21.0, 29.5}) {
            const double r = bessel_j(nu - 1, x) + bessel_j(nu + 1, x) - 2.0 * nu / x * bessel_j(nu, x);
            CHECK(std::fabs(r) <= 1e-10);
        }
}

TEST_CASE("kernel series at zero and their lambda -> 0 limits") {
    for (double a : {0.5, 1.0, 2.5}) {
        CHECK(ek_kernel_j(a, 0.0) == doctest::Approx(1.0 / sf::gamma(a)).epsilon(1e-14));
        CHECK(ek_kernel_i(a, 0.0) == doctest::Approx(1.0 / sf::gamma(a)).epsilon(1e-14));
        const double s = 0.7;
        const double limit = std::pow(2.0, 1.0 - a) * std::pow(s, 2.0 * (a - 1.0)) / sf::gamma(a);
        CHECK(bessel_kernel_j(a, 0.0, s) == doctest::Approx(limit).epsilon(1e-13));
        CHECK(bessel_kernel_i(a, 0.0, s) == doctest::Approx(limit).epsilon(1e-13));
    }
    // (z/2)^0 J_0(z) for alpha = 1
    CHECK(ek_kernel_j(1.0, 2.3) == doctest::Approx(bessel_j(0.0, 2.3)).epsilon(1e-12));
    CHECK(ek_kernel_i(1.0, 2.3) == doctest::Approx(bessel_i(0.0, 2.3)).epsilon(1e-12));
    // alpha = 2: (z/2)^(-1) J_1(z)
    CHECK(ek_kernel_j(2.0, 4.0) == doctest::Approx(bessel_j(1.0, 4.0) / 2.0).epsilon(1e-12));
}
