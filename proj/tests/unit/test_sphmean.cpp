#include "doctest.h"
#include "smt/sphmean.hpp"

#include <cmath>
#include <stdexcept>

using namespace smt;

TEST_CASE("spherical means of constants and quadratics") {
    const SphereGrid s = build_sphere_grid(8, 16);
    const ScalarField one([](const Point3&) { return 1.0; }, 0.9);
    CHECK(sphmean::spherical_mean(one, Point3{0.1, 0.0, 0.2}, 0.3, s) == doctest::Approx(1.0).epsilon(1e-14));

    const ScalarField sq([](const Point3& x) { return dot(x, x); }, 0.99);
    const Point3 c{0.3, -0.2, 0.5};
    for (double t : {0.1, 0.6, 1.4})
        CHECK(sphmean::spherical_mean(sq, c, t, s) == doctest::Approx(dot(c, c) + t * t).epsilon(1e-13));
}

TEST_CASE("radial closed form for an indicator profile") {
    const auto indicator = [](double r) { return r <= 0.8 ? 1.0 : 0.0; };
    // (1/(2t)) int_{1-t}^{0.8} r dr at t = 0.5
    CHECK(sphmean::radial_forward(indicator, 0.8, 0.5) == doctest::Approx(0.195).epsilon(1e-12));
    CHECK(sphmean::radial_forward(indicator, 0.8, 0.1) == 0.0);
    CHECK_THROWS_AS(sphmean::radial_forward(indicator, 0.8, 2.5), std::out_of_range);
}

TEST_CASE("radial closed form against the polynomial antiderivative") {
    const auto f0 = [](double r) { return std::pow(1.0 - r * r / 0.64, 3); };
    // r dr = 0.32 dw with w = r^2 / 0.64, so the integral is 0.32 (1 - w0)^4 / 4
    const double t = 0.6, w0 = 0.16 / 0.64;
    const double exact = 0.32 * std::pow(1.0 - w0, 4) / 4.0 / (2.0 * t);
    CHECK(std::fabs(sphmean::radial_forward(f0, 0.8, t) - exact) <= 1e-12);
}

TEST_CASE("radial closed form in five dimensions has unit mass") {
    const auto one = [](double r) { return r <= 0.9 ? 1.0 : 0.0; };
    // a sphere of radius t about a unit vector lies inside |x| <= 0.9 for no t; it
    // lies entirely outside for t < 0.1
    CHECK(sphmean::radial_forward(one, 0.9, 0.05, 5) == 0.0);
    const double v3 = sphmean::radial_forward(one, 0.9, 1.0, 3);
    const double v5 = sphmean::radial_forward(one, 0.9, 1.0, 5);
    CHECK(v3 > 0.0);
    CHECK(v5 > 0.0);
    CHECK(v5 < 1.0);
}

TEST_CASE("forward scan: support zeros and identical rows for radial fields") {
    const ScalarField f = make_phantom(PhantomKind::radial_bump, {Bump{{0, 0, 0}, 0.8, 6, 1.0}});
    const SphereGrid s = build_sphere_grid(16, 32);
    const TimeGrid tg(40);
    const CylinderData d = sphmean::forward_scan(f, s, tg);
    CHECK(d.rows() == s.size());
    double spread = 0.0;
    for (std::size_t j = 0; j < tg.count; ++j) {
        const double t = tg.node(j);
        if (t < 0.2 || t > 1.8) CHECK(d.at(0, j) == 0.0);
        for (std::size_t i = 1; i < d.rows(); ++i) spread = std::max(spread, std::fabs(d.at(i, j) - d.at(0, j)));
    }
    CHECK(spread <= 1e-6);  // coarse 16 x 32 rule
}

TEST_CASE("forward scan agrees with the radial closed form") {
    const ScalarField f = make_phantom(PhantomKind::radial_bump, {Bump{{0, 0, 0}, 0.8, 6, 1.0}});
    CHECK(sphmean::crosscheck_radial(f, build_sphere_grid(48, 96), TimeGrid(40)) <= 1e-8);
    const ScalarField g = make_phantom(PhantomKind::shifted_bump, {Bump{{0.3, 0, 0}, 0.4, 3, 1.0}});
    CHECK_THROWS_AS(sphmean::crosscheck_radial(g, build_sphere_grid(4, 8), TimeGrid(10)), std::invalid_argument);
}

TEST_CASE("radial scan samples the closed form") {
    const auto f0 = [](double r) { return r < 0.5 ? 1.0 - r * r / 0.25 : 0.0; };
    const TimeGrid tg(20);
    const RadialProfile p = sphmean::radial_scan(f0, 0.5, tg);
    for (std::size_t j = 0; j < tg.count; ++j)
        CHECK(p.values[j] == doctest::Approx(sphmean::radial_forward(f0, 0.5, tg.node(j))));
}
