#include "doctest.h"
#include "smt/quadrature.hpp"
#include "smt/specialfn.hpp"

#include <cmath>
#include <vector>

using namespace smt;
namespace sf = smt::specialfn;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    const QuadratureRule r = gauss_legendre(5);
    CHECK(r.size() == 5);
    CHECK(r.integrate([](double x) { return std::pow(x, 8); }) == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(std::fabs(r.integrate([](double x) { return std::pow(x, 9); })) <= 1e-15);
    const QuadratureRule m = gauss_legendre(4, 0.0, 2.0);
    CHECK(m.integrate([](double x) { return x * x * x; }) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Jacobi on the unit interval reproduces Beta integrals") {
    for (double a : {-0.5, 0.0, 1.5})
        for (double b : {-0.5, 0.5, 2.0}) {
            const QuadratureRule r = gauss_jacobi_unit(12, a, b);
            const double beta = sf::gamma(a + 1) * sf::gamma(b + 3) / sf::gamma(a + b + 4);
            CHECK(r.integrate([](double u) { return u * u; }) == doctest::Approx(beta).epsilon(1e-13));
        }
}

TEST_CASE("Gauss-Jacobi on [-1, 1]") {
    const QuadratureRule r = gauss_jacobi(8, 0.5, 0.5);
    // int (1-x^2)^(1/2) dx = pi/2
    CHECK(r.integrate([](double) { return 1.0; }) == doctest::Approx(specialfn::kPi / 2).epsilon(1e-13));
}

TEST_CASE("finite-difference weights") {
    const std::vector<double> s{0.0, 1.0, 2.0};
    const auto w = fd_weights(0.0, s, 1);
    CHECK(w[0] == doctest::Approx(-1.5));
    CHECK(w[1] == doctest::Approx(2.0));
    CHECK(w[2] == doctest::Approx(-0.5));
    const std::vector<double> n{-0.3, 0.1, 0.4, 1.0, 1.7};
    const auto d2 = fd_weights(0.2, n, 2);
    double sum = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) sum += d2[i] * std::pow(n[i], 4);
    CHECK(sum == doctest::Approx(12.0 * 0.04).epsilon(1e-10));
}
