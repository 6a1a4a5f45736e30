#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smt {

/// Nodes and weights of a 1-D quadrature rule.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// Gauss-Jacobi rule for weight (1-x)^a (1+x)^b on [-1, 1], a, b > -1.
/// Built by Golub-Welsch; exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_jacobi(std::size_t n, double a, double b);

/// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

/// Gauss-Jacobi rule for weight (1-u)^a u^b on [0, 1].
QuadratureRule gauss_jacobi_unit(std::size_t n, double a, double b);

/// Gauss-Legendre rule mapped to [lo, hi].
QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

/// Finite-difference weights for the derivative of the given order at z from
/// values at the stencil points (Fornberg's algorithm). The result is exact
/// for polynomials of degree < stencil.size().
std::vector<double> fd_weights(double z, std::span<const double> stencil, int order);

}  // namespace smt
