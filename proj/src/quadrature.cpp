#include "smt/quadrature.hpp"

#include "smt/specialfn.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace smt {

namespace {

QuadratureRule compute_gauss_jacobi(std::size_t n, double a, double b) {
    if (n == 0) throw std::invalid_argument("gauss_jacobi: need at least one node");
    if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");

    // Jacobi matrix of the monic recurrence
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(n > 1 ? n - 1 : 1);
    const double ab = a + b;
    diag(0) = (b - a) / (ab + 2.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double k = static_cast<double>(i);
        const double s = 2.0 * k + ab;
        diag(static_cast<Eigen::Index>(i)) = (b * b - a * a) / (s * (s + 2.0));
        double beta;
        if (i == 1) {
            beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        off(static_cast<Eigen::Index>(i - 1)) = std::sqrt(beta);
    }

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0)) * specialfn::gamma(a + 1.0) *
                       specialfn::gamma(b + 1.0) * specialfn::rgamma(ab + 2.0);
    if (n == 1) {
        rule.nodes[0] = diag(0);
        rule.weights[0] = mu0;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigen solver failed");
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        rule.nodes[i] = solver.eigenvalues()(ii);
        const double v = solver.eigenvectors()(0, ii);
        rule.weights[i] = mu0 * v * v;
    }
    return rule;
}

}  // namespace

QuadratureRule gauss_jacobi(std::size_t n, double a, double b) {
    // rules are rebuilt often with the same parameters (one per evaluation
    // point in several callers), so keep a small cache of the eigen solves
    using Key = std::tuple<std::size_t, double, double>;
    static std::mutex mutex;
    static std::map<Key, QuadratureRule> cache;
    const Key key{n, a, b};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    QuadratureRule rule = compute_gauss_jacobi(n, a, b);
    std::lock_guard lock(mutex);
    if (cache.size() >= 512) cache.clear();
    cache.emplace(key, rule);
    return rule;
}

QuadratureRule gauss_legendre(std::size_t n) {
    QuadratureRule rule = gauss_jacobi(n, 0.0, 0.0);
    // symmetrize to remove eigensolver noise
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t j = n - 1 - i;
        const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_jacobi_unit(std::size_t n, double a, double b) {
    QuadratureRule rule = gauss_jacobi(n, a, b);
    const double scale = std::pow(0.5, a + b + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
        rule.weights[i] *= scale;
    }
    return rule;
}

QuadratureRule gauss_legendre(std::size_t n, double lo, double hi) {
    QuadratureRule rule = gauss_legendre(n);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

std::vector<double> fd_weights(double z, std::span<const double> x, int order) {
    const int n = static_cast<int>(x.size());
    if (order < 0 || n <= order) throw std::invalid_argument("fd_weights: stencil too small for derivative order");
    // c[j][k]: weight of x[j] for the k-th derivative
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][order];
    return w;
}

}  // namespace smt
