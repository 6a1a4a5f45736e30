#include "smt/fracops.hpp"

#include "smt/parallel.hpp"
#include "smt/quadrature.hpp"
#include "smt/specialfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace smt::fracops {

namespace {

enum class Kernel { power, bessel_j, bessel_i };

void require_eta(double eta) {
    if (!(eta >= -0.5)) throw std::invalid_argument("fractional operator: eta must be >= -1/2");
}

bool is_integer(double x) { return x == std::floor(x); }

// Smooth factor of the kernel at z = lambda t sqrt(1-u); the singular part
// (1-u)^(alpha-1) u^eta is carried by the quadrature weight.
double kernel_factor(Kernel kernel, double alpha, double z) {
    switch (kernel) {
        case Kernel::power: return specialfn::rgamma(alpha);
        case Kernel::bessel_j: return specialfn::ek_kernel_j(alpha, z);
        case Kernel::bessel_i: return specialfn::ek_kernel_i(alpha, z);
    }
    return 0.0;
}

// Positive-order operator on the profile grid (alpha > 0).
RadialProfile integrate_profile(const RadialProfile& phi, double alpha, double eta, double lambda, Kernel kernel,
                                std::size_t nodes) {
    if (!(alpha > 0.0)) throw std::invalid_argument("fractional integral: order must be positive");
    require_eta(eta);
    if (phi.size() < 4) throw std::invalid_argument("fractional integral: profile needs at least 4 samples");
    const QuadratureRule rule = gauss_jacobi_unit(nodes, alpha - 1.0, eta);
    std::vector<double> root_u(rule.size()), root_1mu(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q) {
        root_u[q] = std::sqrt(rule.nodes[q]);
        root_1mu[q] = std::sqrt(1.0 - rule.nodes[q]);
    }
    const double flat = specialfn::rgamma(alpha);
    RadialProfile out(phi.start, phi.step, std::vector<double>(phi.size()));
    parallel_for(phi.size(), [&](std::size_t j) {
        const double t = phi.node(j);
        if (t <= 0.0) throw std::invalid_argument("fractional integral: grid must lie in t > 0");
        double sum = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double k = (kernel == Kernel::power || lambda == 0.0)
                                 ? flat
                                 : kernel_factor(kernel, alpha, lambda * t * root_1mu[q]);
            sum += rule.weights[q] * k * interp_profile(phi, t * root_u[q]);
        }
        out.values[j] = sum;
    });
    return out;
}

// Order zero. With lambda = 0 this is the identity; otherwise the k >= 1 terms
// of the kernel series survive,
//   K^0 phi = phi -+ (lambda t / 2)^2 int_0^1 u^eta E(2, lambda t sqrt(1-u)) phi(t sqrt(u)) du,
// with the minus sign for the J kernel.
RadialProfile order_zero(const RadialProfile& phi, double eta, double lambda, Kernel kernel, std::size_t nodes) {
    if (kernel == Kernel::power || lambda == 0.0) return phi;
    const QuadratureRule rule = gauss_jacobi_unit(nodes, 0.0, eta);
    const double sign = kernel == Kernel::bessel_j ? -1.0 : 1.0;
    RadialProfile out = phi;
    parallel_for(phi.size(), [&](std::size_t j) {
        const double t = phi.node(j);
        if (t <= 0.0) throw std::invalid_argument("fractional integral: grid must lie in t > 0");
        double sum = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double u = rule.nodes[q];
            const double k = kernel_factor(kernel, 2.0, lambda * t * std::sqrt(1.0 - u));
            sum += rule.weights[q] * k * interp_profile(phi, t * std::sqrt(u));
        }
        const double z = 0.5 * lambda * t;
        out.values[j] += sign * z * z * sum;
    });
    return out;
}

// Finite-difference weights for the first derivative on five consecutive
// nodes, for each position of the evaluation node inside the window.
// Weights of the first derivative at each position of a stencil of kStencil
// unit-spaced points (centered in the interior, one-sided near the ends).
constexpr int kStencil = 5;

const std::array<std::array<double, kStencil>, kStencil>& first_derivative_table() {
    static const auto table = [] {
        std::array<std::array<double, kStencil>, kStencil> t{};
        std::array<double, kStencil> x{};
        for (int i = 0; i < kStencil; ++i) x[i] = i;
        for (int pos = 0; pos < kStencil; ++pos) {
            const auto w = fd_weights(static_cast<double>(pos), x, 1);
            std::copy(w.begin(), w.end(), t[pos].begin());
        }
        return t;
    }();
    return table;
}

// prod_{j=1}^{m} (delta + base + j) phi with the Euler operator delta = (t/2) d/dt.
// This equals t^(-2 base) D^m t^(2(base + m)) phi but never divides by t, so
// the one-sided differences near t = 0 are not amplified.
RadialProfile euler_product(const RadialProfile& phi, double base, int m) {
    const std::size_t n = phi.size();
    if (m > 0 && n < static_cast<std::size_t>(kStencil))
        throw std::invalid_argument("continuation: profile needs at least 5 samples");
    const auto& table = first_derivative_table();
    constexpr std::size_t half = kStencil / 2;
    RadialProfile cur = phi;
    RadialProfile next = phi;
    for (int j = 1; j <= m; ++j) {
        const double shift = base + j;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t w = std::min(k >= half ? k - half : 0, n - kStencil);
            const auto& c = table[k - w];
            double d = 0.0;
            for (int i = 0; i < kStencil; ++i) d += c[i] * cur.values[w + i];
            next.values[k] = shift * cur.values[k] + 0.5 * cur.node(k) * d / phi.step;
        }
        std::swap(cur, next);
    }
    return cur;
}

// Any real order through t^(-2(alpha+eta)) D^m t^(2(alpha+m+eta)) K^(alpha+m)_eta,
// evaluated as prod_{j=1}^{m} (delta + alpha + eta + j) K^(alpha+m)_eta.
RadialProfile continue_profile(const RadialProfile& phi, double alpha, double eta, double lambda, Kernel kernel,
                               int depth, std::size_t nodes) {
    require_eta(eta);
    const int minimal = continuation_depth(alpha);
    const int m = depth < 0 ? minimal : depth;
    if (m < minimal) throw std::invalid_argument("continuation depth too small for order " + std::to_string(alpha));
    const double shifted = alpha + m;
    if (lambda == 0.0) {
        // delta commutes with I^a_eta (both are dilation invariant), so the
        // data are differentiated before integration and quadrature noise is
        // never differenced
        const RadialProfile pre = euler_product(phi, alpha + eta, m);
        return shifted == 0.0 ? pre : integrate_profile(pre, shifted, eta, lambda, kernel, nodes);
    }
    RadialProfile inner = shifted == 0.0 ? order_zero(phi, eta, lambda, kernel, nodes)
                                         : integrate_profile(phi, shifted, eta, lambda, kernel, nodes);
    return euler_product(inner, alpha + eta, m);
}

// Derivative of the given order at s from evaluations of g on a uniform
// stencil of spacing h kept inside [lo, hi].
template <class G>
double stencil_derivative(G&& g, double s, int order, int npts, double h, double lo, double hi) {
    double first = s - 0.5 * (npts - 1) * h;
    first = std::clamp(first, lo, hi - (npts - 1) * h);
    std::vector<double> x(npts);
    for (int k = 0; k < npts; ++k) x[k] = first + k * h;
    const auto w = fd_weights(s, x, order);
    double sum = 0.0;
    for (int k = 0; k < npts; ++k) sum += w[k] * g(x[k]);
    return sum;
}

}  // namespace

int continuation_depth(double alpha) {
    if (alpha > 0.0) return 0;
    if (is_integer(alpha)) return static_cast<int>(-alpha);
    return static_cast<int>(std::floor(-alpha)) + 1;
}

RadialProfile times_power(const RadialProfile& phi, double power) {
    RadialProfile out = phi;
    if (power == 0.0) return out;
    for (std::size_t k = 0; k < out.size(); ++k) out.values[k] *= std::pow(out.node(k), power);
    return out;
}

double max_abs_diff(const RadialProfile& a, const RadialProfile& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: profiles differ in size");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a.values[k] - b.values[k]));
    return m;
}

RadialProfile op_D(const RadialProfile& phi, int m) {
    if (m < 0) throw std::invalid_argument("op_D: negative power");
    if (m == 0) return phi;
    const std::size_t n = phi.size();
    if (n < 5 || n < static_cast<std::size_t>(2 * m + 3))
        throw std::invalid_argument("op_D: profile too short for D^" + std::to_string(m));
    if (!(phi.start > 0.0)) throw std::invalid_argument("op_D: grid must lie in t > 0");
    // D = d/ds with s = t^2: five-point weights on the (nonuniform) s nodes,
    // exact for polynomials of degree four in t^2.
    std::vector<std::array<double, 5>> weights(n);
    std::vector<std::size_t> window(n);
    for (std::size_t k = 0; k < n; ++k) {
        window[k] = std::min(k >= 2 ? k - 2 : 0, n - 5);
        std::array<double, 5> s{};
        for (int i = 0; i < 5; ++i) {
            const double t = phi.node(window[k] + i);
            s[i] = t * t;
        }
        const double t = phi.node(k);
        const auto w = fd_weights(t * t, s, 1);
        std::copy(w.begin(), w.end(), weights[k].begin());
    }
    RadialProfile cur = phi;
    RadialProfile next = phi;
    for (int pass = 0; pass < m; ++pass) {
        for (std::size_t k = 0; k < n; ++k) {
            double d = 0.0;
            for (int i = 0; i < 5; ++i) d += weights[k][i] * cur.values[window[k] + i];
            next.values[k] = d;
        }
        std::swap(cur, next);
    }
    return cur;
}

double ek_value(const std::function<double(double)>& phi, double t, double alpha, double eta, std::size_t nodes) {
    if (!(alpha > 0.0)) throw std::invalid_argument("ek_value: order must be positive");
    require_eta(eta);
    const QuadratureRule rule = gauss_jacobi_unit(nodes, alpha - 1.0, eta);
    return specialfn::rgamma(alpha) * rule.integrate([&](double u) { return phi(t * std::sqrt(u)); });
}

double gek_value(const std::function<double(double)>& phi, double t, double alpha, double eta, double lambda,
                 std::size_t nodes) {
    if (!(alpha > 0.0)) throw std::invalid_argument("gek_value: order must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("gek_value: lambda must be >= 0");
    require_eta(eta);
    const QuadratureRule rule = gauss_jacobi_unit(nodes, alpha - 1.0, eta);
    return rule.integrate([&](double u) {
        const double k = lambda == 0.0 ? specialfn::rgamma(alpha)
                                       : kernel_factor(Kernel::bessel_j, alpha, lambda * t * std::sqrt(1.0 - u));
        return k * phi(t * std::sqrt(u));
    });
}

RadialProfile ek_forward(const RadialProfile& phi, double alpha, double eta, std::size_t nodes) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("ek_forward: order must be positive; use ek_continue for alpha <= 0");
    return integrate_profile(phi, alpha, eta, 0.0, Kernel::power, nodes);
}

RadialProfile ek_continue(const RadialProfile& phi, double alpha, double eta, int depth, std::size_t nodes) {
    return continue_profile(phi, alpha, eta, 0.0, Kernel::power, depth, nodes);
}

double ek_compose_check(const RadialProfile& phi, double alpha, double beta, double eta, std::size_t nodes) {
    const RadialProfile lhs = ek_continue(ek_continue(phi, alpha, eta, -1, nodes), beta, eta + alpha, -1, nodes);
    const RadialProfile rhs = ek_continue(phi, alpha + beta, eta, -1, nodes);
    return max_abs_diff(lhs, rhs);
}

double rl_integral(const std::function<double(double)>& u, double alpha, double s, std::size_t nodes) {
    if (s < -1.0 || s > 1.0) throw std::out_of_range("rl_integral: s must lie in [-1, 1]");
    const int m = continuation_depth(alpha);
    const double shifted = alpha + m;
    auto positive = [&](double x) {
        if (shifted == 0.0) return u(x);
        if (x <= -1.0) return 0.0;
        const QuadratureRule rule = gauss_jacobi_unit(nodes, shifted - 1.0, 0.0);
        const double span = x + 1.0;
        return std::pow(span, shifted) * specialfn::rgamma(shifted) *
               rule.integrate([&](double v) { return u(-1.0 + span * v); });
    };
    if (m == 0) return positive(s);
    // ninth-order differences on a coarse stencil keep the rounding error of
    // high derivatives small
    return stencil_derivative(positive, s, m, m + 9, 1.0 / 16.0, -1.0, 1.0);
}

double rl_integral(const RadialProfile& u, double alpha, double s, std::size_t nodes) {
    if (s < -1.0 || s > 1.0) throw std::out_of_range("rl_integral: s must lie in [-1, 1]");
    const double tol = 1e-9;
    if (u.start > -1.0 + tol || u.back() < 1.0 - tol)
        throw std::invalid_argument("rl_integral: samples must cover [-1, 1]");
    const int m = continuation_depth(alpha);
    const double shifted = alpha + m;
    auto sampled = [&](double x) { return interp_profile(u, x); };
    if (m == 0) return rl_integral(sampled, alpha, s, nodes);
    const int npts = m + 5;
    if (u.size() < static_cast<std::size_t>(npts)) throw std::invalid_argument("rl_integral: too few samples");
    // stencil on the sample nodes nearest to s
    long first = std::lround((s - u.start) / u.step) - (npts - 1) / 2;
    first = std::clamp<long>(first, 0, static_cast<long>(u.size()) - npts);
    std::vector<double> x(npts), g(npts);
    for (int k = 0; k < npts; ++k) {
        const auto idx = static_cast<std::size_t>(first + k);
        x[k] = u.node(idx);
        g[k] = shifted == 0.0 ? u.values[idx] : rl_integral(sampled, shifted, std::clamp(x[k], -1.0, 1.0), nodes);
    }
    const auto w = fd_weights(s, x, m);
    double sum = 0.0;
    for (int k = 0; k < npts; ++k) sum += w[k] * g[k];
    return sum;
}

RadialProfile gek_forward(const RadialProfile& phi, double alpha, double eta, double lambda, std::size_t nodes) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("gek_forward: lambda must be >= 0");
    return continue_profile(phi, alpha, eta, lambda, Kernel::bessel_j, -1, nodes);
}

RadialProfile gik_forward(const RadialProfile& phi, double alpha, double eta, double lambda, std::size_t nodes) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("gik_forward: lambda must be >= 0");
    return continue_profile(phi, alpha, eta, lambda, Kernel::bessel_i, -1, nodes);
}

RadialProfile gek_inverse(const RadialProfile& psi, double alpha, double eta, double lambda, std::size_t nodes) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("gek_inverse: lambda must be >= 0");
    require_eta(eta);
    const int m = alpha > 0.0 ? static_cast<int>(std::ceil(alpha)) : 0;
    const double order = m - alpha;
    RadialProfile inner = gik_forward(psi, order, eta + alpha, lambda, nodes);
    return euler_product(inner, eta, m);
}

}  // namespace smt::fracops
