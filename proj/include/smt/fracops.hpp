#pragma once

/// Erdelyi-Kober, Riemann-Liouville and Bessel-kernel fractional operators on
/// uniformly sampled profiles.
///
/// Notation (t > 0):
///   D                 = (1/(2t)) d/dt
///   I^a_eta phi(t)    = 2 t^(-2(a+eta)) / Gamma(a) * int_0^t (t^2-r^2)^(a-1) r^(2 eta+1) phi(r) dr
///   J^a_{eta,lam}     = same with the kernel 2^a lam^(1-a) (t^2-r^2)^((a-1)/2) J_{a-1}(lam sqrt(t^2-r^2)),
///                       and the t-weights t^(-2(a+eta)) ... t^(2 eta)
///   I^a_{eta,lam}     = same with I_{a-1} in place of J_{a-1}
/// Orders a <= 0 are realized by analytic continuation through powers of D.
///
/// The integrals are evaluated after the substitution r = t sqrt(u), which
/// turns every operator into
///   int_0^1 (1-u)^(a-1) u^eta K(lam t sqrt(1-u)) phi(t sqrt(u)) du
/// and is integrated by Gauss-Jacobi quadrature with weight (1-u)^(a-1) u^eta.
/// Sampled profiles are read through four-point Lagrange interpolation.

#include "smt/grids.hpp"

#include <cstddef>
#include <functional>

namespace smt::fracops {

inline constexpr std::size_t kDefaultNodes = 64;

/// Operator selector: order alpha, weight eta >= -1/2, Bessel parameter
/// lambda >= 0 and continuation depth m (-1 picks the smallest valid m).
struct FracSpec {
    double alpha = 1.0;
    double eta = 0.5;
    double lambda = 0.0;
    int depth = -1;
};

/// Smallest m >= 0 with alpha + m > 0, or m = -alpha when alpha is a
/// nonpositive integer.
int continuation_depth(double alpha);

/// Applies D = (1/(2t)) d/dt = d/d(t^2) m times using five-point differences
/// in the variable s = t^2 (exact for polynomials of degree four in t^2),
/// one-sided near the ends. Requires start > 0 and at least max(5, 2m+3) samples.
RadialProfile op_D(const RadialProfile& phi, int m);

/// I^alpha_eta phi at a single t for an evaluable phi, alpha > 0.
double ek_value(const std::function<double(double)>& phi, double t, double alpha, double eta,
                std::size_t nodes = kDefaultNodes);

/// J^alpha_{eta,lambda} phi at a single t for an evaluable phi, alpha > 0.
double gek_value(const std::function<double(double)>& phi, double t, double alpha, double eta, double lambda,
                 std::size_t nodes = kDefaultNodes);

/// I^alpha_eta phi on the grid of phi. Requires alpha > 0 and eta >= -1/2.
RadialProfile ek_forward(const RadialProfile& phi, double alpha, double eta, std::size_t nodes = kDefaultNodes);

/// I^alpha_eta phi for any real alpha:
///   alpha > 0 (depth 0): the integral,  alpha = 0: identity,
///   otherwise t^(-2(alpha+eta)) D^m t^(2(alpha+m+eta)) I^(alpha+m)_eta phi.
/// depth < 0 selects continuation_depth(alpha); a larger depth is accepted.
RadialProfile ek_continue(const RadialProfile& phi, double alpha, double eta, int depth = -1,
                          std::size_t nodes = kDefaultNodes);

/// max |I^beta_{eta+alpha} I^alpha_eta phi - I^(alpha+beta)_eta phi| over the grid.
double ek_compose_check(const RadialProfile& phi, double alpha, double beta, double eta,
                        std::size_t nodes = kDefaultNodes);

/// Riemann-Liouville integral (1/Gamma(alpha)) int_{-1}^s (s-t)^(alpha-1) u(t) dt,
/// continued to alpha <= 0 as (d/ds)^m I^(alpha+m). The sampled form takes u
/// on a uniform grid covering [-1, 1]. Throws std::out_of_range for s outside [-1, 1].
double rl_integral(const RadialProfile& u, double alpha, double s, std::size_t nodes = kDefaultNodes);
double rl_integral(const std::function<double(double)>& u, double alpha, double s,
                   std::size_t nodes = kDefaultNodes);

/// J^alpha_{eta,lambda} phi (Bessel J kernel). alpha > 0 integrates, alpha <= 0
/// continues through D. Termwise,
///   J^alpha_{eta,lambda} = sum_k (-lambda^2 t^2 / 4)^k / k! I^(alpha+k)_eta,
/// so order zero is the identity only at lambda = 0, where the operator reduces to I^alpha_eta.
RadialProfile gek_forward(const RadialProfile& phi, double alpha, double eta, double lambda,
                          std::size_t nodes = kDefaultNodes);

/// I^alpha_{eta,lambda} phi (modified Bessel I kernel), same conventions.
RadialProfile gik_forward(const RadialProfile& phi, double alpha, double eta, double lambda,
                          std::size_t nodes = kDefaultNodes);

/// Inverse of J^alpha_{eta,lambda}:
///   t^(-2 eta) D^m t^(2(eta+m)) I^(m-alpha)_{eta+alpha,lambda} psi,  m = max(0, ceil(alpha)).
/// For integer alpha the inner operator has order zero; it is the identity only
/// at lambda = 0 and otherwise keeps a smooth Bessel-series term.
RadialProfile gek_inverse(const RadialProfile& psi, double alpha, double eta, double lambda,
                          std::size_t nodes = kDefaultNodes);

/// Multiplies each sample by t^power.
RadialProfile times_power(const RadialProfile& phi, double power);

/// max |a - b| over two profiles on the same grid.
double max_abs_diff(const RadialProfile& a, const RadialProfile& b);

}  // namespace smt::fracops
