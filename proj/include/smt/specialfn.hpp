#pragma once

/// Gamma and Bessel functions of real order and nonnegative real argument.
///
/// Accuracy targets: gamma to ~1e-14 relative on [0.5, 50]; bessel_j and
/// bessel_i to 1e-10 absolute for orders in [-1, 20] and x <= 30.

namespace smt::specialfn {

inline constexpr double kPi = 3.14159265358979323846;

/// Gamma function. Throws std::domain_error at nonpositive integers.
double gamma(double x);

/// 1/gamma(x), which is entire: returns 0 at nonpositive integers.
double rgamma(double x);

/// Bessel function of the first kind J_nu(x), x >= 0.
double bessel_j(double nu, double x);

/// Modified Bessel function of the first kind I_nu(x), x >= 0.
double bessel_i(double nu, double x);

/// (z/2)^(1-alpha) J_{alpha-1}(z) = sum_k (-1)^k (z/2)^(2k) / (k! Gamma(k+alpha)).
/// Entire in z; equals 1/Gamma(alpha) at z = 0.
double ek_kernel_j(double alpha, double z);

/// (z/2)^(1-alpha) I_{alpha-1}(z) = sum_k (z/2)^(2k) / (k! Gamma(k+alpha)).
double ek_kernel_i(double alpha, double z);

/// lambda^(1-alpha) s^(alpha-1) J_{alpha-1}(lambda s), with the lambda -> 0
/// limit taken through the series (no 0/0): equals
/// 2^(1-alpha) s^(2(alpha-1)) ek_kernel_j(alpha, lambda s).
double bessel_kernel_j(double alpha, double lambda, double s);

/// Same as bessel_kernel_j with I in place of J.
double bessel_kernel_i(double alpha, double lambda, double s);

}  // namespace smt::specialfn
