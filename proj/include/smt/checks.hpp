#pragma once

/// Named property suites with pinned resolutions and tolerances. Each check
/// compares a computed quantity against an independent oracle.

#include "smt/fields.hpp"
#include "smt/recon.hpp"

#include <array>
#include <string>
#include <vector>

namespace smt::checks {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// value <= tol, with NaN counted as failure.
CheckResult make_check(std::string name, double value, double tol);

/// "CHECK <name> <value> <tol> <PASS|FAIL>".
std::string format(const CheckResult& r);

/// ek, gek, rl, bessel, identity, radial, epd.
const std::vector<std::string>& suite_names();

/// Runs one suite. Throws std::invalid_argument for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name);

bool all_pass(const std::vector<CheckResult>& results);

// Individual suites, also used by the acceptance driver.
std::vector<CheckResult> ek_suite();
std::vector<CheckResult> gek_suite();
std::vector<CheckResult> rl_suite();
std::vector<CheckResult> bessel_suite();
std::vector<CheckResult> identity_suite();
std::vector<CheckResult> radial_suite();
std::vector<CheckResult> epd_suite();

/// Largest |J_{nu-1}(x) + J_{nu+1}(x) - (2 nu / x) J_nu(x)| over `samples`
/// deterministic (nu, x) pairs with nu in [-0.9, 8] and x in [0.2, 30].
double bessel_recurrence_residual(int samples = 200);

/// Largest deviation of J and I at orders +-1/2, 3/2 from their elementary
/// closed forms on x in [0.05, 30].
double bessel_closed_form_error();

/// Largest relative deviation of I^alpha_eta t^(2 beta) from
/// t^(2 beta) Gamma(eta+beta+1)/Gamma(alpha+eta+beta+1) for a parameter
/// sweep with alpha > 0 (pointwise quadrature) and alpha <= 0 (sampled
/// profiles through D).
double ek_power_law_error();

/// Max |I^beta_{eta+alpha} I^alpha_eta phi - I^(alpha+beta)_eta phi| for the
/// test profile (a smooth bump on t in (0.4, 1.6), 400 samples on (0, 2]).
double ek_composition_error(double alpha, double beta, double eta);

/// Max |I^(-alpha)_{eta+alpha} I^alpha_eta phi - phi| for the test profile.
double ek_roundtrip_error(double alpha, double eta);

/// |I^(-2k) u(s) - expected| maximized over s in {-0.5, 0, 0.3} for
/// u(t) = (1 - t^2)^k, Riemann-Liouville continuation.
double rl_constant_error(int k, double expected);

/// Discretization of a 3-D experiment: sphere rule, time samples, volume grid.
struct Resolution {
    int n_polar = 48;
    int n_azimuth = 96;
    std::size_t nt = 400;
    int G = 64;

    Resolution doubled() const { return {2 * n_polar, 2 * n_azimuth, 2 * nt, 2 * G}; }
    Resolution halved() const { return {n_polar / 2, n_azimuth / 2, nt / 2, G / 2}; }
};

/// Radial bump c = 0, R = 0.8, p = 3.
ScalarField reference_radial_bump();
/// Shifted bump c = (0.3, 0, 0), R = 0.4, p = 3.
ScalarField reference_shifted_bump();

/// Max relative deviation between P[t phi_theta] and (1/2) I^2 f on |x| <= rho
/// for the reference radial bump.
double identity_deviation(const Resolution& res);

/// Forward scan followed by fpr_invert on [-1, 1]^3; interior metrics.
recon::Metrics fpr_roundtrip(const ScalarField& f, const Resolution& res,
                             recon::Variant variant = recon::Variant::laplacian_last);

struct HalfData {
    double inner = 0.0;  ///< max |f0 - inner-branch inversion| on r in [0.05, 0.8]
    double outer = 0.0;  ///< same for the outer branch
    double agree = 0.0;  ///< max |inner - outer|
};
/// Half-data inversion of the radial p = 3 bump from closed-form means on nt samples.
HalfData radial_half_data(std::size_t nt);

/// |3-D forward scan - radial closed form| for a radial bump of exponent p.
double forward_crosscheck(int exponent, const Resolution& res);

struct RadialConsistency {
    double deviation = 0.0;  ///< max |shell average of the 3-D reconstruction - 1-D inversion|
    double error_1d = 0.0;   ///< max |1-D inversion - f0| at the same radii
    double error_3d = 0.0;   ///< max |shell average - f0|
};
/// Compares the shell-averaged 3-D reconstruction of the radial bump with the
/// inner-branch 1-D inversion at the same time resolution, on shells with
/// 0.05 <= r <= 0.75.
RadialConsistency radial_consistency(const Resolution& res);

/// Max deviation between the generalized-kernel solution at lambda = 0 and the
/// plain Erdelyi-Kober path, pointwise and on sampled profiles.
double epd_reduction_error(double alpha);

struct InitialDeparture {
    std::array<double, 3> t{0.02, 0.01, 0.005};
    std::array<double, 3> error{};
    /// log2 of successive error ratios; 2 for quadratic departure.
    std::array<double, 2> order{};
};
InitialDeparture epd_initial_departure(double alpha, double lambda);

struct ResidualStudy {
    double coarse = 0.0;
    double fine = 0.0;
    double order = 0.0;  ///< log2(coarse / fine)
};
/// PDE residual of sampled solutions on a space-time box around (0.1, 0, 0)
/// for t >= 0.1, at spacing (h, dt) = (0.05, 0.05) and half of that.
ResidualStudy epd_residual_study(double alpha, double lambda);

/// Relative interior L2 error of epd_invert(epd_trace(f)) for the reference
/// radial bump.
double epd_roundtrip_error(double alpha, double lambda, const Resolution& res);

/// Relative L2 mismatch between the trace and the solution regenerated by
/// epd_resolve, on a few detector rows.
double epd_resolve_consistency(double alpha, double lambda, const Resolution& res);

}  // namespace smt::checks
