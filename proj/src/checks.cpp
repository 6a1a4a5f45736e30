#include "smt/checks.hpp"

#include "smt/epd.hpp"
#include "smt/fracops.hpp"
#include "smt/grids.hpp"
#include "smt/specialfn.hpp"
#include "smt/sphmean.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace smt::checks {

namespace {

constexpr double kPi = specialfn::kPi;

// Smooth bump on (0.4, 1.6), the test profile of the operator suites.
double test_profile(double t) {
    const double s = (t - 1.0) / 0.6;
    return std::fabs(s) < 1.0 ? std::pow(1.0 - s * s, 8) : 0.0;
}

const TimeGrid& operator_grid() {
    static const TimeGrid grid(400, 2.0);
    return grid;
}

RadialProfile sampled_test_profile() { return RadialProfile::sample(operator_grid(), test_profile); }

double radial_p3(double r) { return r < 0.8 ? std::pow(1.0 - r * r / 0.64, 3) : 0.0; }

// Relative L2 difference of two equally sized sample sets.
double relative_l2(const std::vector<double>& a, const std::vector<double>& ref) {
    double e = 0.0, n = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        e += (a[k] - ref[k]) * (a[k] - ref[k]);
        n += ref[k] * ref[k];
    }
    return n > 0.0 ? std::sqrt(e / n) : std::sqrt(e);
}

// Bessel closed forms at half-integer order.
double j_half(double x) { return std::sqrt(2.0 / (kPi * x)) * std::sin(x); }
double j_mhalf(double x) { return std::sqrt(2.0 / (kPi * x)) * std::cos(x); }
double j_3half(double x) { return std::sqrt(2.0 / (kPi * x)) * (std::sin(x) / x - std::cos(x)); }
double i_half(double x) { return std::sqrt(2.0 / (kPi * x)) * std::sinh(x); }
double i_mhalf(double x) { return std::sqrt(2.0 / (kPi * x)) * std::cosh(x); }
double i_3half(double x) { return std::sqrt(2.0 / (kPi * x)) * (std::cosh(x) - std::sinh(x) / x); }

// J^alpha_{eta,lambda} applied to phi = 1, from the termwise expansion
// sum_k (-lambda^2 t^2/4)^k / k! * Gamma(eta+1) / Gamma(alpha+eta+k+1).
double gek_unit_series(double alpha, double eta, double lambda, double t) {
    const double z = -0.25 * lambda * lambda * t * t;
    double sum = 0.0, power = 1.0, fact = 1.0;
    for (int k = 0; k < 80; ++k) {
        if (k > 0) {
            power *= z;
            fact *= k;
        }
        sum += power / fact * specialfn::gamma(eta + 1.0) * specialfn::rgamma(alpha + eta + k + 1.0);
    }
    return sum;
}

}  // namespace

CheckResult make_check(std::string name, double value, double tol) {
    return {std::move(name), value, tol, value <= tol};
}

std::string format(const CheckResult& r) {
    char buf[64];
    std::string line = "CHECK " + r.name + " ";
    std::snprintf(buf, sizeof buf, "%.6e %.3e ", r.value, r.tol);
    return line + buf + (r.pass ? "PASS" : "FAIL");
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"ek", "gek", "rl", "bessel", "identity", "radial", "epd"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& name) {
    if (name == "ek") return ek_suite();
    if (name == "gek") return gek_suite();
    if (name == "rl") return rl_suite();
    if (name == "bessel") return bessel_suite();
    if (name == "identity") return identity_suite();
    if (name == "radial") return radial_suite();
    if (name == "epd") return epd_suite();
    throw std::invalid_argument("unknown suite '" + name + "'");
}

// ---------------------------------------------------------------- operators

double ek_power_law_error() {
    double worst = 0.0;
    const double eta = 0.5;
    for (double alpha : {0.5, 1.0, 1.5, 2.5})
        for (double beta : {1.0, 2.0, 3.0, 3.7}) {
            const double c = specialfn::gamma(eta + beta + 1.0) / specialfn::gamma(alpha + eta + beta + 1.0);
            for (double t : {0.1, 0.5, 1.0, 1.7}) {
                const double got = fracops::ek_value([&](double r) { return std::pow(r, 2.0 * beta); }, t, alpha, eta);
                const double want = c * std::pow(t, 2.0 * beta);
                worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
            }
        }
    // continued orders on sampled t^2, where the differences are exact
    for (double alpha : {-0.5, -1.0, -1.5}) {
        const double beta = 1.0;
        const double c = specialfn::gamma(eta + beta + 1.0) / specialfn::gamma(alpha + eta + beta + 1.0);
        const RadialProfile phi = RadialProfile::sample(operator_grid(), [](double t) { return t * t; });
        const RadialProfile got = fracops::ek_continue(phi, alpha, eta);
        for (std::size_t j = 0; j < phi.size(); ++j)
            worst = std::max(worst, std::fabs(got.values[j] - c * phi.values[j]) / std::fabs(c * phi.values[j]));
    }
    return worst;
}

double ek_composition_error(double alpha, double beta, double eta) {
    return fracops::ek_compose_check(sampled_test_profile(), alpha, beta, eta);
}

double ek_roundtrip_error(double alpha, double eta) {
    const RadialProfile phi = sampled_test_profile();
    const RadialProfile back = fracops::ek_continue(fracops::ek_continue(phi, alpha, eta), -alpha, eta + alpha);
    return fracops::max_abs_diff(back, phi);
}

std::vector<CheckResult> ek_suite() {
    std::vector<CheckResult> out;
    out.push_back(make_check("ek_power_law_rel", ek_power_law_error(), 1e-8));
    out.push_back(make_check("ek_compose_half_half", ek_composition_error(0.5, 0.5, 0.5), 1e-6));
    out.push_back(make_check("ek_compose_one_one", ek_composition_error(1.0, 1.0, 0.5), 1e-8));
    out.push_back(make_check("ek_compose_half_minus_half", ek_composition_error(0.5, -0.5, 0.5), 1e-6));
    out.push_back(make_check("ek_roundtrip_half", ek_roundtrip_error(0.5, 0.5), 1e-6));
    out.push_back(make_check("ek_roundtrip_one", ek_roundtrip_error(1.0, 0.5), 1e-6));
    out.push_back(make_check("ek_roundtrip_three_halves", ek_roundtrip_error(1.5, 0.5), 1e-5));

    const TimeGrid& grid = operator_grid();
    const RadialProfile one = RadialProfile::sample(grid, [](double) { return 1.0; });
    const RadialProfile unit = fracops::ek_forward(one, 1.0, 0.0);
    double e = 0.0;
    for (double v : unit.values) e = std::max(e, std::fabs(v - 1.0));
    out.push_back(make_check("ek_unit_order_one", e, 1e-12));

    const RadialProfile phi = sampled_test_profile();
    out.push_back(make_check("ek_order_zero_identity", fracops::max_abs_diff(fracops::ek_continue(phi, 0.0, 0.5), phi),
                             1e-10));

    const RadialProfile t2 = RadialProfile::sample(grid, [](double t) { return t * t; });
    const RadialProfile d1 = fracops::op_D(t2, 1);
    e = 0.0;
    for (double v : d1.values) e = std::max(e, std::fabs(v - 1.0));
    out.push_back(make_check("op_D_t2", e, 1e-8));

    const RadialProfile t6 = RadialProfile::sample(grid, [](double t) { return std::pow(t, 6); });
    const RadialProfile d2 = fracops::op_D(t6, 2);
    e = 0.0;
    for (std::size_t j = 0; j < d2.size(); ++j) {
        const double t = d2.node(j);
        e = std::max(e, std::fabs(d2.values[j] - 6.0 * t * t) / 24.0);
    }
    out.push_back(make_check("op_D2_t6_rel", e, 1e-6));
    return out;
}

std::vector<CheckResult> gek_suite() {
    std::vector<CheckResult> out;
    const RadialProfile phi = sampled_test_profile();
    double e = 0.0;
    for (double alpha : {0.5, 1.0, 2.0})
        e = std::max(e, fracops::max_abs_diff(fracops::gek_forward(phi, alpha, 0.5, 0.0),
                                              fracops::ek_forward(phi, alpha, 0.5)));
    out.push_back(make_check("gek_lambda0_equals_ek", e, 1e-10));

    const TimeGrid& grid = operator_grid();
    const RadialProfile one = RadialProfile::sample(grid, [](double) { return 1.0; });
    // 2 t^(-2) int_0^t r dr = 1 at eta = 0
    const RadialProfile unit = fracops::gek_forward(one, 1.0, 0.0, 0.0);
    e = 0.0;
    for (double v : unit.values) e = std::max(e, std::fabs(v - 1.0));
    out.push_back(make_check("gek_unit_lambda0", e, 1e-12));

    for (double alpha : {0.5, 1.0, 0.0}) {
        const RadialProfile got = fracops::gek_forward(one, alpha, 0.5, 2.0);
        e = 0.0;
        for (std::size_t j = 0; j < got.size(); ++j)
            e = std::max(e, std::fabs(got.values[j] - gek_unit_series(alpha, 0.5, 2.0, got.node(j))));
        char name[64];
        std::snprintf(name, sizeof name, "gek_unit_series_alpha%g_lambda2", alpha);
        out.push_back(make_check(name, e, 1e-10));
    }

    e = 0.0;
    for (double t : {0.3, 1.0, 1.9})
        e = std::max(e, std::fabs(fracops::gek_value([](double) { return 1.0; }, t, 1.5, 0.5, 3.0) -
                                  gek_unit_series(1.5, 0.5, 3.0, t)));
    out.push_back(make_check("gek_value_series", e, 1e-10));

    for (auto [alpha, lambda] : {std::pair{1.0, 2.0}, std::pair{0.5, 2.0}, std::pair{1.0, 0.0}, std::pair{0.5, 0.0}}) {
        const RadialProfile back =
            fracops::gek_inverse(fracops::gek_forward(phi, alpha, 0.5, lambda), alpha, 0.5, lambda);
        char name[64];
        std::snprintf(name, sizeof name, "gek_roundtrip_alpha%g_lambda%g", alpha, lambda);
        out.push_back(make_check(name, fracops::max_abs_diff(back, phi), 1e-5));
    }
    return out;
}

double rl_constant_error(int k, double expected) {
    double worst = 0.0;
    for (double s : {-0.5, 0.0, 0.3}) {
        const double got = fracops::rl_integral([k](double t) { return std::pow(1.0 - t * t, k); }, -2.0 * k, s);
        worst = std::max(worst, std::fabs(got - expected));
    }
    return worst;
}

std::vector<CheckResult> rl_suite() {
    std::vector<CheckResult> out;
    double e = 0.0;
    for (double s : {-1.0, -0.3, 0.2, 1.0})
        e = std::max(e, std::fabs(fracops::rl_integral([](double) { return 1.0; }, 1.0, s) - (s + 1.0)));
    out.push_back(make_check("rl_unit_order_one", e, 1e-12));

    e = 0.0;
    for (double s : {-0.7, 0.0, 0.9})
        e = std::max(e, std::fabs(fracops::rl_integral([](double t) { return std::cos(t); }, 0.0, s) - std::cos(s)));
    out.push_back(make_check("rl_order_zero_identity", e, 1e-15));

    for (double alpha : {0.5, 1.5, -0.5}) {
        const double beta = 2.0;
        const double c = specialfn::gamma(beta + 1.0) / specialfn::gamma(alpha + beta + 1.0);
        e = 0.0;
        for (double s : {-0.5, 0.0, 0.6}) {
            const double got = fracops::rl_integral([&](double t) { return std::pow(1.0 + t, beta); }, alpha, s);
            e = std::max(e, std::fabs(got - c * std::pow(1.0 + s, alpha + beta)));
        }
        char name[64];
        std::snprintf(name, sizeof name, "rl_power_alpha%g", alpha);
        out.push_back(make_check(name, e, alpha > 0.0 ? 1e-12 : 1e-6));
    }

    // (d/dh)^(2k) (1 - h^2)^k = (-1)^k (2k)!
    for (int k = 0; k <= 2; ++k) {
        const double expected = (k % 2 ? -1.0 : 1.0) * specialfn::gamma(2.0 * k + 1.0);
        out.push_back(make_check("rl_constant_k" + std::to_string(k), rl_constant_error(k, expected), 1e-8));
    }

    // sampled form on a grid covering [-1, 1]
    const RadialProfile u(-1.0, 0.01, [] {
        std::vector<double> v(201);
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double t = -1.0 + 0.01 * j;
            v[j] = (1.0 - t * t) * (1.0 - t * t);
        }
        return v;
    }());
    e = 0.0;
    for (double s : {-0.5, 0.0, 0.3}) e = std::max(e, std::fabs(fracops::rl_integral(u, -4.0, s) - 24.0));
    out.push_back(make_check("rl_constant_sampled_k2", e, 1e-6));
    return out;
}

// ---------------------------------------------------------------- bessel

double bessel_recurrence_residual(int samples) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        // deterministic low-discrepancy sample of the (nu, x) rectangle
        const double a = std::fmod(0.5 + k * 0.6180339887498949, 1.0);
        const double b = std::fmod(0.5 + k * 0.7548776662466927, 1.0);
        const double nu = -0.9 + 8.9 * a;
        const double x = 0.2 + 29.8 * b;
        const double lhs = specialfn::bessel_j(nu - 1.0, x) + specialfn::bessel_j(nu + 1.0, x);
        const double rhs = 2.0 * nu / x * specialfn::bessel_j(nu, x);
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
    }
    return worst;
}

double bessel_closed_form_error() {
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double x = 0.05 + (30.0 - 0.05) * k / 200.0;
        worst = std::max({worst, std::fabs(specialfn::bessel_j(0.5, x) - j_half(x)),
                          std::fabs(specialfn::bessel_j(-0.5, x) - j_mhalf(x)),
                          std::fabs(specialfn::bessel_j(1.5, x) - j_3half(x))});
        const double scale = std::max(1.0, i_mhalf(x));
        worst = std::max({worst, std::fabs(specialfn::bessel_i(0.5, x) - i_half(x)) / scale,
                          std::fabs(specialfn::bessel_i(-0.5, x) - i_mhalf(x)) / scale,
                          std::fabs(specialfn::bessel_i(1.5, x) - i_3half(x)) / scale});
    }
    return worst;
}

std::vector<CheckResult> bessel_suite() {
    std::vector<CheckResult> out;
    const double g = specialfn::gamma(0.5);
    out.push_back(make_check("gamma_half_squared_minus_pi", std::fabs(g * g - kPi), 1e-12));
    out.push_back(make_check("gamma_5_minus_24", std::fabs(specialfn::gamma(5.0) - 24.0), 1e-12));
    bool pole = false;
    try {
        specialfn::gamma(0.0);
    } catch (const std::domain_error&) {
        pole = true;
    }
    out.push_back(make_check("gamma_pole_rejected", pole ? 0.0 : 1.0, 0.0));
    out.push_back(make_check("bessel_j0_at_0", std::fabs(specialfn::bessel_j(0.0, 0.0) - 1.0), 1e-15));
    out.push_back(make_check("bessel_i0_at_0", std::fabs(specialfn::bessel_i(0.0, 0.0) - 1.0), 1e-15));
    out.push_back(make_check("bessel_j_half_at_1", std::fabs(specialfn::bessel_j(0.5, 1.0) - j_half(1.0)), 1e-12));
    out.push_back(make_check("bessel_recurrence_200", bessel_recurrence_residual(200), 1e-10));
    out.push_back(make_check("bessel_half_integer_closed_forms", bessel_closed_form_error(), 1e-10));
    return out;
}

// ---------------------------------------------------------------- 3-D pipeline

ScalarField reference_radial_bump() { return make_phantom(PhantomKind::radial_bump, {Bump{{0.0, 0.0, 0.0}, 0.8, 3, 1.0}}); }

ScalarField reference_shifted_bump() {
    return make_phantom(PhantomKind::shifted_bump, {Bump{{0.3, 0.0, 0.0}, 0.4, 3, 1.0}});
}

double identity_deviation(const Resolution& res) {
    const ScalarField f = reference_radial_bump();
    const SphereGrid sphere = build_sphere_grid(res.n_polar, res.n_azimuth);
    const CylinderData phi = sphmean::forward_scan(f, sphere, TimeGrid(res.nt));
    recon::ReconConfig cfg;
    cfg.G = res.G;
    return recon::identity_check(f, phi, cfg).max_rel;
}

recon::Metrics fpr_roundtrip(const ScalarField& f, const Resolution& res, recon::Variant variant) {
    const SphereGrid sphere = build_sphere_grid(res.n_polar, res.n_azimuth);
    const CylinderData phi = sphmean::forward_scan(f, sphere, TimeGrid(res.nt));
    recon::ReconConfig cfg;
    cfg.G = res.G;
    cfg.variant = variant;
    cfg.region_radius = f.support_radius();
    return recon::interior_error(recon::fpr_invert(phi, cfg), f, cfg);
}

HalfData radial_half_data(std::size_t nt) {
    const RadialProfile F0 = sphmean::radial_scan(radial_p3, 0.8, TimeGrid(nt));
    const double step = 0.005;
    const std::size_t count = 151;  // r in [0.05, 0.8]
    const RadialProfile in = recon::radial_invert(F0, recon::Branch::inner, 0.05, step, count);
    const RadialProfile out = recon::radial_invert(F0, recon::Branch::outer, 0.05, step, count);
    HalfData h;
    for (std::size_t k = 0; k < count; ++k) {
        const double r = in.node(k);
        h.inner = std::max(h.inner, std::fabs(in.values[k] - radial_p3(r)));
        h.outer = std::max(h.outer, std::fabs(out.values[k] - radial_p3(r)));
        h.agree = std::max(h.agree, std::fabs(in.values[k] - out.values[k]));
    }
    return h;
}

double forward_crosscheck(int exponent, const Resolution& res) {
    const ScalarField f = make_phantom(PhantomKind::radial_bump, {Bump{{0.0, 0.0, 0.0}, 0.8, exponent, 1.0}});
    return sphmean::crosscheck_radial(f, build_sphere_grid(res.n_polar, res.n_azimuth), TimeGrid(res.nt));
}

RadialConsistency radial_consistency(const Resolution& res) {
    const ScalarField f = reference_radial_bump();
    const SphereGrid sphere = build_sphere_grid(res.n_polar, res.n_azimuth);
    const TimeGrid times(res.nt);
    const CylinderData phi = sphmean::forward_scan(f, sphere, times);
    recon::ReconConfig cfg;
    cfg.G = res.G;
    cfg.region_radius = 0.8;
    const VolumeGrid rec = recon::fpr_invert(phi, cfg);
    const RadialProfile F0 = sphmean::radial_scan(radial_p3, 0.8, times);
    RadialConsistency c;
    for (const auto& [r, avg] : recon::radial_average(rec, 0.8)) {
        if (r < 0.05 || r > 0.75) continue;
        const double one_d = recon::radial_invert(F0, recon::Branch::inner, r, 1.0, 1).values[0];
        c.deviation = std::max(c.deviation, std::fabs(avg - one_d));
        c.error_1d = std::max(c.error_1d, std::fabs(one_d - radial_p3(r)));
        c.error_3d = std::max(c.error_3d, std::fabs(avg - radial_p3(r)));
    }
    return c;
}

std::vector<CheckResult> identity_suite() {
    std::vector<CheckResult> out;
    out.push_back(make_check("identity_constant_n3", std::fabs(recon::identity_constant(3) - 0.5), 1e-15));
    out.push_back(make_check("inversion_constant_n3", std::fabs(recon::inversion_constant(3) + 2.0), 1e-14));
    const Resolution coarse = Resolution{}.halved();
    const CylinderData zero(build_sphere_grid(coarse.n_polar, coarse.n_azimuth), TimeGrid(coarse.nt));
    recon::ReconConfig cfg;
    cfg.G = coarse.G;
    const auto z = recon::identity_check(ScalarField::radial([](double) { return 0.0; }, 0.5), zero, cfg);
    out.push_back(make_check("identity_zero_field", z.max_rel, 0.0));
    out.push_back(make_check("identity_max_rel_reference", identity_deviation(Resolution{}), 0.02));
    return out;
}

std::vector<CheckResult> radial_suite() {
    std::vector<CheckResult> out;
    // indicator of r <= 0.8 at t = 0.5: (0.64 - 0.25) / (4 * 0.5)
    const double indicator = sphmean::radial_forward([](double) { return 1.0; }, 0.8, 0.5);
    out.push_back(make_check("radial_indicator_t0.5", std::fabs(indicator - 0.195), 1e-12));
    // polynomial antiderivative of r (1 - r^2/0.64)^3 on [0.4, 0.8]
    const double t = 0.6;
    auto antider = [](double r) { return -0.64 / 8.0 * std::pow(1.0 - r * r / 0.64, 4); };
    const double closed = (antider(0.8) - antider(1.0 - t)) / (2.0 * t);
    out.push_back(make_check("radial_closed_form_t0.6", std::fabs(sphmean::radial_forward(radial_p3, 0.8, t) - closed),
                             1e-12));
    const HalfData h = radial_half_data(2000);
    out.push_back(make_check("radial_half_data_inner", h.inner, 1e-3));
    out.push_back(make_check("radial_half_data_outer", h.outer, 1e-3));
    out.push_back(make_check("radial_half_data_agree", h.agree, 2e-3));
    out.push_back(make_check("radial_forward_crosscheck_p6", forward_crosscheck(6, Resolution{}), 1e-8));
    bool refused = false;
    try {
        sphmean::crosscheck_radial(reference_shifted_bump(), build_sphere_grid(4, 8), TimeGrid(8));
    } catch (const std::invalid_argument&) {
        refused = true;
    }
    out.push_back(make_check("radial_crosscheck_refuses_nonradial", refused ? 0.0 : 1.0, 0.0));
    return out;
}

// ---------------------------------------------------------------- EPD

namespace {

// Smooth test field for pointwise EPD studies; inside its support every
// spherical mean used below is a polynomial, integrated exactly by the rule.
ScalarField epd_field() { return reference_radial_bump(); }

const SphereGrid& epd_sphere() {
    static const SphereGrid sphere = build_sphere_grid(16, 32);
    return sphere;
}

}  // namespace

double epd_reduction_error(double alpha) {
    const ScalarField f = epd_field();
    const epd::EPDSpec spec{alpha, 0.0, 3};
    const Point3 x{0.1, 0.2, 0.0};
    const TimeGrid times(40, 1.0);
    const RadialProfile a = epd::epd_solve(f, spec, x, times, epd_sphere());
    const RadialProfile b = epd::epd_solve_ek(f, spec, x, times, epd_sphere());
    double e = fracops::max_abs_diff(a, b);
    // sampled-profile path
    const RadialProfile phi =
        RadialProfile::sample(times, [&](double t) { return sphmean::spherical_mean(f, x, t, epd_sphere()); });
    RadialProfile c = fracops::ek_continue(phi, alpha, spec.eta());
    for (double& v : c.values) v *= spec.prefactor();
    e = std::max(e, fracops::max_abs_diff(epd::apply_solution_operator(phi, spec), c));
    return e;
}

InitialDeparture epd_initial_departure(double alpha, double lambda) {
    const ScalarField f = epd_field();
    const epd::EPDSpec spec{alpha, lambda, 3};
    const Point3 x{0.1, 0.2, 0.05};
    InitialDeparture d;
    for (std::size_t k = 0; k < 3; ++k) d.error[k] = std::fabs(epd::epd_value(f, spec, x, d.t[k], epd_sphere()) - f(x));
    for (std::size_t k = 0; k < 2; ++k) d.order[k] = std::log2(d.error[k] / d.error[k + 1]);
    return d;
}

ResidualStudy epd_residual_study(double alpha, double lambda) {
    const ScalarField f = epd_field();
    const epd::EPDSpec spec{alpha, lambda, 3};
    auto residual = [&](int nx, std::size_t nt) {
        epd::SpaceTimeBox box;
        box.center = {0.1, 0.0, 0.0};
        box.half_width = 0.1;
        box.nx = nx;
        box.times = TimeGrid(nt, 0.5);
        const epd::SpaceTimeField u = epd::sample_solution(f, spec, box, epd_sphere());
        return epd::max_residual(epd::pde_residual(u, spec), 0.1);
    };
    ResidualStudy s;
    s.coarse = residual(5, 10);
    s.fine = residual(9, 20);
    s.order = std::log2(s.coarse / s.fine);
    return s;
}

double epd_roundtrip_error(double alpha, double lambda, const Resolution& res) {
    const ScalarField f = reference_radial_bump();
    const epd::EPDSpec spec{alpha, lambda, 3};
    const SphereGrid sphere = build_sphere_grid(res.n_polar, res.n_azimuth);
    const CylinderData trace = epd::epd_trace(f, spec, sphere, TimeGrid(res.nt));
    recon::ReconConfig cfg;
    cfg.G = res.G;
    cfg.region_radius = f.support_radius();
    return recon::interior_error(epd::epd_invert(trace, spec, cfg), f, cfg).l2_rel;
}

double epd_resolve_consistency(double alpha, double lambda, const Resolution& res) {
    const ScalarField f = reference_radial_bump();
    const epd::EPDSpec spec{alpha, lambda, 3};
    const SphereGrid sphere = build_sphere_grid(res.n_polar, res.n_azimuth);
    const TimeGrid times(res.nt);
    const CylinderData trace = epd::epd_trace(f, spec, sphere, times);
    recon::ReconConfig cfg;
    cfg.G = res.G;
    const epd::Resolution solved = epd::epd_resolve(trace, spec, cfg);
    std::vector<double> got, want;
    const std::size_t stride = std::max<std::size_t>(1, trace.rows() / 5);
    for (std::size_t i = 0; i < trace.rows(); i += stride) {
        const RadialProfile row = solved.profile(trace.sphere.nodes[i], times);
        got.insert(got.end(), row.values.begin(), row.values.end());
        const auto ref = trace.row(i);
        want.insert(want.end(), ref.begin(), ref.end());
    }
    return relative_l2(got, want);
}

std::vector<CheckResult> epd_suite() {
    std::vector<CheckResult> out;
    for (double alpha : {1.0, 0.5})
        out.push_back(make_check("epd_lambda0_reduction_alpha" + std::string(alpha == 1.0 ? "1" : "0.5"),
                                 epd_reduction_error(alpha), 1e-9));

    for (auto [alpha, lambda] : {std::pair{1.0, 0.0}, std::pair{1.0, 2.0}, std::pair{0.5, 0.0}}) {
        char tag[64];
        std::snprintf(tag, sizeof tag, "alpha%g_lambda%g", alpha, lambda);
        const InitialDeparture d = epd_initial_departure(alpha, lambda);
        const double worst = std::max(std::fabs(d.order[0] - 2.0), std::fabs(d.order[1] - 2.0));
        out.push_back(make_check(std::string("epd_initial_order_dev_") + tag, worst, 0.1));
    }

    for (auto [alpha, lambda] : {std::pair{1.0, 0.0}, std::pair{1.0, 2.0}}) {
        char tag[64];
        std::snprintf(tag, sizeof tag, "alpha%g_lambda%g", alpha, lambda);
        const ResidualStudy s = epd_residual_study(alpha, lambda);
        out.push_back(make_check(std::string("epd_residual_order_deficit_") + tag, 2.0 - s.order, 0.3));
    }

    // constant solution: all derivative terms vanish
    epd::SpaceTimeBox box;
    box.nx = 4;
    box.times = TimeGrid(6, 0.6);
    epd::SpaceTimeField u(box);
    std::fill(u.values.begin(), u.values.end(), 3.0);
    out.push_back(make_check("epd_residual_constant", epd::max_residual(epd::pde_residual(u, {1.0, 0.0, 3}), 0.0), 0.0));

    double ball = 0.0;
    for (double t : {0.1, 0.3, 0.5})
        ball = std::max(ball, epd::ball_average_deviation(epd_field(), {0.1, 0.0, 0.2}, t, build_sphere_grid(24, 48)));
    out.push_back(make_check("epd_ball_average_alpha1", ball, 1e-10));

    const Resolution reference{};
    for (auto [alpha, lambda] : {std::pair{1.0, 0.0}, std::pair{1.0, 2.0}}) {
        char tag[64];
        std::snprintf(tag, sizeof tag, "alpha%g_lambda%g", alpha, lambda);
        out.push_back(make_check(std::string("epd_roundtrip_l2_") + tag, epd_roundtrip_error(alpha, lambda, reference),
                                 0.05));
    }
    return out;
}

}  // namespace smt::checks
