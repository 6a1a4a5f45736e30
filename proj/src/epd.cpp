#include "smt/epd.hpp"

#include "smt/parallel.hpp"
#include "smt/quadrature.hpp"
#include "smt/specialfn.hpp"
#include "smt/sphmean.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace smt::epd {

void EPDSpec::validate() const {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("EPD: dimension must be odd and >= 3");
    if (!(lambda >= 0.0)) throw std::invalid_argument("EPD: lambda must be >= 0");
    const double threshold = 0.5 * (1 - n);
    if (!(alpha >= threshold))
        throw std::invalid_argument("EPD: alpha = " + std::to_string(alpha) + " is below the threshold " +
                                    std::to_string(threshold));
}

double EPDSpec::prefactor() const { return specialfn::gamma(alpha + 0.5 * n) / specialfn::gamma(0.5 * n); }

RadialProfile apply_solution_operator(const RadialProfile& phi, const EPDSpec& spec, std::size_t nodes) {
    spec.validate();
    if (spec.alpha == 0.0 && spec.lambda == 0.0) return phi;
    RadialProfile u = fracops::gek_forward(phi, spec.alpha, spec.eta(), spec.lambda, nodes);
    const double c = spec.prefactor();
    for (double& v : u.values) v *= c;
    return u;
}

double epd_value(const ScalarField& f, const EPDSpec& spec, const Point3& x, double t, const SphereGrid& sphere,
                 std::size_t nodes) {
    spec.validate();
    if (!(t > 0.0)) throw std::invalid_argument("epd_value: t must be positive");
    auto phi = [&](double s) { return sphmean::spherical_mean(f, x, s, sphere); };
    if (spec.alpha > 0.0) return spec.prefactor() * fracops::gek_value(phi, t, spec.alpha, spec.eta(), spec.lambda, nodes);
    if (spec.alpha < 0.0) throw std::invalid_argument("epd_value: negative alpha needs a sampled profile (epd_solve)");
    if (spec.lambda == 0.0) return phi(t);
    // order zero keeps the k >= 1 terms of the Bessel series
    const QuadratureRule rule = gauss_jacobi_unit(nodes, 0.0, spec.eta());
    const double z = 0.5 * spec.lambda * t;
    const double tail = rule.integrate([&](double u) {
        return specialfn::ek_kernel_j(2.0, spec.lambda * t * std::sqrt(1.0 - u)) * phi(t * std::sqrt(u));
    });
    return phi(t) - z * z * tail;
}

RadialProfile epd_solve(const ScalarField& f, const EPDSpec& spec, const Point3& x, const TimeGrid& times,
                        const SphereGrid& sphere, std::size_t nodes) {
    spec.validate();
    if (spec.alpha < 0.0) {
        const RadialProfile phi =
            RadialProfile::sample(times, [&](double t) { return sphmean::spherical_mean(f, x, t, sphere); });
        return apply_solution_operator(phi, spec, nodes);
    }
    std::vector<double> values(times.count);
    parallel_for(times.count, [&](std::size_t j) { values[j] = epd_value(f, spec, x, times.node(j), sphere, nodes); });
    return RadialProfile::on(times, std::move(values));
}

RadialProfile epd_solve_ek(const ScalarField& f, const EPDSpec& spec, const Point3& x, const TimeGrid& times,
                           const SphereGrid& sphere, std::size_t nodes) {
    spec.validate();
    if (spec.lambda != 0.0) throw std::invalid_argument("epd_solve_ek: lambda must be 0");
    auto phi = [&](double s) { return sphmean::spherical_mean(f, x, s, sphere); };
    const double c = spec.prefactor();
    if (spec.alpha > 0.0) {
        std::vector<double> values(times.count);
        parallel_for(times.count, [&](std::size_t j) {
            values[j] = c * fracops::ek_value(phi, times.node(j), spec.alpha, spec.eta(), nodes);
        });
        return RadialProfile::on(times, std::move(values));
    }
    RadialProfile u = fracops::ek_continue(RadialProfile::sample(times, phi), spec.alpha, spec.eta(), -1, nodes);
    for (double& v : u.values) v *= c;
    return u;
}

CylinderData epd_trace(const ScalarField& f, const EPDSpec& spec, const SphereGrid& sphere, const TimeGrid& times,
                       std::size_t nodes) {
    spec.validate();
    CylinderData scan = sphmean::forward_scan(f, sphere, times);
    parallel_for(scan.rows(), [&](std::size_t i) {
        scan.set_row(i, apply_solution_operator(scan.row_profile(i), spec, nodes));
    });
    return scan;
}

Point3 SpaceTimeBox::point(int i, int j, int k) const {
    const double step = h();
    return {center[0] - half_width + i * step, center[1] - half_width + j * step, center[2] - half_width + k * step};
}

SpaceTimeField::SpaceTimeField(SpaceTimeBox b) : box(std::move(b)) {
    if (box.nx < 3) throw std::invalid_argument("SpaceTimeBox: need at least 3 points per axis");
    if (box.times.count < 3) throw std::invalid_argument("SpaceTimeBox: need at least 3 times");
    const auto nx = static_cast<std::size_t>(box.nx);
    values.assign(nx * nx * nx * box.times.count, 0.0);
}

std::size_t SpaceTimeField::index(int i, int j, int k, std::size_t l) const {
    const auto nx = static_cast<std::size_t>(box.nx);
    return ((static_cast<std::size_t>(k) * nx + static_cast<std::size_t>(j)) * nx + static_cast<std::size_t>(i)) *
               box.times.count +
           l;
}

SpaceTimeField sample_solution(const ScalarField& f, const EPDSpec& spec, const SpaceTimeBox& box,
                               const SphereGrid& sphere, std::size_t nodes) {
    SpaceTimeField u(box);
    const int nx = box.nx;
    const std::size_t nt = box.times.count;
    parallel_for(static_cast<std::size_t>(nx) * nx * nx * nt, [&](std::size_t flat) {
        const std::size_t l = flat % nt;
        std::size_t rest = flat / nt;
        const int i = static_cast<int>(rest % nx);
        rest /= nx;
        const int j = static_cast<int>(rest % nx);
        const int k = static_cast<int>(rest / nx);
        u.at(i, j, k, l) = epd_value(f, spec, box.point(i, j, k), box.times.node(l), sphere, nodes);
    });
    return u;
}

SpaceTimeField pde_residual(const SpaceTimeField& u, const EPDSpec& spec) {
    spec.validate();
    SpaceTimeField r(u.box);
    const int nx = u.box.nx;
    const std::size_t nt = u.box.times.count;
    const double inv_h2 = 1.0 / (u.box.h() * u.box.h());
    const double dt = u.box.times.step();
    const double friction = spec.n + 2.0 * spec.alpha - 1.0;
    const double lambda2 = spec.lambda * spec.lambda;
    for (int k = 1; k < nx - 1; ++k)
        for (int j = 1; j < nx - 1; ++j)
            for (int i = 1; i < nx - 1; ++i)
                for (std::size_t l = 1; l + 1 < nt; ++l) {
                    const double c = u.at(i, j, k, l);
                    const double lap = (u.at(i + 1, j, k, l) + u.at(i - 1, j, k, l) + u.at(i, j + 1, k, l) +
                                        u.at(i, j - 1, k, l) + u.at(i, j, k + 1, l) + u.at(i, j, k - 1, l) - 6.0 * c) *
                                       inv_h2;
                    const double utt = (u.at(i, j, k, l + 1) - 2.0 * c + u.at(i, j, k, l - 1)) / (dt * dt);
                    const double ut = (u.at(i, j, k, l + 1) - u.at(i, j, k, l - 1)) / (2.0 * dt);
                    const double t = u.box.times.node(l);
                    r.at(i, j, k, l) = lap - utt - friction / t * ut - lambda2 * c;
                }
    return r;
}

double max_residual(const SpaceTimeField& residual, double t_min) {
    const int nx = residual.box.nx;
    const std::size_t nt = residual.box.times.count;
    double worst = 0.0;
    for (int k = 1; k < nx - 1; ++k)
        for (int j = 1; j < nx - 1; ++j)
            for (int i = 1; i < nx - 1; ++i)
                for (std::size_t l = 1; l + 1 < nt; ++l)
                    if (residual.box.times.node(l) >= t_min)
                        worst = std::max(worst, std::fabs(residual.at(i, j, k, l)));
    return worst;
}

CylinderData recover_means(const CylinderData& trace, const EPDSpec& spec, std::size_t nodes) {
    spec.validate();
    CylinderData phi(trace.sphere, trace.times);
    const double c = 1.0 / spec.prefactor();
    parallel_for(trace.rows(), [&](std::size_t i) {
        RadialProfile row = fracops::gek_inverse(trace.row_profile(i), spec.alpha, spec.eta(), spec.lambda, nodes);
        for (double& v : row.values) v *= c;
        phi.set_row(i, row);
    });
    return phi;
}

VolumeGrid epd_invert(const CylinderData& trace, const EPDSpec& spec, const recon::ReconConfig& cfg,
                      double* support_violation, std::size_t nodes) {
    if (spec.n != 3) throw std::invalid_argument("epd_invert: the discrete pipeline supports n = 3 only");
    const CylinderData phi = recover_means(trace, spec, nodes);
    double peak = 0.0, ends = 0.0;
    const std::size_t last = phi.cols() - 1;
    for (std::size_t i = 0; i < phi.rows(); ++i) {
        for (std::size_t j = 0; j <= last; ++j) peak = std::max(peak, std::fabs(phi.at(i, j)));
        ends = std::max({ends, std::fabs(phi.at(i, 0)), std::fabs(phi.at(i, last))});
    }
    const double violation = peak > 0.0 ? ends / peak : 0.0;
    if (support_violation) *support_violation = violation;
    if (violation > 1e-3)
        std::cerr << "epd invert: warning: recovered spherical means do not vanish at the ends of the time axis "
                     "(relative deviation "
                  << violation << "); the trace may not match alpha = " << spec.alpha << ", lambda = " << spec.lambda
                  << "\n";
    return recon::fpr_invert(phi, cfg);
}

double Resolution::operator()(const Point3& x, double t) const { return epd_value(field, spec, x, t, sphere); }

RadialProfile Resolution::profile(const Point3& x, const TimeGrid& times) const {
    const RadialProfile phi =
        RadialProfile::sample(times, [&](double t) { return sphmean::spherical_mean(field, x, t, sphere); });
    return apply_solution_operator(phi, spec);
}

Resolution epd_resolve(const CylinderData& trace, const EPDSpec& spec, const recon::ReconConfig& cfg) {
    VolumeGrid volume = epd_invert(trace, spec, cfg);
    ScalarField field = grid_to_field(volume);
    return Resolution{std::move(volume), std::move(field), spec, trace.sphere};
}

double ball_average_deviation(const ScalarField& f, const Point3& x, double t, const SphereGrid& sphere,
                              std::size_t radial_nodes) {
    const EPDSpec spec{1.0, 0.0, 3};
    const double u = epd_value(f, spec, x, t, sphere);
    const QuadratureRule rule = gauss_legendre(radial_nodes, 0.0, 1.0);
    const double ball = rule.integrate(
        [&](double s) { return 3.0 * s * s * (s > 0.0 ? sphmean::spherical_mean(f, x, t * s, sphere) : f(x)); });
    return std::fabs(u - ball);
}

}  // namespace smt::epd
