#include "smt/sphmean.hpp"

#include "smt/parallel.hpp"
#include "smt/quadrature.hpp"
#include "smt/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smt::sphmean {

double spherical_mean(const ScalarField& f, const Point3& center, double t, const SphereGrid& sphere) {
    double sum = 0.0;
    for (std::size_t i = 0; i < sphere.size(); ++i) sum += sphere.weights[i] * f(center - t * sphere.nodes[i]);
    return sum;
}

CylinderData forward_scan(const ScalarField& f, const SphereGrid& sphere, const TimeGrid& times) {
    return forward_scan(f, sphere, sphere, times);
}

CylinderData forward_scan(const ScalarField& f, const SphereGrid& detectors, const SphereGrid& rule,
                          const TimeGrid& times) {
    CylinderData data(detectors, times);
    const double rho = f.support_radius();
    const double dt = times.step();
    const long last = static_cast<long>(times.count) - 1;
    parallel_for(detectors.size(), [&](std::size_t i) {
        const Point3& theta = detectors.nodes[i];
        auto row = data.row(i);
        const double c = dot(theta, theta) - rho * rho;
        // Only times where theta - t sigma lies in the support ball contribute;
        // skipping the rest leaves each per-time sum unchanged.
        for (std::size_t k = 0; k < rule.size(); ++k) {
            const Point3& sigma = rule.nodes[k];
            const double b = dot(sigma, theta);
            const double disc = b * b - c;
            if (disc <= 0.0) continue;
            const double root = std::sqrt(disc);
            const double t_lo = b - root, t_hi = b + root;
            if (t_hi <= 0.0) continue;
            const long j_lo = std::max(0L, static_cast<long>(std::floor(t_lo / dt - 0.5)));
            const long j_hi = std::min(last, static_cast<long>(std::ceil(t_hi / dt - 0.5)));
            const double w = rule.weights[k];
            for (long j = j_lo; j <= j_hi; ++j) {
                const double t = times.node(static_cast<std::size_t>(j));
                row[static_cast<std::size_t>(j)] += w * f(theta - t * sigma);
            }
        }
    });
    return data;
}

double radial_forward(const std::function<double(double)>& f0, double rho, double t, int n, std::size_t nodes) {
    if (!(t > 0.0 && t < 2.0)) throw std::out_of_range("radial_forward: t must lie in (0, 2)");
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("radial_forward: dimension must be odd and >= 3");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("radial_forward: support radius must lie in (0, 1)");
    const double lo = std::fabs(1.0 - t);
    const double hi = std::min(1.0 + t, rho);
    if (lo >= hi) return 0.0;
    using specialfn::gamma;
    const double constant = gamma(0.5 * n) / (std::sqrt(specialfn::kPi) * gamma(0.5 * (n - 1)));
    const int power = n - 3;
    // a^(n-3) is a polynomial in r for odd n, so Gauss-Legendre suffices
    const QuadratureRule rule = gauss_legendre(nodes, lo, hi);
    const double integral = rule.integrate([&](double r) {
        double v = f0(r) * r;
        if (power > 0) {
            const double a2 = (r * r - (1.0 - t) * (1.0 - t)) * ((1.0 + t) * (1.0 + t) - r * r) / 16.0;
            for (int k = 0; k < power / 2; ++k) v *= a2;
        }
        return v;
    });
    return constant * std::pow(2.0 / t, power) / t * integral;
}

double radial_forward(const ScalarField& f, double t, int n, std::size_t nodes) {
    if (!f.is_radial()) throw std::invalid_argument("radial_forward: field is not radial");
    return radial_forward([&](double r) { return f.radial_value(r); }, std::min(f.support_radius(), 1.0 - 1e-15),
                          t, n, nodes);
}

double radial_forward(const RadialProfile& f0, double rho, double t, int n, std::size_t nodes) {
    return radial_forward([&](double r) { return r <= f0.back() ? interp_profile(f0, r) : 0.0; }, rho, t, n, nodes);
}

RadialProfile radial_scan(const std::function<double(double)>& f0, double rho, const TimeGrid& times, int n,
                          std::size_t nodes) {
    return RadialProfile::sample(times, [&](double t) { return radial_forward(f0, rho, t, n, nodes); });
}

double crosscheck_radial(const ScalarField& f, const SphereGrid& sphere, const TimeGrid& times) {
    if (!f.is_radial()) throw std::invalid_argument("crosscheck_radial: field is not radial");
    const CylinderData scan = forward_scan(f, sphere, times);
    std::vector<double> reference(times.count);
    for (std::size_t j = 0; j < times.count; ++j) reference[j] = radial_forward(f, times.node(j));
    double worst = 0.0;
    for (std::size_t i = 0; i < scan.rows(); ++i)
        for (std::size_t j = 0; j < times.count; ++j)
            worst = std::max(worst, std::fabs(scan.at(i, j) - reference[j]));
    return worst;
}

}  // namespace smt::sphmean
