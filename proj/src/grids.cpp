#include "smt/grids.hpp"

#include "smt/parallel.hpp"
#include "smt/quadrature.hpp"
#include "smt/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace smt {

SphereGrid build_sphere_grid(int n_polar, int n_azimuth) {
    if (n_polar < 2) throw std::invalid_argument("build_sphere_grid: n_polar must be >= 2");
    if (n_azimuth < 4) throw std::invalid_argument("build_sphere_grid: n_azimuth must be >= 4");
    const QuadratureRule gl = gauss_legendre(static_cast<std::size_t>(n_polar));
    SphereGrid s;
    s.n_polar = n_polar;
    s.n_azimuth = n_azimuth;
    s.degree = std::min(2 * n_polar - 1, n_azimuth - 1);
    s.nodes.reserve(static_cast<std::size_t>(n_polar) * n_azimuth);
    s.weights.reserve(s.nodes.capacity());
    for (int p = 0; p < n_polar; ++p) {
        const double z = gl.nodes[p];
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int a = 0; a < n_azimuth; ++a) {
            const double phi = 2.0 * specialfn::kPi * (a + 0.5) / n_azimuth;
            Point3 n{rho * std::cos(phi), rho * std::sin(phi), z};
            const double len = norm(n);
            s.nodes.push_back((1.0 / len) * n);
            s.weights.push_back(0.5 * gl.weights[p] / n_azimuth);
        }
    }
    const double total = std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
    for (double& w : s.weights) w /= total;
    return s;
}

TimeGrid::TimeGrid(std::size_t count_, double t_max_) : count(count_), t_max(t_max_) {
    if (count < 4) throw std::invalid_argument("TimeGrid: need at least 4 samples");
    if (!(t_max > 0.0)) throw std::invalid_argument("TimeGrid: t_max must be positive");
}

RadialProfile::RadialProfile(double start_, double step_, std::vector<double> values_)
    : start(start_), step(step_), values(std::move(values_)) {
    if (!(step > 0.0)) throw std::invalid_argument("RadialProfile: step must be positive");
}

RadialProfile RadialProfile::on(const TimeGrid& grid, std::vector<double> values) {
    if (values.size() != grid.count) throw std::invalid_argument("RadialProfile::on: size mismatch");
    return RadialProfile(grid.first(), grid.step(), std::move(values));
}

double interp_profile(const RadialProfile& p, double r) {
    const std::size_t n = p.size();
    if (n < 4) throw std::invalid_argument("interp_profile: need at least 4 samples");
    const double lowest = p.start > 0.0 ? 0.0 : p.start - 0.5 * p.step;
    if (r < lowest || r > p.back() + 0.5 * p.step)
        throw std::out_of_range("interp_profile: r = " + std::to_string(r) + " outside the profile");
    const double u = (r - p.start) / p.step;
    // window [k, k+3] with the evaluation point in its middle cell when possible
    long k = static_cast<long>(std::floor(u)) - 1;
    k = std::clamp<long>(k, 0, static_cast<long>(n) - 4);
    const double s = u - static_cast<double>(k);  // position relative to node k, in steps
    const double* y = p.values.data() + k;
    // Lagrange basis on nodes 0,1,2,3
    const double l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    const double l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    const double l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    const double l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    return l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3];
}

CylinderData::CylinderData(SphereGrid sphere_, TimeGrid times_)
    : sphere(std::move(sphere_)), times(times_), samples(sphere.size() * times.count, 0.0) {}

RadialProfile CylinderData::row_profile(std::size_t i) const {
    auto r = row(i);
    return RadialProfile::on(times, std::vector<double>(r.begin(), r.end()));
}

void CylinderData::set_row(std::size_t i, const RadialProfile& p) {
    if (p.size() != times.count) throw std::invalid_argument("CylinderData::set_row: size mismatch");
    std::copy(p.values.begin(), p.values.end(), row(i).begin());
}

double interp_time(std::span<const double> y, const TimeGrid& times, double t) {
    const std::size_t n = y.size();
    if (n != times.count || n < 4) throw std::invalid_argument("interp_time: row does not match time grid");
    const double dt = times.step();
    const double u = t / dt - 0.5;  // fractional node index
    if (u < 0.0) {
        if (t > 0.0 && y[0] == 0.0 && y[1] == 0.0) return 0.0;
        throw std::out_of_range("interp_time: t = " + std::to_string(t) + " below the first sample");
    }
    if (u > static_cast<double>(n - 1)) {
        if (t <= times.t_max && y[n - 1] == 0.0 && y[n - 2] == 0.0) return 0.0;
        throw std::out_of_range("interp_time: t = " + std::to_string(t) + " beyond the last sample");
    }
    const double nearest = std::round(u);
    if (std::fabs(u - nearest) <= 1e-12 * std::max(1.0, u)) return y[static_cast<std::size_t>(nearest)];
    std::size_t k = static_cast<std::size_t>(u);
    if (k >= n - 1) k = n - 2;
    const double s = u - static_cast<double>(k);
    if (s == 0.0) return y[k];
    // quadratic through the three nearest samples in the end cells
    if (k == 0) return 0.5 * (1.0 - s) * (2.0 - s) * y[0] + s * (2.0 - s) * y[1] - 0.5 * s * (1.0 - s) * y[2];
    if (k == n - 2) return 0.5 * s * (s - 1.0) * y[k - 1] + (1.0 - s * s) * y[k] + 0.5 * s * (s + 1.0) * y[k + 1];
    const double p0 = y[k - 1], p1 = y[k], p2 = y[k + 1], p3 = y[k + 2];
    return p1 + 0.5 * s *
                    ((p2 - p0) + s * ((2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) + s * (3.0 * (p1 - p2) + p3 - p0)));
}

double interp_time(const CylinderData& data, std::size_t i, double t) {
    if (i >= data.rows()) throw std::out_of_range("interp_time: row index out of range");
    return interp_time(data.row(i), data.times, t);
}

VolumeGrid::VolumeGrid(int G_, double L_) : G(G_), L(L_) {
    if (G < 8) throw std::invalid_argument("VolumeGrid: G must be >= 8");
    if (!(L > 0.0)) throw std::invalid_argument("VolumeGrid: extent must be positive");
    values.assign(static_cast<std::size_t>(G) * G * G, 0.0);
}

VolumeGrid sample_to_grid(const ScalarField& f, int G, double L) {
    VolumeGrid v(G, L);
    parallel_for(static_cast<std::size_t>(G), [&](std::size_t kk) {
        const int k = static_cast<int>(kk);
        for (int j = 0; j < G; ++j)
            for (int i = 0; i < G; ++i) v.at(i, j, k) = f(v.point(i, j, k));
    });
    return v;
}

ScalarField grid_to_field(const VolumeGrid& v) {
    auto grid = std::make_shared<const VolumeGrid>(v);
    double reach = 0.0;
    for (int k = 0; k < v.G; ++k)
        for (int j = 0; j < v.G; ++j)
            for (int i = 0; i < v.G; ++i)
                if (v.at(i, j, k) != 0.0) reach = std::max(reach, norm(v.point(i, j, k)));
    const double support = reach > 0.0 ? reach + std::sqrt(3.0) * v.h() : v.h();

    return ScalarField(
        [grid](const Point3& x) {
            const VolumeGrid& g = *grid;
            const double h = g.h();
            int base[3];
            double frac[3];
            for (int a = 0; a < 3; ++a) {
                if (x[a] < -g.L || x[a] > g.L) return 0.0;
                double u = (x[a] + g.L) / h - 0.5;
                u = std::clamp(u, 0.0, static_cast<double>(g.G - 1));
                int b = std::min(static_cast<int>(u), g.G - 2);
                base[a] = b;
                frac[a] = u - b;
            }
            double sum = 0.0;
            for (int c = 0; c < 8; ++c) {
                const int di = c & 1, dj = (c >> 1) & 1, dk = (c >> 2) & 1;
                const double w = (di ? frac[0] : 1.0 - frac[0]) * (dj ? frac[1] : 1.0 - frac[1]) *
                                 (dk ? frac[2] : 1.0 - frac[2]);
                if (w != 0.0) sum += w * g.at(base[0] + di, base[1] + dj, base[2] + dk);
            }
            return sum;
        },
        support);
}

}  // namespace smt
