#include "smt/recon.hpp"

#include "smt/fracops.hpp"
#include "smt/parallel.hpp"
#include "smt/quadrature.hpp"
#include "smt/specialfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace smt::recon {

namespace {

constexpr double kPi = specialfn::kPi;

void require_three_dims(int n, const char* who) {
    if (n != 3) throw std::invalid_argument(std::string(who) + ": the discrete pipeline supports n = 3 only");
}

// Second t-derivative of a uniformly sampled row, five-point stencils.
std::vector<double> second_derivative(std::span<const double> y, double dt) {
    static const auto table = [] {
        std::array<std::array<double, 5>, 5> t{};
        const std::array<double, 5> x{0.0, 1.0, 2.0, 3.0, 4.0};
        for (int pos = 0; pos < 5; ++pos) {
            const auto w = fd_weights(static_cast<double>(pos), x, 2);
            std::copy(w.begin(), w.end(), t[pos].begin());
        }
        return t;
    }();
    const std::size_t n = y.size();
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t w = std::min(k >= 2 ? k - 2 : 0, n - 5);
        const auto& c = table[k - w];
        double d = 0.0;
        for (int i = 0; i < 5; ++i) d += c[i] * y[w + i];
        out[k] = d / (dt * dt);
    }
    return out;
}

bool in_metric_region(const VolumeGrid& v, int i, int j, int k, double radius) {
    const int lo = 2, hi = v.G - 3;
    if (i < lo || j < lo || k < lo || i > hi || j > hi || k > hi) return false;
    return norm(v.point(i, j, k)) <= radius;
}

// Sets voxels whose six neighbours are not all inside radius to zero.
void mask_stencil(VolumeGrid& v, double radius) {
    const double h = v.h();
    for (int k = 0; k < v.G; ++k)
        for (int j = 0; j < v.G; ++j)
            for (int i = 0; i < v.G; ++i)
                if (norm(v.point(i, j, k)) + h > radius) v.at(i, j, k) = 0.0;
}

}  // namespace

double backproject(const CylinderData& F, const Point3& x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < F.rows(); ++i) {
        const double t = norm(x - F.sphere.nodes[i]);
        sum += F.sphere.weights[i] * interp_time(F.row(i), F.times, t);
    }
    return sum;
}

double backprojection_radius(const TimeGrid& times) {
    return std::min(times.last() - 1.0, 1.0 - times.first()) - 1e-12;
}

VolumeGrid backproject_volume(const CylinderData& F, int G, double L, double region) {
    VolumeGrid v(G, L);
    const double radius = std::min(region, backprojection_radius(F.times));
    parallel_for(static_cast<std::size_t>(G) * G, [&](std::size_t jk) {
        const int j = static_cast<int>(jk % G), k = static_cast<int>(jk / G);
        for (int i = 0; i < G; ++i) {
            const Point3 x = v.point(i, j, k);
            if (norm(x) <= radius) v.at(i, j, k) = backproject(F, x);
        }
    });
    return v;
}

CylinderData weight_chain(const CylinderData& phi, int n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("weight_chain: dimension must be odd and >= 3");
    CylinderData out(phi.sphere, phi.times);
    parallel_for(phi.rows(), [&](std::size_t i) {
        RadialProfile row = fracops::times_power(phi.row_profile(i), n - 2.0);
        if (n > 3) row = fracops::op_D(row, n - 3);
        out.set_row(i, row);
    });
    return out;
}

VolumeGrid riesz2(const ScalarField& f, int G, double L, double target_radius) {
    const VolumeGrid samples = sample_to_grid(f, G, L);
    const double h = samples.h();
    const double cell = h * h * h;
    const double r_eq = std::cbrt(3.0 * cell / (4.0 * kPi));
    const double self = 2.0 * kPi * r_eq * r_eq;

    struct Source {
        double x, y, z, mass;
        std::size_t index;
    };
    std::vector<Source> sources;
    for (int k = 0; k < G; ++k)
        for (int j = 0; j < G; ++j)
            for (int i = 0; i < G; ++i)
                if (const double fv = samples.at(i, j, k); fv != 0.0) {
                    const Point3 p = samples.point(i, j, k);
                    sources.push_back({p[0], p[1], p[2], fv * cell, samples.index(i, j, k)});
                }

    VolumeGrid out(G, L);
    parallel_for(static_cast<std::size_t>(G) * G, [&](std::size_t jk) {
        const int j = static_cast<int>(jk % G), k = static_cast<int>(jk / G);
        for (int i = 0; i < G; ++i) {
            const Point3 x = out.point(i, j, k);
            if (norm(x) > target_radius) continue;
            const std::size_t me = out.index(i, j, k);
            double sum = samples.values[me] * self;
            for (const Source& s : sources) {
                if (s.index == me) continue;
                const double dx = x[0] - s.x, dy = x[1] - s.y, dz = x[2] - s.z;
                sum += s.mass / std::sqrt(dx * dx + dy * dy + dz * dz);
            }
            out.at(i, j, k) = sum / (4.0 * kPi);
        }
    });
    return out;
}

VolumeGrid laplacian(const VolumeGrid& v) {
    const int G = v.G;
    const double inv_h2 = 1.0 / (v.h() * v.h());
    VolumeGrid out(G, v.L);
    auto second = [&](int i, int j, int k, int axis) {
        std::array<int, 3> idx{i, j, k};
        int c = idx[axis];
        if (c == 0) c = 1;
        if (c == G - 1) c = G - 2;
        std::array<int, 3> lo = idx, mid = idx, hi = idx;
        lo[axis] = c - 1;
        mid[axis] = c;
        hi[axis] = c + 1;
        return v.at(lo[0], lo[1], lo[2]) - 2.0 * v.at(mid[0], mid[1], mid[2]) + v.at(hi[0], hi[1], hi[2]);
    };
    parallel_for(static_cast<std::size_t>(G), [&](std::size_t kk) {
        const int k = static_cast<int>(kk);
        for (int j = 0; j < G; ++j)
            for (int i = 0; i < G; ++i)
                out.at(i, j, k) = (second(i, j, k, 0) + second(i, j, k, 1) + second(i, j, k, 2)) * inv_h2;
    });
    return out;
}

double inversion_constant(int n) {
    require_three_dims(n, "inversion_constant");
    const double half = 0.5 * n;
    const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    const double c_n = sign / (4.0 * std::pow(kPi, half - 1.0) * specialfn::gamma(half));
    const double sphere_area = 2.0 * std::pow(kPi, half) / specialfn::gamma(half);
    return c_n * sphere_area;
}

double identity_constant(int n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("identity_constant: dimension must be odd and >= 3");
    const double sign = ((n - 3) / 2) % 2 == 0 ? 1.0 : -1.0;
    const double g = specialfn::gamma(0.5 * n);
    return 2.0 * sign * g * g / kPi;
}

VolumeGrid fpr_invert(const CylinderData& phi, const ReconConfig& cfg) {
    if (cfg.variant == Variant::laplacian_first) return fpr_invert_variant(phi, cfg);
    const double h = 2.0 * cfg.L / cfg.G;
    const double radius = std::min(cfg.region_radius + h, backprojection_radius(phi.times));
    const VolumeGrid g = backproject_volume(weight_chain(phi, 3), cfg.G, cfg.L, radius);
    VolumeGrid f = laplacian(g);
    const double c = inversion_constant(3);
    for (double& value : f.values) value *= c;
    mask_stencil(f, radius);
    return f;
}

VolumeGrid fpr_invert_variant(const CylinderData& phi, const ReconConfig& cfg) {
    CylinderData rows(phi.sphere, phi.times);
    const double dt = phi.times.step();
    parallel_for(phi.rows(), [&](std::size_t i) {
        const RadialProfile weighted = fracops::times_power(phi.row_profile(i), 1.0);
        const auto d2 = second_derivative(weighted.values, dt);
        std::copy(d2.begin(), d2.end(), rows.row(i).begin());
    });
    const double radius = std::min(cfg.region_radius, backprojection_radius(phi.times));
    VolumeGrid f = backproject_volume(rows, cfg.G, cfg.L, radius);
    const double c = inversion_constant(3);
    for (double& value : f.values) value *= c;
    return f;
}

Metrics compare_volumes(const VolumeGrid& a, const VolumeGrid& ref, double rho, const ReconConfig& cfg) {
    if (a.G != ref.G || a.L != ref.L) throw std::invalid_argument("compare_volumes: grids differ");
    if (cfg.L < rho + 4.0 * a.h())
        throw std::invalid_argument("interior metrics need L >= rho + 4h (L = " + std::to_string(cfg.L) + ")");
    Metrics m;
    double err2 = 0.0, ref2 = 0.0, ref_max = 0.0;
    for (int k = 0; k < a.G; ++k)
        for (int j = 0; j < a.G; ++j)
            for (int i = 0; i < a.G; ++i) {
                if (!in_metric_region(a, i, j, k, rho + cfg.margin)) continue;
                const double e = a.at(i, j, k) - ref.at(i, j, k);
                err2 += e * e;
                ref2 += ref.at(i, j, k) * ref.at(i, j, k);
                ref_max = std::max(ref_max, std::fabs(ref.at(i, j, k)));
                m.max_abs = std::max(m.max_abs, std::fabs(e));
                ++m.nodes;
            }
    m.l2_rel = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
    m.max_rel = ref_max > 0.0 ? m.max_abs / ref_max : m.max_abs;
    return m;
}

Metrics interior_error(const VolumeGrid& rec, const ScalarField& reference, const ReconConfig& cfg) {
    if (rec.G != cfg.G || rec.L != cfg.L) throw std::invalid_argument("interior_error: grid does not match config");
    const VolumeGrid truth = sample_to_grid(reference, rec.G, rec.L);
    return compare_volumes(rec, truth, reference.support_radius(), cfg);
}

IdentityReport identity_check(const ScalarField& f, const CylinderData& phi, const ReconConfig& cfg) {
    const double rho = f.support_radius();
    IdentityReport report;
    report.constant = identity_constant(3);
    const VolumeGrid potential = riesz2(f, cfg.G, cfg.L, rho);
    const CylinderData weighted = weight_chain(phi, 3);
    VolumeGrid lhs(cfg.G, cfg.L);
    const int G = cfg.G;
    parallel_for(static_cast<std::size_t>(G) * G, [&](std::size_t jk) {
        const int j = static_cast<int>(jk % G), k = static_cast<int>(jk / G);
        for (int i = 0; i < G; ++i) {
            const Point3 x = lhs.point(i, j, k);
            if (norm(x) <= rho) lhs.at(i, j, k) = backproject(weighted, x);
        }
    });
    double err2 = 0.0, ref2 = 0.0, ref_max = 0.0, err_max = 0.0;
    for (int k = 0; k < G; ++k)
        for (int j = 0; j < G; ++j)
            for (int i = 0; i < G; ++i) {
                if (norm(lhs.point(i, j, k)) > rho) continue;
                const double rhs = report.constant * potential.at(i, j, k);
                const double e = lhs.at(i, j, k) - rhs;
                err2 += e * e;
                ref2 += rhs * rhs;
                err_max = std::max(err_max, std::fabs(e));
                ref_max = std::max(ref_max, std::fabs(rhs));
                ++report.nodes;
            }
    report.max_rel = ref_max > 0.0 ? err_max / ref_max : err_max;
    report.l2_rel = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
    return report;
}

RadialProfile radial_invert(const RadialProfile& F0, Branch branch, double r_start, double r_step,
                            std::size_t count) {
    const double dt = F0.step;
    if (r_start < 2.0 * dt - 1e-12) throw std::invalid_argument("radial_invert: r_start must be >= 2 dt");
    if (!(r_step > 0.0) || count == 0) throw std::invalid_argument("radial_invert: empty output grid");

    // samples of t F0(t) on the requested half of the time axis
    std::vector<double> g;
    double first_t = 0.0;
    for (std::size_t k = 0; k < F0.size(); ++k) {
        const double t = F0.node(k);
        const bool keep = branch == Branch::inner ? (t > 0.0 && t < 1.0) : (t > 1.0 && t < 2.0);
        if (!keep) continue;
        if (g.empty()) first_t = t;
        g.push_back(t * F0.values[k]);
    }
    if (g.size() < 5) throw std::invalid_argument("radial_invert: fewer than 5 samples on the requested half");

    static const auto table = [] {
        std::array<std::array<double, 5>, 5> t{};
        const std::array<double, 5> x{0.0, 1.0, 2.0, 3.0, 4.0};
        for (int pos = 0; pos < 5; ++pos) {
            const auto w = fd_weights(static_cast<double>(pos), x, 1);
            std::copy(w.begin(), w.end(), t[pos].begin());
        }
        return t;
    }();
    const std::size_t n = g.size();
    std::vector<double> dg(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t w = std::min(k >= 2 ? k - 2 : 0, n - 5);
        double d = 0.0;
        for (int i = 0; i < 5; ++i) d += table[k - w][i] * g[w + i];
        dg[k] = d / dt;
    }
    const RadialProfile derivative(first_t, dt, std::move(dg));

    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double r = r_start + static_cast<double>(k) * r_step;
        const double t = branch == Branch::inner ? 1.0 - r : 1.0 + r;
        if (t < derivative.start - 0.5 * dt || t > derivative.back() + 0.5 * dt)
            throw std::out_of_range("radial_invert: r = " + std::to_string(r) + " needs data outside the given half");
        const double sign = branch == Branch::inner ? 1.0 : -1.0;
        out[k] = sign * 2.0 / r * interp_profile(derivative, t);
    }
    return RadialProfile(r_start, r_step, std::move(out));
}

std::vector<std::pair<double, double>> radial_average(const VolumeGrid& v, double r_max) {
    const double h = v.h();
    const auto shells = static_cast<std::size_t>(std::ceil(r_max / h));
    std::vector<double> sum(shells, 0.0), rsum(shells, 0.0);
    std::vector<std::size_t> count(shells, 0);
    for (int k = 0; k < v.G; ++k)
        for (int j = 0; j < v.G; ++j)
            for (int i = 0; i < v.G; ++i) {
                const double r = norm(v.point(i, j, k));
                const auto s = static_cast<std::size_t>(r / h);
                if (r >= r_max || s >= shells) continue;
                sum[s] += v.at(i, j, k);
                rsum[s] += r;
                ++count[s];
            }
    std::vector<std::pair<double, double>> out;
    for (std::size_t s = 0; s < shells; ++s)
        if (count[s] > 0) out.emplace_back(rsum[s] / count[s], sum[s] / count[s]);
    return out;
}

}  // namespace smt::recon
