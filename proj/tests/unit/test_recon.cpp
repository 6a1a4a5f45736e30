#include "doctest.h"
#include "smt/recon.hpp"
#include "smt/sphmean.hpp"

#include <cmath>
#include <stdexcept>

using namespace smt;

namespace {

CylinderData from_time_function(const SphereGrid& s, const TimeGrid& tg, double (*g)(double)) {
    CylinderData d(s, tg);
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) = g(tg.node(j));
    return d;
}

ScalarField radial_bump(double R, int p) { return make_phantom(PhantomKind::radial_bump, {Bump{{0, 0, 0}, R, p, 1.0}}); }

}  // namespace

TEST_CASE("back-projection of simple data") {
    const SphereGrid s = build_sphere_grid(8, 16);
    const TimeGrid tg(400);
    const CylinderData one = from_time_function(s, tg, [](double) { return 1.0; });
    const CylinderData sq = from_time_function(s, tg, [](double t) { return t * t; });
    for (const Point3& x : {Point3{0, 0, 0}, Point3{0.3, -0.4, 0.1}, Point3{0.0, 0.7, 0.5}}) {
        CHECK(recon::backproject(one, x) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::fabs(recon::backproject(sq, x) - (dot(x, x) + 1.0)) <= 1e-8);
    }
    CHECK(recon::backprojection_radius(tg) == doctest::Approx(1.0 - tg.first()).epsilon(1e-10));

    const VolumeGrid v = recon::backproject_volume(sq, 16, 1.0, 0.5);
    for (int k = 0; k < 16; ++k) {
        const Point3 x = v.point(k, 7, 8);
        if (norm(x) <= 0.5)
            CHECK(std::fabs(v.at(k, 7, 8) - (dot(x, x) + 1.0)) <= 1e-8);
        else
            CHECK(v.at(k, 7, 8) == 0.0);
    }
}

TEST_CASE("constants of the inversion formula") {
    CHECK(recon::inversion_constant(3) == doctest::Approx(-2.0));
    CHECK(recon::identity_constant(3) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("discrete Laplacian is exact on quadratics, faces included") {
    const VolumeGrid v = sample_to_grid(ScalarField([](const Point3& x) { return dot(x, x) + x[0]; }, 0.99), 12, 1.0);
    const VolumeGrid l = recon::laplacian(v);
    for (int k = 0; k < 12; ++k)
        for (int j = 0; j < 12; ++j)
            for (int i = 0; i < 12; ++i) CHECK(l.at(i, j, k) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("Riesz potential of a uniform ball is the Newtonian potential") {
    const double R = 0.5;
    const ScalarField ball([R](const Point3& x) { return dot(x, x) < R * R ? 1.0 : 0.0; }, R);
    const int G = 64;
    const VolumeGrid p = recon::riesz2(ball, G, 1.0, 0.9);
    double worst = 0.0;
    for (int i = G / 2; i < G; i += 3) {
        const Point3 x = p.point(i, G / 2, G / 2);
        const double r = norm(x);
        if (r > 0.9) continue;
        const double exact = r < R ? R * R / 2.0 - r * r / 6.0 : R * R * R / (3.0 * r);
        worst = std::max(worst, std::fabs(p.at(i, G / 2, G / 2) - exact) / exact);
    }
    CHECK(worst <= 0.01);
}

TEST_CASE("the Laplacian inverts the Riesz potential") {
    const ScalarField f = radial_bump(0.4, 3);
    const int G = 64;
    const VolumeGrid p = recon::riesz2(f, G, 1.0, 0.5);
    const VolumeGrid l = recon::laplacian(p);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < G; ++k)
        for (int j = 0; j < G; ++j)
            for (int i = 0; i < G; ++i) {
                const Point3 x = l.point(i, j, k);
                if (norm(x) > 0.45) continue;
                const double e = -l.at(i, j, k) - f(x);
                num += e * e;
                den += f(x) * f(x);
            }
    CHECK(std::sqrt(num / den) <= 0.03);
}

TEST_CASE("half-data radial inversion") {
    const ScalarField f = radial_bump(0.8, 3);
    const TimeGrid tg(2000);
    const RadialProfile F0 = sphmean::radial_scan([&](double r) { return f.radial_value(r); }, 0.8, tg);
    const double r0 = 0.05, dr = 0.0075;
    const std::size_t count = 101;
    const RadialProfile inner = recon::radial_invert(F0, recon::Branch::inner, r0, dr, count);
    const RadialProfile outer = recon::radial_invert(F0, recon::Branch::outer, r0, dr, count);
    double e_inner = 0.0, agree = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        e_inner = std::max(e_inner, std::fabs(inner.values[k] - f.radial_value(inner.node(k))));
        agree = std::max(agree, std::fabs(inner.values[k] - outer.values[k]));
    }
    CHECK(e_inner <= 1e-3);
    CHECK(agree <= 2e-3);
    CHECK_THROWS(recon::radial_invert(F0, recon::Branch::inner, 0.0001, dr, count));
}

TEST_CASE("coarse roundtrip, variant agreement and linearity") {
    const ScalarField f = radial_bump(0.8, 3);
    const ScalarField g = make_phantom(PhantomKind::shifted_bump, {Bump{{0.3, 0, 0}, 0.4, 3, 1.0}});
    const SphereGrid s = build_sphere_grid(24, 48);
    const TimeGrid tg(200);
    const CylinderData F = sphmean::forward_scan(f, s, tg);
    const CylinderData H = sphmean::forward_scan(g, s, tg);

    recon::ReconConfig cfg;
    cfg.G = 40;
    cfg.region_radius = 0.8;
    const VolumeGrid rec = recon::fpr_invert(F, cfg);
    const recon::Metrics m = recon::interior_error(rec, f, cfg);
    CHECK(m.l2_rel <= 0.05);
    CHECK(m.nodes > 0);

    recon::ReconConfig vcfg = cfg;
    vcfg.variant = recon::Variant::laplacian_first;
    const VolumeGrid var = recon::fpr_invert(F, vcfg);
    CHECK(recon::compare_volumes(var, rec, 0.8, cfg).l2_rel <= 0.03);

    CylinderData combo = F;
    for (std::size_t k = 0; k < combo.samples.size(); ++k) combo.samples[k] = 2.0 * F.samples[k] - 0.5 * H.samples[k];
    const VolumeGrid rh = recon::fpr_invert(H, cfg);
    const VolumeGrid rc = recon::fpr_invert(combo, cfg);
    double worst = 0.0;
    for (std::size_t k = 0; k < rc.size(); ++k)
        worst = std::max(worst, std::fabs(rc.values[k] - (2.0 * rec.values[k] - 0.5 * rh.values[k])));
    CHECK(worst <= 1e-10);
}

TEST_CASE("metric region must fit inside the grid") {
    const ScalarField f = radial_bump(0.8, 3);
    recon::ReconConfig cfg;
    cfg.G = 16;
    cfg.L = 0.85;
    const VolumeGrid v(16, 0.85);
    CHECK_THROWS_AS(recon::interior_error(v, f, cfg), std::invalid_argument);
}

TEST_CASE("shell averages of a constant volume") {
    VolumeGrid v(16, 1.0);
    for (double& x : v.values) x = 3.0;
    const auto shells = recon::radial_average(v, 0.9);
    CHECK(!shells.empty());
    for (const auto& [r, value] : shells) {
        CHECK(r <= 0.9 + v.h());
        CHECK(value == doctest::Approx(3.0));
    }
}
