#pragma once

/// Euler-Poisson-Darboux solutions through their Erdelyi-Kober representation
///   u(x, t) = Gamma(alpha + n/2) / Gamma(n/2) * (J^alpha_{eta,lambda} phi_x)(t),
/// where phi_x(t) is the spherical mean of f about x and eta = n/2 - 1. The
/// solution satisfies
///   Delta_x u - u_tt - ((n + 2 alpha - 1)/t) u_t = lambda^2 u,  u(x,0) = f, u_t(x,0) = 0.

#include "smt/fields.hpp"
#include "smt/fracops.hpp"
#include "smt/grids.hpp"
#include "smt/recon.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace smt::epd {

struct EPDSpec {
    double alpha = 1.0;
    double lambda = 0.0;
    int n = 3;

    double eta() const { return 0.5 * n - 1.0; }
    /// Throws std::invalid_argument unless n is odd >= 3, lambda >= 0 and
    /// alpha >= (1 - n)/2.
    void validate() const;
    /// Gamma(alpha + n/2) / Gamma(n/2).
    double prefactor() const;
};

/// Applies the solution operator to one sampled spherical-mean profile.
RadialProfile apply_solution_operator(const RadialProfile& phi, const EPDSpec& spec,
                                      std::size_t nodes = fracops::kDefaultNodes);

/// u(x, t) at a single point. The spherical means are evaluated on the fly,
/// so the only discretization is the sphere rule and the 1-D quadrature.
/// Requires alpha > 0 or alpha = 0.
double epd_value(const ScalarField& f, const EPDSpec& spec, const Point3& x, double t, const SphereGrid& sphere,
                 std::size_t nodes = fracops::kDefaultNodes);

/// u(x, t_j) on a time grid. alpha >= 0 uses epd_value node by node; negative
/// alpha continues the sampled spherical-mean profile through D.
RadialProfile epd_solve(const ScalarField& f, const EPDSpec& spec, const Point3& x, const TimeGrid& times,
                        const SphereGrid& sphere, std::size_t nodes = fracops::kDefaultNodes);

/// Same solution computed through the plain Erdelyi-Kober operator I^alpha_eta
/// (lambda must be 0); used to confirm the lambda = 0 reduction.
RadialProfile epd_solve_ek(const ScalarField& f, const EPDSpec& spec, const Point3& x, const TimeGrid& times,
                           const SphereGrid& sphere, std::size_t nodes = fracops::kDefaultNodes);

/// Trace u(theta_i, t_j) on the detector cylinder: a spherical-mean scan
/// followed by the solution operator on every row.
CylinderData epd_trace(const ScalarField& f, const EPDSpec& spec, const SphereGrid& sphere, const TimeGrid& times,
                       std::size_t nodes = fracops::kDefaultNodes);

/// Vertex-centered space-time box: nx^3 points x = center + (-a + i h, ...),
/// h = 2a/(nx - 1), times t_j of a TimeGrid.
struct SpaceTimeBox {
    Point3 center{0.0, 0.0, 0.0};
    double half_width = 0.05;
    int nx = 5;
    TimeGrid times;

    double h() const { return 2.0 * half_width / (nx - 1); }
    Point3 point(int i, int j, int k) const;
};

/// Samples on a SpaceTimeBox, time fastest: values[((k nx + j) nx + i) nt + l].
struct SpaceTimeField {
    SpaceTimeBox box;
    std::vector<double> values;

    explicit SpaceTimeField(SpaceTimeBox box);
    std::size_t index(int i, int j, int k, std::size_t l) const;
    double& at(int i, int j, int k, std::size_t l) { return values[index(i, j, k, l)]; }
    double at(int i, int j, int k, std::size_t l) const { return values[index(i, j, k, l)]; }
};

/// u on every node of the box, through epd_value.
SpaceTimeField sample_solution(const ScalarField& f, const EPDSpec& spec, const SpaceTimeBox& box,
                               const SphereGrid& sphere, std::size_t nodes = fracops::kDefaultNodes);

/// Delta_x u - u_tt - ((n + 2 alpha - 1)/t) u_t - lambda^2 u with second-order
/// central differences on interior nodes; boundary nodes are zero.
SpaceTimeField pde_residual(const SpaceTimeField& u, const EPDSpec& spec);

/// Largest |residual| over interior nodes with t >= t_min.
double max_residual(const SpaceTimeField& residual, double t_min);

/// Recovers f from the trace: phi_theta = Gamma(n/2)/Gamma(alpha + n/2) *
/// gek_inverse(u_theta) per row, followed by recon::fpr_invert. When the
/// recovered rows do not vanish at the ends of the time axis (relative
/// deviation > 1e-3) a warning goes to std::cerr. The relative deviation is
/// stored in *support_violation when given. Requires n = 3.
VolumeGrid epd_invert(const CylinderData& trace, const EPDSpec& spec, const recon::ReconConfig& cfg,
                      double* support_violation = nullptr, std::size_t nodes = fracops::kDefaultNodes);

/// Spherical-mean rows recovered from a trace (the first stage of epd_invert).
CylinderData recover_means(const CylinderData& trace, const EPDSpec& spec,
                           std::size_t nodes = fracops::kDefaultNodes);

/// Reconstructed initial data together with the solution it generates.
struct Resolution {
    VolumeGrid volume;
    ScalarField field;
    EPDSpec spec;
    SphereGrid sphere;

    /// u(x, t) for the reconstructed f.
    double operator()(const Point3& x, double t) const;
    /// u(x, t_j) on a time grid (sampled spherical means, one solve).
    RadialProfile profile(const Point3& x, const TimeGrid& times) const;
};

/// epd_invert followed by wrapping the volume as a field; the solution is
/// evaluated with the sphere rule of the trace.
Resolution epd_resolve(const CylinderData& trace, const EPDSpec& spec, const recon::ReconConfig& cfg);

/// For alpha = 1, lambda = 0, n = 3 the solution is the ball average
/// (3/(4 pi)) int_{|y|<1} f(x - t y) dy. Returns |epd_value - ball average|
/// with the ball integral done by Gauss-Legendre in the radius.
double ball_average_deviation(const ScalarField& f, const Point3& x, double t, const SphereGrid& sphere,
                              std::size_t radial_nodes = 32);

}  // namespace smt::epd
