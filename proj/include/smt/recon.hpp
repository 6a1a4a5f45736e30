#pragma once

#include "smt/fields.hpp"
#include "smt/grids.hpp"

#include <cstddef>
#include <optional>

namespace smt::recon {

enum class Variant { laplacian_last, laplacian_first };

/// Output grid and quality-metric region for reconstructions.
struct ReconConfig {
    int G = 64;
    double L = 1.0;
    /// Metrics use |x| <= rho + margin, at least two cells from the grid faces.
    double margin = 0.0;
    Variant variant = Variant::laplacian_last;
    /// Reconstruct only voxels with |x| <= region_radius; the rest stay zero.
    double region_radius = 1e300;
};

/// (P F)(x) = sum_i w_i F(theta_i, |x - theta_i|), rows read through interp_time.
double backproject(const CylinderData& F, const Point3& x);

/// Largest |x| at which every |x - theta| stays inside [t_1, t_n] for unit
/// detectors, i.e. where the back-projection needs no extrapolation.
double backprojection_radius(const TimeGrid& times);

/// Back-projection on the cell centers of a G^3 grid over [-L, L]^3. Voxels
/// with |x| > min(backprojection_radius, radius) are left at zero.
VolumeGrid backproject_volume(const CylinderData& F, int G, double L, double radius = 1e300);

/// Per detector row: multiply by t^(n-2), then apply D^(n-3) (identity for n = 3).
CylinderData weight_chain(const CylinderData& phi, int n = 3);

/// Riesz potential of order two in R^3, (1/(4 pi)) int f(y)/|x-y| dy, by
/// direct summation over the cell centers of the grid. The self cell uses
/// the integral of 1/|y| over the equal-volume ball, 2 pi r_eq^2.
/// Only voxels with |x| <= target_radius are computed (others are zero).
VolumeGrid riesz2(const ScalarField& f, int G, double L, double target_radius = 1e300);

/// Seven-point Laplacian; one-sided second differences on the faces.
VolumeGrid laplacian(const VolumeGrid& v);

/// c_n * sigma_{n-1} for the odd-n inversion with unit-mass detector weights
/// (-2 for n = 3).
double inversion_constant(int n = 3);

/// Constant c of P[D^(n-3) t^(n-2) phi] = c I^2 f (1/2 for n = 3).
double identity_constant(int n = 3);

/// f(x) = c_3 sigma_2 Delta P[t phi_theta](x) on the config grid. Voxels whose
/// Laplacian stencil leaves the back-projection region are set to zero.
/// Dispatches to fpr_invert_variant when cfg.variant is laplacian_first.
VolumeGrid fpr_invert(const CylinderData& phi, const ReconConfig& cfg);

/// Laplacian-first ordering: since t M(Delta f)_theta = (t phi_theta)'' in
/// three dimensions, f = c_3 sigma_2 P[(t phi_theta)''], with the second
/// t-derivative taken row by row before back-projection.
VolumeGrid fpr_invert_variant(const CylinderData& phi, const ReconConfig& cfg);

struct Metrics {
    double l2_rel = 0.0;
    double max_abs = 0.0;
    double max_rel = 0.0;
    std::size_t nodes = 0;
};

/// Reconstruction error against the reference field over the metric region.
/// Throws std::invalid_argument unless L >= rho + 4h.
Metrics interior_error(const VolumeGrid& rec, const ScalarField& reference, const ReconConfig& cfg);

/// Deviation between two volumes over the metric region of `reference`,
/// relative to the norm of `reference_volume`.
Metrics compare_volumes(const VolumeGrid& a, const VolumeGrid& reference_volume, double rho, const ReconConfig& cfg);

struct IdentityReport {
    double max_rel = 0.0;
    double l2_rel = 0.0;
    std::size_t nodes = 0;
    double constant = 0.5;
};

/// Compares P[t phi_theta] with (1/2) I^2 f on the voxels |x| <= rho.
IdentityReport identity_check(const ScalarField& f, const CylinderData& phi, const ReconConfig& cfg);

enum class Branch { inner, outer };

/// Radial inversion from spherical means of a radial function known on one
/// half of the time axis only:
///   inner: f0(r) =  (2/r) d/dt(t F0)|_{t=1-r}, using samples with t < 1
///   outer: f0(r) = -(2/r) d/dt(t F0)|_{t=1+r}, using samples with t > 1
/// Output radii are r_k = r_start + k r_step; r_start must be >= 2 dt.
RadialProfile radial_invert(const RadialProfile& F0, Branch branch, double r_start, double r_step,
                            std::size_t count);

/// Shell averages of a volume: value k averages voxels with |x| in
/// [k h, (k+1) h), reported at the mean radius of the shell's voxels.
std::vector<std::pair<double, double>> radial_average(const VolumeGrid& v, double r_max);

}  // namespace smt::recon
