#pragma once

#include "smt/fields.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace smt {

/// Quadrature on the unit sphere S^2 with unit total mass, so integrals
/// against it are averages (the 1/sigma_2 normalization lives here).
struct SphereGrid {
    std::vector<Point3> nodes;
    std::vector<double> weights;
    int n_polar = 0;
    int n_azimuth = 0;
    /// Spherical harmonics up to this degree are integrated exactly.
    int degree = 0;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double average(F&& g) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * g(nodes[i]);
        return sum;
    }
};

/// Gauss-Legendre in cos(polar angle) times a uniform azimuth grid.
/// Requires n_polar >= 2 and n_azimuth >= 4.
SphereGrid build_sphere_grid(int n_polar, int n_azimuth);

/// Uniform cell-centered grid on (0, t_max]: t_j = (j + 1/2) dt, dt = t_max / count.
struct TimeGrid {
    std::size_t count = 0;
    double t_max = 2.0;

    TimeGrid() = default;
    TimeGrid(std::size_t count, double t_max = 2.0);

    double step() const { return t_max / static_cast<double>(count); }
    double node(std::size_t j) const { return (static_cast<double>(j) + 0.5) * step(); }
    double first() const { return node(0); }
    double last() const { return node(count - 1); }
};

/// Uniformly sampled function of one variable: values[k] at start + k*step.
struct RadialProfile {
    double start = 0.0;
    double step = 1.0;
    std::vector<double> values;

    RadialProfile() = default;
    RadialProfile(double start, double step, std::vector<double> values);
    /// Samples g on the nodes of a time grid.
    template <class F>
    static RadialProfile sample(const TimeGrid& grid, F&& g) {
        std::vector<double> v(grid.count);
        for (std::size_t j = 0; j < grid.count; ++j) v[j] = g(grid.node(j));
        return RadialProfile(grid.first(), grid.step(), std::move(v));
    }
    static RadialProfile on(const TimeGrid& grid, std::vector<double> values);

    std::size_t size() const { return values.size(); }
    double node(std::size_t k) const { return start + static_cast<double>(k) * step; }
    double back() const { return node(values.size() - 1); }
};

/// Four-point Lagrange interpolation of a profile, exact for cubics. Profiles
/// starting at t > 0 are extrapolated from their first four samples down to
/// r = 0; otherwise half a step of extrapolation is allowed at either end.
/// Throws std::out_of_range beyond that.
double interp_profile(const RadialProfile& p, double r);

/// Samples F(theta_i, t_j) on detector nodes times a time grid, row-major.
struct CylinderData {
    SphereGrid sphere;
    TimeGrid times;
    std::vector<double> samples;

    CylinderData() = default;
    CylinderData(SphereGrid sphere, TimeGrid times);

    std::size_t rows() const { return sphere.size(); }
    std::size_t cols() const { return times.count; }
    double& at(std::size_t i, std::size_t j) { return samples[i * times.count + j]; }
    double at(std::size_t i, std::size_t j) const { return samples[i * times.count + j]; }
    std::span<double> row(std::size_t i) { return {samples.data() + i * times.count, times.count}; }
    std::span<const double> row(std::size_t i) const { return {samples.data() + i * times.count, times.count}; }
    RadialProfile row_profile(std::size_t i) const;
    void set_row(std::size_t i, const RadialProfile& p);
};

/// Interpolates one time row: Catmull-Rom between interior nodes, quadratic
/// in the first and last cells (exact for quadratics everywhere). For t in (0, t_1) or (t_n, t_max] the row must
/// vanish on the two adjacent samples (then 0 is returned); any other t
/// outside [t_1, t_n] throws std::out_of_range.
double interp_time(std::span<const double> row, const TimeGrid& times, double t);
double interp_time(const CylinderData& data, std::size_t i, double t);

/// G^3 cell-centered samples over [-L, L]^3, x-fastest.
struct VolumeGrid {
    int G = 0;
    double L = 1.0;
    std::vector<double> values;

    VolumeGrid() = default;
    VolumeGrid(int G, double L);

    double h() const { return 2.0 * L / G; }
    double coord(int k) const { return -L + (k + 0.5) * h(); }
    Point3 point(int i, int j, int k) const { return {coord(i), coord(j), coord(k)}; }
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(G) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(G) * k);
    }
    double& at(int i, int j, int k) { return values[index(i, j, k)]; }
    double at(int i, int j, int k) const { return values[index(i, j, k)]; }
    std::size_t size() const { return values.size(); }
};

/// Samples f at the cell centers. Requires G >= 8.
VolumeGrid sample_to_grid(const ScalarField& f, int G, double L);

/// Trilinear interpolant of the grid; zero outside [-L, L]^3.
ScalarField grid_to_field(const VolumeGrid& v);

}  // namespace smt
