#pragma once

#include "smt/fields.hpp"
#include "smt/grids.hpp"

#include <cstddef>
#include <functional>

namespace smt::sphmean {

/// Average of f over the sphere of radius t about center:
///   sum_i w_i f(center - t theta_i).
double spherical_mean(const ScalarField& f, const Point3& center, double t, const SphereGrid& sphere);

/// Spherical means about every detector node theta_i of `sphere` for every
/// t_j of `times`; the same sphere grid is the integration rule.
CylinderData forward_scan(const ScalarField& f, const SphereGrid& sphere, const TimeGrid& times);

/// Spherical means about every node of `detectors`, integrated with `rule`.
CylinderData forward_scan(const ScalarField& f, const SphereGrid& detectors, const SphereGrid& rule,
                          const TimeGrid& times);

/// Spherical mean about a unit-sphere center of a radial function f0(|x|)
/// supported in [0, rho], rho < 1, in odd dimension n >= 3:
///   F0(t) = Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)) (2/t)^(n-3) / t
///           * int_{|1-t|}^{1+t} f0(r) a(r,t)^(n-3) r dr,
/// where a(r,t) is the area of the triangle with sides 1, t, r. For n = 3 this
/// is (1/(2t)) int f0(r) r dr. Throws std::out_of_range for t outside (0, 2).
double radial_forward(const std::function<double(double)>& f0, double rho, double t, int n = 3,
                      std::size_t nodes = 64);
double radial_forward(const ScalarField& f, double t, int n = 3, std::size_t nodes = 64);
double radial_forward(const RadialProfile& f0, double rho, double t, int n = 3, std::size_t nodes = 64);

/// radial_forward on every node of a time grid.
RadialProfile radial_scan(const std::function<double(double)>& f0, double rho, const TimeGrid& times, int n = 3,
                          std::size_t nodes = 64);

/// Largest |forward_scan - radial_forward| over all detector rows and times.
/// Throws std::invalid_argument if f is not radial.
double crosscheck_radial(const ScalarField& f, const SphereGrid& sphere, const TimeGrid& times);

}  // namespace smt::sphmean
