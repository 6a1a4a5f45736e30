#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace smt {

using Point3 = std::array<double, 3>;

inline double dot(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Point3& a) { return std::sqrt(dot(a, a)); }
inline Point3 operator-(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point3 operator+(const Point3& a, const Point3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point3 operator*(double s, const Point3& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// a * (1 - |x-c|^2/R^2)^p inside the ball |x-c| < R, zero outside.
struct Bump {
    Point3 center{0.0, 0.0, 0.0};
    double radius = 0.5;
    int exponent = 3;
    double amplitude = 1.0;

    double operator()(const Point3& x) const;
};

enum class PhantomKind { radial_bump, shifted_bump, sum_of_bumps };

std::string to_string(PhantomKind kind);
PhantomKind phantom_kind_from_string(const std::string& name);

/// Evaluable function on R^3 that vanishes outside the ball |x| < support_radius.
///
/// Fields built from bumps remember them so they can be serialized and, when
/// every bump is centered at the origin, expose their radial profile.
class ScalarField {
public:
    using Eval = std::function<double(const Point3&)>;
    using Radial = std::function<double(double)>;

    ScalarField(Eval eval, double support_radius);

    /// Radially symmetric field f(x) = profile(|x|).
    static ScalarField radial(Radial profile, double support_radius);

    /// The zero field.
    static ScalarField zero();

    double operator()(const Point3& x) const { return eval_(x); }
    double support_radius() const { return support_radius_; }
    int dimension() const { return 3; }

    bool is_radial() const { return static_cast<bool>(radial_); }
    /// Radial profile f0 with f(x) = f0(|x|). Throws if the field is not radial.
    double radial_value(double r) const;

    /// Bumps this field was built from; empty for generic fields.
    const std::vector<Bump>& bumps() const { return bumps_; }
    std::optional<PhantomKind> phantom_kind() const { return kind_; }

private:
    friend ScalarField make_phantom(PhantomKind, std::vector<Bump>);

    Eval eval_;
    Radial radial_;
    double support_radius_;
    std::vector<Bump> bumps_;
    std::optional<PhantomKind> kind_;
};

/// Builds a bump phantom. Every bump must lie inside the unit ball
/// (|c| + R < 1), have R > 0 and exponent >= 2; radial_bump requires a single
/// bump centered at the origin and shifted_bump a single bump.
/// Throws std::invalid_argument otherwise.
ScalarField make_phantom(PhantomKind kind, std::vector<Bump> bumps);

}  // namespace smt
