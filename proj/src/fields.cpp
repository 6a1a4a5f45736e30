#include "smt/fields.hpp"

#include <algorithm>
#include <stdexcept>

namespace smt {

double Bump::operator()(const Point3& x) const {
    const Point3 d = x - center;
    const double q = 1.0 - dot(d, d) / (radius * radius);
    if (q <= 0.0) return 0.0;
    double v = amplitude;
    for (int k = 0; k < exponent; ++k) v *= q;
    return v;
}

std::string to_string(PhantomKind kind) {
    switch (kind) {
        case PhantomKind::radial_bump: return "radial-bump";
        case PhantomKind::shifted_bump: return "shifted-bump";
        case PhantomKind::sum_of_bumps: return "sum-of-bumps";
    }
    return "unknown";
}

PhantomKind phantom_kind_from_string(const std::string& name) {
    std::string key = name;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "radial-bump") return PhantomKind::radial_bump;
    if (key == "shifted-bump") return PhantomKind::shifted_bump;
    if (key == "sum-of-bumps") return PhantomKind::sum_of_bumps;
    throw std::invalid_argument("unknown phantom kind '" + name + "'");
}

ScalarField::ScalarField(Eval eval, double support_radius)
    : eval_(std::move(eval)), support_radius_(support_radius) {
    if (!eval_) throw std::invalid_argument("ScalarField: empty evaluator");
    if (!(support_radius > 0.0) || !std::isfinite(support_radius))
        throw std::invalid_argument("ScalarField: support radius must be positive");
}

ScalarField ScalarField::radial(Radial profile, double support_radius) {
    if (!profile) throw std::invalid_argument("ScalarField::radial: empty profile");
    ScalarField f(
        [profile, support_radius](const Point3& x) {
            const double r = norm(x);
            return r < support_radius ? profile(r) : 0.0;
        },
        support_radius);
    f.radial_ = [profile, support_radius](double r) { return r < support_radius ? profile(r) : 0.0; };
    return f;
}

ScalarField ScalarField::zero() {
    return radial([](double) { return 0.0; }, 0.5);
}

double ScalarField::radial_value(double r) const {
    if (!radial_) throw std::logic_error("ScalarField: field is not radial");
    return radial_(r);
}

ScalarField make_phantom(PhantomKind kind, std::vector<Bump> bumps) {
    if (bumps.empty()) throw std::invalid_argument("make_phantom: no bumps given");
    if (kind != PhantomKind::sum_of_bumps && bumps.size() != 1)
        throw std::invalid_argument("make_phantom: " + to_string(kind) + " takes exactly one bump");
    double rho = 0.0;
    for (const Bump& b : bumps) {
        if (!(b.radius > 0.0)) throw std::invalid_argument("make_phantom: bump radius must be positive");
        if (b.exponent < 2) throw std::invalid_argument("make_phantom: bump exponent must be >= 2");
        const double reach = norm(b.center) + b.radius;
        if (!(reach < 1.0))
            throw std::invalid_argument("make_phantom: bump reaches |x| = " + std::to_string(reach) +
                                        ", outside the open unit ball");
        rho = std::max(rho, reach);
    }
    if (kind == PhantomKind::radial_bump && norm(bumps.front().center) != 0.0)
        throw std::invalid_argument("make_phantom: radial-bump must be centered at the origin");

    const bool centered = std::all_of(bumps.begin(), bumps.end(), [](const Bump& b) { return norm(b.center) == 0.0; });
    ScalarField field(
        [bumps](const Point3& x) {
            double v = 0.0;
            for (const Bump& b : bumps) v += b(x);
            return v;
        },
        rho);
    if (centered) {
        field.radial_ = [bumps](double r) {
            double v = 0.0;
            for (const Bump& b : bumps) v += b(Point3{r, 0.0, 0.0});
            return v;
        };
    }
    field.bumps_ = std::move(bumps);
    field.kind_ = kind;
    return field;
}

}  // namespace smt
