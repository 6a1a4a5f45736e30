/// Acceptance driver: evaluates the seven acceptance criteria and prints one
/// PASS/FAIL line per criterion, preceded by the measurements behind it.
///
/// Usage: smt_acceptance [--only 1,3,...] [--xfail 1,7]
///
/// Criteria listed in --xfail are known to be unattainable as stated; their
/// FAIL line is printed unchanged and annotated as expected. The exit status
/// is 0 iff every other criterion passes and every expected failure does fail
/// (an unexpected pass is reported so the list can be revisited).

#include "smt/checks.hpp"
#include "smt/fracops.hpp"
#include "smt/recon.hpp"
#include "smt/specialfn.hpp"
#include "smt/sphmean.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace {

using smt::checks::CheckResult;
using smt::checks::make_check;
using smt::checks::Resolution;

struct Outcome {
    std::vector<CheckResult> checks;
    /// Informational lines that do not enter the verdict.
    std::vector<std::string> notes;
};

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string format_note(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    return buf;
}

// 1. Fractional-operator suite.
Outcome fractional_operators() {
    Outcome o;
    Stopwatch clock;
    o.checks.push_back(make_check("ek_compose_half_half_eta_half", smt::checks::ek_composition_error(0.5, 0.5, 0.5), 1e-6));
    o.checks.push_back(make_check("ek_roundtrip_alpha_half_eta_half", smt::checks::ek_roundtrip_error(0.5, 0.5), 1e-6));
    o.checks.push_back(make_check("ek_power_law_rel", smt::checks::ek_power_law_error(), 1e-8));
    // the constant as stated: (-1)^k k!
    for (int k = 0; k <= 2; ++k) {
        const double stated = (k % 2 ? -1.0 : 1.0) * std::tgamma(k + 1.0);
        o.checks.push_back(make_check("rl_constant_stated_k" + std::to_string(k) + "_factorial",
                                      smt::checks::rl_constant_error(k, stated), 1e-8));
    }
    o.checks.push_back(make_check("runtime_s", clock.seconds(), 5.0));
    // (d/ds)^(2k) (1 - s^2)^k is the constant (-1)^k (2k)!
    double companion = 0.0;
    for (int k = 0; k <= 2; ++k)
        companion = std::max(companion,
                             smt::checks::rl_constant_error(k, (k % 2 ? -1.0 : 1.0) * std::tgamma(2.0 * k + 1.0)));
    o.notes.push_back(format_note("rl constant against (-1)^k (2k)!: max error %.3e (k = 0, 1, 2)", companion));
    return o;
}

// 2. Special functions.
Outcome special_functions() {
    Outcome o;
    Stopwatch clock;
    const double g = smt::specialfn::gamma(0.5);
    o.checks.push_back(make_check("gamma_half_squared_minus_pi", std::fabs(g * g - smt::specialfn::kPi), 1e-12));
    o.checks.push_back(make_check("bessel_recurrence_200", smt::checks::bessel_recurrence_residual(200), 1e-10));
    o.checks.push_back(make_check("bessel_half_integer_closed_forms", smt::checks::bessel_closed_form_error(), 1e-10));
    o.checks.push_back(make_check("runtime_s", clock.seconds(), 1.0));
    return o;
}

// 3. Intermediate identity at the reference resolution, and under refinement.
Outcome intermediate_identity() {
    Outcome o;
    Stopwatch clock;
    const double reference = smt::checks::identity_deviation(Resolution{});
    const double seconds = clock.seconds();
    const double coarse = smt::checks::identity_deviation(Resolution{}.halved());
    o.checks.push_back(make_check("identity_max_rel_reference", reference, 0.02));
    // decrease from half resolution to the reference: ratio coarse/reference > 1
    o.checks.push_back(make_check("identity_reference_over_half_resolution", reference / coarse, 1.0 - 1e-12));
    o.checks.push_back(make_check("runtime_reference_s", seconds, 300.0));
    o.notes.push_back(format_note("identity max_rel: half resolution %.3e, reference %.3e", coarse, reference));
    return o;
}

// 4. Full inversion roundtrip at the reference resolution and doubled.
Outcome fpr_roundtrip() {
    Outcome o;
    const Resolution ref{};
    const Resolution dbl = ref.doubled();
    const smt::ScalarField radial = smt::checks::reference_radial_bump();
    const smt::ScalarField shifted = smt::checks::reference_shifted_bump();

    Stopwatch c1;
    const double r_ref = smt::checks::fpr_roundtrip(radial, ref).l2_rel;
    const double s_ref = smt::checks::fpr_roundtrip(shifted, ref).l2_rel;
    const double t_ref = c1.seconds();
    Stopwatch c2;
    const double r_dbl = smt::checks::fpr_roundtrip(radial, dbl).l2_rel;
    const double s_dbl = smt::checks::fpr_roundtrip(shifted, dbl).l2_rel;
    const double t_dbl = c2.seconds();

    o.checks.push_back(make_check("fpr_l2_radial_reference", r_ref, 0.05));
    o.checks.push_back(make_check("fpr_l2_shifted_reference", s_ref, 0.05));
    // factor >= 1.5 expressed as doubled/reference <= 1/1.5
    o.checks.push_back(make_check("fpr_doubled_over_reference_radial", r_dbl / r_ref, 1.0 / 1.5));
    o.checks.push_back(make_check("fpr_doubled_over_reference_shifted", s_dbl / s_ref, 1.0 / 1.5));
    o.checks.push_back(make_check("runtime_reference_s", t_ref, 600.0));
    o.checks.push_back(make_check("runtime_doubled_s", t_dbl, 5400.0));
    o.notes.push_back(format_note("radial bump l2: reference %.3e, doubled %.3e, factor %.2f", r_ref, r_dbl, r_ref / r_dbl));
    o.notes.push_back(
        format_note("shifted bump l2: reference %.3e, doubled %.3e, factor %.2f", s_ref, s_dbl, s_ref / s_dbl));
    return o;
}

// 5. Radial half-data inversion.
Outcome radial_half_data() {
    Outcome o;
    Stopwatch clock;
    const smt::checks::HalfData h = smt::checks::radial_half_data(2000);
    o.checks.push_back(make_check("half_data_inner_max", h.inner, 1e-3));
    o.checks.push_back(make_check("half_data_outer_max", h.outer, 1e-3));
    o.checks.push_back(make_check("half_data_branches_agree", h.agree, 2e-3));
    o.checks.push_back(make_check("runtime_s", clock.seconds(), 1.0));
    return o;
}

// 6. Euler-Poisson-Darboux forward and inverse problems.
Outcome epd() {
    Outcome o;
    Stopwatch clock;
    o.checks.push_back(make_check("epd_lambda0_reduction", smt::checks::epd_reduction_error(1.0), 1e-9));
    for (double lambda : {0.0, 2.0}) {
        const smt::checks::InitialDeparture d = smt::checks::epd_initial_departure(1.0, lambda);
        const double dev = std::max(std::fabs(d.order[0] - 2.0), std::fabs(d.order[1] - 2.0));
        const std::string tag = lambda == 0.0 ? "lambda0" : "lambda2";
        o.checks.push_back(make_check("epd_initial_quadratic_order_dev_" + tag, dev, 0.1));
        o.notes.push_back(format_note(("initial departure " + tag + ": orders %.3f, %.3f").c_str(), d.order[0],
                                      d.order[1]));
    }
    for (double lambda : {0.0, 2.0}) {
        const smt::checks::ResidualStudy s = smt::checks::epd_residual_study(1.0, lambda);
        const std::string tag = lambda == 0.0 ? "lambda0" : "lambda2";
        o.checks.push_back(make_check("epd_residual_order_deficit_" + tag, 2.0 - s.order, 0.3));
        o.notes.push_back(format_note(("pde residual " + tag + ": coarse %.3e, fine %.3e, order %.3f").c_str(),
                                      s.coarse, s.fine, s.order));
    }
    for (double lambda : {0.0, 2.0})
        o.checks.push_back(make_check(std::string("epd_roundtrip_l2_alpha1_") + (lambda == 0.0 ? "lambda0" : "lambda2"),
                                      smt::checks::epd_roundtrip_error(1.0, lambda, Resolution{}), 0.05));
    o.checks.push_back(make_check("runtime_s", clock.seconds(), 900.0));
    return o;
}

// 7. Cross-discretization consistency.
Outcome cross_discretization() {
    Outcome o;
    o.checks.push_back(make_check("forward_scan_vs_radial_closed_form_p6", smt::checks::forward_crosscheck(6, Resolution{}),
                                  1e-8));
    const smt::checks::RadialConsistency c = smt::checks::radial_consistency(Resolution{});
    // stated: the radially averaged 3-D reconstruction matches the 1-D radial
    // inversion within three times the error of the latter
    o.checks.push_back(make_check("shell_average_minus_1d_over_3x_1d_error", c.deviation / (3.0 * c.error_1d), 1.0));
    o.notes.push_back(format_note("max |shell average - 1-D inversion| %.3e, 1-D error %.3e, 3-D shell error %.3e",
                                  c.deviation, c.error_1d, c.error_3d));
    return o;
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) out.insert(std::stoi(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::string only, xfail;
    app.add_option("--only", only, "Comma-separated criteria to run (default: all)");
    app.add_option("--xfail", xfail, "Comma-separated criteria that are expected to fail");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "fractional-operator suite", fractional_operators},
        {2, "special functions", special_functions},
        {3, "intermediate identity", intermediate_identity},
        {4, "inversion roundtrip and refinement", fpr_roundtrip},
        {5, "radial half-data inversion", radial_half_data},
        {6, "Euler-Poisson-Darboux forward and inverse", epd},
        {7, "cross-discretization consistency", cross_discretization},
    };
    std::set<int> selected;
    std::set<int> expected_fail;
    try {
        selected = parse_list(only);
        expected_fail = parse_list(xfail);
    } catch (const std::exception&) {
        std::fprintf(stderr, "acceptance: criterion lists must be comma-separated integers\n");
        return 64;
    }

    int unexpected = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        Stopwatch clock;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.checks.push_back(make_check(std::string("exception: ") + e.what(), 1.0, 0.0));
        }
        const double seconds = clock.seconds();
        for (const CheckResult& r : o.checks) std::printf("  %s\n", smt::checks::format(r).c_str());
        for (const std::string& note : o.notes) std::printf("  note: %s\n", note.c_str());
        const bool pass = smt::checks::all_pass(o.checks);
        const bool xf = expected_fail.count(c.id) > 0;
        std::string tail;
        if (xf && !pass) tail = " (expected failure)";
        if (xf && pass) tail = " (unexpected pass)";
        std::printf("CRITERION %d %s: %s [%.1f s]%s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), seconds,
                    tail.c_str());
        std::fflush(stdout);
        if (pass == xf) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
