/// smt: command-line driver for phantoms, spherical-mean data, reconstructions,
/// EPD experiments and the property suites.
///
/// Exit codes: 0 success, 1 a property check failed, 2 invalid geometry or
/// parameters, 3 file I/O or format errors, 64 usage errors.

#include "smt/checks.hpp"
#include "smt/epd.hpp"
#include "smt/fields.hpp"
#include "smt/grids.hpp"
#include "smt/io.hpp"
#include "smt/parallel.hpp"
#include "smt/recon.hpp"
#include "smt/sphmean.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef SMT_VERSION
#define SMT_VERSION "unknown"
#endif

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIO = 3;
constexpr int kExitUsage = 64;

/// Raised for semantic usage errors detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad number '" + item + "' in " + what);
        }
    }
    return out;
}

smt::Point3 parse_point(const std::string& text) {
    const auto v = parse_list(text, "--center");
    if (v.size() != 3) throw UsageError("--center expects three comma-separated numbers");
    return {v[0], v[1], v[2]};
}

/// "cx,cy,cz,R,p[,a]"
smt::Bump parse_bump(const std::string& text) {
    const auto v = parse_list(text, "--bump");
    if (v.size() != 5 && v.size() != 6) throw UsageError("--bump expects cx,cy,cz,R,p[,a]");
    smt::Bump b;
    b.center = {v[0], v[1], v[2]};
    b.radius = v[3];
    b.exponent = static_cast<int>(v[4]);
    if (b.exponent != v[4]) throw UsageError("--bump exponent must be an integer");
    if (v.size() == 6) b.amplitude = v[5];
    return b;
}

std::filesystem::path sidecar_spec_path(const std::filesystem::path& out) {
    std::filesystem::path p = out;
    return p.replace_extension(".spec");
}

void print_metrics(const smt::recon::Metrics& m) {
    std::printf("%-28s %.6e\n", "interior_l2_rel", m.l2_rel);
    std::printf("%-28s %.6e\n", "interior_max_abs", m.max_abs);
    std::printf("%-28s %.6e\n", "interior_max_rel", m.max_rel);
    std::printf("%-28s %zu\n", "interior_nodes", m.nodes);
}

struct PhantomArgs {
    std::string kind = "radial-bump";
    std::string center = "0,0,0";
    double radius = 0.8;
    int exponent = 3;
    double amplitude = 1.0;
    std::vector<std::string> bumps;
    int grid = 64;
    double extent = 1.0;
    std::string out;
    std::string spec_out;
    std::string slice;
};

int cmd_phantom(const PhantomArgs& a) {
    const smt::PhantomKind kind = [&] {
        try {
            return smt::phantom_kind_from_string(a.kind);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    std::vector<smt::Bump> bumps;
    if (!a.bumps.empty()) {
        for (const auto& b : a.bumps) bumps.push_back(parse_bump(b));
    } else {
        bumps.push_back(smt::Bump{parse_point(a.center), a.radius, a.exponent, a.amplitude});
    }
    const smt::ScalarField f = smt::make_phantom(kind, std::move(bumps));
    const smt::VolumeGrid v = smt::sample_to_grid(f, a.grid, a.extent);
    smt::io::write_volume(a.out, v);
    const std::filesystem::path spec = a.spec_out.empty() ? sidecar_spec_path(a.out) : std::filesystem::path(a.spec_out);
    smt::io::write_phantom_spec(spec, f);
    if (!a.slice.empty()) smt::io::write_slice_pgm(a.slice, v, a.grid / 2);
    std::printf("wrote %s and %s (support radius %.6g)\n", a.out.c_str(), spec.c_str(), f.support_radius());
    return 0;
}

struct ForwardArgs {
    std::string phantom;
    std::string volume;
    int npolar = 48;
    int nazimuth = 96;
    std::size_t nt = 400;
    std::string out;
};

smt::ScalarField load_field(const std::string& spec, const std::string& volume) {
    if (!spec.empty() && !volume.empty()) throw UsageError("give either --phantom or --volume, not both");
    if (!spec.empty()) return smt::io::read_phantom_spec(spec);
    if (!volume.empty()) return smt::grid_to_field(smt::io::read_volume(volume));
    throw UsageError("one of --phantom or --volume is required");
}

int cmd_forward(const ForwardArgs& a) {
    const smt::ScalarField f = load_field(a.phantom, a.volume);
    const smt::CylinderData data =
        smt::sphmean::forward_scan(f, smt::build_sphere_grid(a.npolar, a.nazimuth), smt::TimeGrid(a.nt));
    smt::io::write_cylinder(a.out, data);
    std::printf("wrote %s (%zu detectors x %zu times)\n", a.out.c_str(), data.rows(), data.cols());
    return 0;
}

struct InvertArgs {
    std::string data;
    int grid = 64;
    double extent = 1.0;
    double margin = 0.0;
    std::string variant = "laplacian-last";
    std::string reference;
    std::string out;
    std::string slice;
    bool skip_identity = false;
};

smt::recon::ReconConfig make_config(int grid, double extent, double margin, const std::string& variant) {
    smt::recon::ReconConfig cfg;
    cfg.G = grid;
    cfg.L = extent;
    cfg.margin = margin;
    if (variant == "laplacian-last")
        cfg.variant = smt::recon::Variant::laplacian_last;
    else if (variant == "laplacian-first")
        cfg.variant = smt::recon::Variant::laplacian_first;
    else
        throw UsageError("--variant must be laplacian-last or laplacian-first");
    return cfg;
}

int cmd_invert(const InvertArgs& a) {
    const smt::recon::ReconConfig cfg = make_config(a.grid, a.extent, a.margin, a.variant);
    const smt::CylinderData phi = smt::io::read_cylinder(a.data);
    std::optional<smt::ScalarField> reference;
    if (!a.reference.empty()) reference = smt::io::read_phantom_spec(a.reference);
    const smt::VolumeGrid rec = smt::recon::fpr_invert(phi, cfg);
    smt::io::write_volume(a.out, rec);
    if (!a.slice.empty()) smt::io::write_slice_pgm(a.slice, rec, a.grid / 2);
    std::printf("wrote %s\n", a.out.c_str());
    if (reference) {
        print_metrics(smt::recon::interior_error(rec, *reference, cfg));
        if (!a.skip_identity) {
            const auto id = smt::recon::identity_check(*reference, phi, cfg);
            std::printf("%-28s %.6e\n", "identity_max_rel", id.max_rel);
            std::printf("%-28s %.6e\n", "identity_l2_rel", id.l2_rel);
        }
    }
    return 0;
}

struct EpdArgs {
    double alpha = 1.0;
    double lambda = 0.0;
    // trace
    std::string phantom;
    std::string volume;
    int npolar = 48;
    int nazimuth = 96;
    std::size_t nt = 400;
    // invert
    std::string data;
    int grid = 64;
    double extent = 1.0;
    std::string reference;
    std::string out;
};

smt::epd::EPDSpec make_spec(const EpdArgs& a) {
    const smt::epd::EPDSpec spec{a.alpha, a.lambda, 3};
    spec.validate();
    return spec;
}

int cmd_epd_trace(const EpdArgs& a) {
    const smt::epd::EPDSpec spec = make_spec(a);
    const smt::ScalarField f = load_field(a.phantom, a.volume);
    const smt::CylinderData u =
        smt::epd::epd_trace(f, spec, smt::build_sphere_grid(a.npolar, a.nazimuth), smt::TimeGrid(a.nt));
    smt::io::write_cylinder(a.out, u);
    std::printf("wrote %s (alpha %g, lambda %g)\n", a.out.c_str(), spec.alpha, spec.lambda);
    return 0;
}

int cmd_epd_invert(const EpdArgs& a) {
    const smt::epd::EPDSpec spec = make_spec(a);
    const smt::recon::ReconConfig cfg = make_config(a.grid, a.extent, 0.0, "laplacian-last");
    const smt::CylinderData u = smt::io::read_cylinder(a.data);
    std::optional<smt::ScalarField> reference;
    if (!a.reference.empty()) reference = smt::io::read_phantom_spec(a.reference);
    double violation = 0.0;
    const smt::VolumeGrid rec = smt::epd::epd_invert(u, spec, cfg, &violation);
    smt::io::write_volume(a.out, rec);
    std::printf("wrote %s\n", a.out.c_str());
    std::printf("%-28s %.6e\n", "support_violation", violation);
    if (reference) print_metrics(smt::recon::interior_error(rec, *reference, cfg));
    return 0;
}

int cmd_check(const std::string& suite) {
    const auto& names = smt::checks::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite '" + suite + "'");
    const auto results = smt::checks::run_suite(suite);
    for (const auto& r : results) std::printf("%s\n", smt::checks::format(r).c_str());
    return smt::checks::all_pass(results) ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical-mean tomography and Euler-Poisson-Darboux toolkit"};
    app.set_version_flag("--version", std::string("smt ") + SMT_VERSION);
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");

    PhantomArgs pa;
    auto* phantom = app.add_subcommand("phantom", "Sample a bump phantom and write its analytic spec");
    phantom->add_option("--kind", pa.kind, "radial-bump, shifted-bump or sum-of-bumps")->capture_default_str();
    phantom->add_option("--center", pa.center, "Bump center x,y,z")->capture_default_str();
    phantom->add_option("--radius", pa.radius, "Bump radius")->capture_default_str();
    phantom->add_option("--exponent", pa.exponent, "Bump exponent p >= 2")->capture_default_str();
    phantom->add_option("--amplitude", pa.amplitude, "Bump amplitude")->capture_default_str();
    phantom->add_option("--bump", pa.bumps, "Bump cx,cy,cz,R,p[,a]; repeat for sum-of-bumps");
    phantom->add_option("--grid", pa.grid, "Samples per axis")->capture_default_str();
    phantom->add_option("--extent", pa.extent, "Grid half-width L")->capture_default_str();
    phantom->add_option("--out", pa.out, "Volume file")->required();
    phantom->add_option("--spec-out", pa.spec_out, "Spec sidecar (default: <out> with .spec)");
    phantom->add_option("--slice", pa.slice, "Write the central z-slice as PGM");

    ForwardArgs fa;
    auto* forward = app.add_subcommand("forward", "Spherical means about the detector sphere");
    forward->add_option("--phantom", fa.phantom, "Phantom spec file");
    forward->add_option("--volume", fa.volume, "Volume file (trilinear field)");
    forward->add_option("--npolar", fa.npolar, "Polar nodes")->capture_default_str();
    forward->add_option("--nazimuth", fa.nazimuth, "Azimuth nodes")->capture_default_str();
    forward->add_option("--nt", fa.nt, "Time samples on (0, 2]")->capture_default_str();
    forward->add_option("--out", fa.out, "Cylinder file")->required();

    InvertArgs ia;
    auto* invert = app.add_subcommand("invert", "Reconstruct f from spherical means");
    invert->add_option("--data", ia.data, "Cylinder file")->required();
    invert->add_option("--grid", ia.grid, "Output samples per axis")->capture_default_str();
    invert->add_option("--extent", ia.extent, "Output half-width L")->capture_default_str();
    invert->add_option("--margin", ia.margin, "Metric region margin beyond the support")->capture_default_str();
    invert->add_option("--variant", ia.variant, "laplacian-last or laplacian-first")->capture_default_str();
    invert->add_option("--reference", ia.reference, "Phantom spec for error metrics");
    invert->add_flag("--skip-identity", ia.skip_identity, "Do not run the intermediate-identity diagnostic");
    invert->add_option("--out", ia.out, "Volume file")->required();
    invert->add_option("--slice", ia.slice, "Write the central z-slice as PGM");

    EpdArgs ea;
    auto* epd = app.add_subcommand("epd", "Euler-Poisson-Darboux traces and inversion");
    epd->require_subcommand(1);
    auto* trace = epd->add_subcommand("trace", "Trace of the EPD solution on the detector cylinder");
    auto* einv = epd->add_subcommand("invert", "Recover the initial data from a trace");
    for (auto* sub : {trace, einv}) {
        sub->add_option("--alpha", ea.alpha, "Order alpha >= -1")->capture_default_str();
        sub->add_option("--lambda", ea.lambda, "Bessel parameter lambda >= 0")->capture_default_str();
        sub->add_option("--out", ea.out, "Output file")->required();
    }
    trace->add_option("--phantom", ea.phantom, "Phantom spec file");
    trace->add_option("--volume", ea.volume, "Volume file (trilinear field)");
    trace->add_option("--npolar", ea.npolar, "Polar nodes")->capture_default_str();
    trace->add_option("--nazimuth", ea.nazimuth, "Azimuth nodes")->capture_default_str();
    trace->add_option("--nt", ea.nt, "Time samples on (0, 2]")->capture_default_str();
    einv->add_option("--data", ea.data, "Trace cylinder file")->required();
    einv->add_option("--grid", ea.grid, "Output samples per axis")->capture_default_str();
    einv->add_option("--extent", ea.extent, "Output half-width L")->capture_default_str();
    einv->add_option("--reference", ea.reference, "Phantom spec for error metrics");

    std::string suite;
    auto* check = app.add_subcommand("check", "Run a property suite (ek, gek, rl, bessel, identity, radial, epd)");
    check->add_option("suite", suite, "Suite name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    std::string name = app.get_subcommands().front()->get_name();
    if (name == "epd") name += " " + epd->get_subcommands().front()->get_name();
    try {
        smt::set_num_threads(threads);
        if (*phantom) return cmd_phantom(pa);
        if (*forward) return cmd_forward(fa);
        if (*invert) return cmd_invert(ia);
        if (*trace) return cmd_epd_trace(ea);
        if (*einv) return cmd_epd_invert(ea);
        if (*check) return cmd_check(suite);
    } catch (const UsageError& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const smt::io::FormatError& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return kExitIO;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return kExitIO;
    } catch (const std::invalid_argument& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::out_of_range& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return kExitIO;
    }
    return kExitUsage;
}
