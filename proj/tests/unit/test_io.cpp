#include "doctest.h"
#include "smt/io.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

using namespace smt;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "smt_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    os << text;
}

}  // namespace

TEST_CASE("volume roundtrip is bit exact") {
    VolumeGrid v(8, 1.25);
    for (std::size_t i = 0; i < v.size(); ++i) v.values[i] = 0.1 * static_cast<double>(i) - 3.0 / 7.0;
    const fs::path p = scratch("v.vol");
    io::write_volume(p, v);
    CHECK(fs::file_size(p) == 64 + 8 * v.size());
    const VolumeGrid w = io::read_volume(p);
    CHECK(w.G == 8);
    CHECK(w.L == 1.25);
    CHECK(w.values == v.values);
}

TEST_CASE("cylinder roundtrip is bit exact") {
    CylinderData d(build_sphere_grid(3, 6), TimeGrid(7, 2.0));
    for (std::size_t i = 0; i < d.samples.size(); ++i) d.samples[i] = 1.0 / (1.0 + i);
    const fs::path p = scratch("d.cyl");
    io::write_cylinder(p, d);
    const CylinderData e = io::read_cylinder(p);
    CHECK(e.sphere.n_polar == 3);
    CHECK(e.sphere.n_azimuth == 6);
    CHECK(e.times.count == 7);
    CHECK(e.samples == d.samples);
    CHECK(e.sphere.weights == d.sphere.weights);
    CHECK(e.sphere.nodes == d.sphere.nodes);
}

TEST_CASE("profile CSV roundtrip") {
    const RadialProfile p(0.0125, 0.025, {1.0, -2.5, 1.0 / 3.0, 4e-17});
    const fs::path path = scratch("p.csv");
    io::write_profile_csv(path, p);
    const RadialProfile q = io::read_profile_csv(path);
    CHECK(q.values == p.values);
    CHECK(q.start == doctest::Approx(p.start).epsilon(1e-15));
    CHECK(q.step == doctest::Approx(p.step).epsilon(1e-13));
}

TEST_CASE("phantom spec roundtrip") {
    const ScalarField f =
        make_phantom(PhantomKind::sum_of_bumps, {Bump{{0.2, 0.1, 0}, 0.3, 3, 1.0}, Bump{{-0.4, 0, 0.1}, 0.2, 4, -0.5}});
    const fs::path p = scratch("f.spec");
    io::write_phantom_spec(p, f);
    const ScalarField g = io::read_phantom_spec(p);
    CHECK(g.bumps().size() == 2);
    CHECK(g.phantom_kind() == PhantomKind::sum_of_bumps);
    for (const Point3& x : {Point3{0.2, 0.1, 0.05}, Point3{-0.35, 0.02, 0.1}, Point3{0, 0, 0}})
        CHECK(g(x) == f(x));
}

TEST_CASE("format errors") {
    CHECK_THROWS_AS(io::read_volume(scratch("does-not-exist.vol")), io::FormatError);

    const fs::path bad = scratch("bad.vol");
    write_text(bad, "NOTAVOLUME G=8 L=1\n");
    CHECK_THROWS_AS(io::read_volume(bad), io::FormatError);
    CHECK_THROWS_AS(io::read_cylinder(bad), io::FormatError);

    VolumeGrid v(8, 1.0);
    const fs::path trunc = scratch("trunc.vol");
    io::write_volume(trunc, v);
    fs::resize_file(trunc, 64 + 100);
    CHECK_THROWS_AS(io::read_volume(trunc), io::FormatError);

    const fs::path csv = scratch("bad.csv");
    write_text(csv, "t,value\n0.1,1\n0.2\n");
    CHECK_THROWS_AS(io::read_profile_csv(csv), io::FormatError);
    write_text(csv, "t,value\n0.1,1\n0.2,2\n0.5,3\n");
    CHECK_THROWS_AS(io::read_profile_csv(csv), io::FormatError);

    const fs::path spec = scratch("bad.spec");
    write_text(spec, "SMTPHANTOM kind=shifted-bump\nbump 0.5 0 0 0.8 3 1\n");
    // a well-formed spec with invalid geometry is a domain error, not a format error
    CHECK_THROWS_AS(io::read_phantom_spec(spec), std::invalid_argument);
    write_text(spec, "SMTPHANTOM kind=shifted-bump\nbump 0.5 0 0.8 3 1\n");
    CHECK_THROWS_AS(io::read_phantom_spec(spec), io::FormatError);
    write_text(spec, "SMTPHANTOM kind=cube\nbump 0 0 0 0.5 3 1\n");
    CHECK_THROWS_AS(io::read_phantom_spec(spec), io::FormatError);

    const ScalarField generic([](const Point3&) { return 1.0; }, 0.5);
    CHECK_THROWS_AS(io::write_phantom_spec(spec, generic), io::FormatError);
}

TEST_CASE("PGM slice with scaling sidecar") {
    VolumeGrid v(8, 1.0);
    for (std::size_t i = 0; i < v.size(); ++i) v.values[i] = static_cast<double>(i % 17);
    const fs::path p = scratch("s.pgm");
    io::write_slice_pgm(p, v, 3);
    CHECK(fs::file_size(p) > 2 * 64);
    CHECK(fs::exists(fs::path(p.string() + ".txt")));
    CHECK_THROWS_AS(io::write_slice_pgm(p, v, 8), std::out_of_range);
}
