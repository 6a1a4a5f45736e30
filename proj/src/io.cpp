#include "smt/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

namespace smt::io {

namespace {

constexpr std::size_t kVolumeHeaderBytes = 64;

std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

void write_le(std::ostream& os, std::span<const double> data) {
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size_bytes()));
    } else {
        for (double d : data) {
            auto bits = std::bit_cast<std::uint64_t>(d);
            char bytes[8];
            for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
            os.write(bytes, 8);
        }
    }
}

void read_le(std::istream& is, std::span<double> data, const std::string& what) {
    std::vector<unsigned char> raw(data.size() * 8);
    is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(is.gcount()) != raw.size()) throw FormatError(what + ": truncated data");
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(raw[8 * i + b]) << (8 * b);
        data[i] = std::bit_cast<double>(bits);
    }
}

// Parses "MAGIC key=value key=value ..." into a map; throws on a wrong magic.
std::map<std::string, std::string> parse_header(const std::string& line, const std::string& magic,
                                                const std::string& what) {
    std::istringstream is(line);
    std::string word;
    if (!(is >> word) || word != magic) throw FormatError(what + ": bad magic, expected " + magic);
    std::map<std::string, std::string> kv;
    while (is >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos || eq == 0) throw FormatError(what + ": malformed header field '" + word + "'");
        kv[word.substr(0, eq)] = word.substr(eq + 1);
    }
    return kv;
}

template <class T>
T header_value(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& what) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw FormatError(what + ": header lacks '" + key + "'");
    std::istringstream is(it->second);
    T value{};
    if (!(is >> value) || !is.eof()) throw FormatError(what + ": bad value for '" + key + "'");
    return value;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream os(path, mode);
    if (!os) throw FormatError("cannot open '" + path.string() + "' for writing");
    return os;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream is(path, mode);
    if (!is) throw FormatError("cannot open '" + path.string() + "'");
    return is;
}

}  // namespace

void write_volume(const std::filesystem::path& path, const VolumeGrid& v) {
    std::string header = "SMTVOL n=3 G=" + std::to_string(v.G) + " L=" + format_double(v.L);
    if (header.size() > kVolumeHeaderBytes - 1) throw FormatError("volume header too long");
    header.resize(kVolumeHeaderBytes - 1, ' ');
    header.push_back('\n');
    auto os = open_out(path, std::ios::binary);
    os.write(header.data(), static_cast<std::streamsize>(header.size()));
    write_le(os, v.values);
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

VolumeGrid read_volume(const std::filesystem::path& path) {
    const std::string what = "volume '" + path.string() + "'";
    auto is = open_in(path, std::ios::binary);
    std::string header(kVolumeHeaderBytes, '\0');
    is.read(header.data(), static_cast<std::streamsize>(header.size()));
    if (is.gcount() != static_cast<std::streamsize>(kVolumeHeaderBytes) || header.back() != '\n')
        throw FormatError(what + ": malformed header");
    header.pop_back();
    const auto kv = parse_header(header, "SMTVOL", what);
    if (header_value<int>(kv, "n", what) != 3) throw FormatError(what + ": only n=3 volumes are supported");
    const int G = header_value<int>(kv, "G", what);
    const double L = header_value<double>(kv, "L", what);
    if (G < 8 || G > 4096 || !(L > 0.0)) throw FormatError(what + ": invalid grid parameters");
    VolumeGrid v(G, L);
    read_le(is, v.values, what);
    return v;
}

void write_cylinder(const std::filesystem::path& path, const CylinderData& data) {
    auto os = open_out(path, std::ios::binary);
    os << "SMTCYL npolar=" << data.sphere.n_polar << " nazi=" << data.sphere.n_azimuth
       << " nt=" << data.times.count << " tmax=" << format_double(data.times.t_max) << '\n';
    std::vector<double> coords;
    coords.reserve(3 * data.sphere.size());
    for (const Point3& p : data.sphere.nodes) coords.insert(coords.end(), p.begin(), p.end());
    write_le(os, coords);
    write_le(os, data.sphere.weights);
    write_le(os, data.samples);
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

CylinderData read_cylinder(const std::filesystem::path& path) {
    const std::string what = "cylinder '" + path.string() + "'";
    auto is = open_in(path, std::ios::binary);
    std::string header;
    if (!std::getline(is, header) || header.size() > 256) throw FormatError(what + ": malformed header");
    const auto kv = parse_header(header, "SMTCYL", what);
    const int npolar = header_value<int>(kv, "npolar", what);
    const int nazi = header_value<int>(kv, "nazi", what);
    const long nt = header_value<long>(kv, "nt", what);
    const double tmax = header_value<double>(kv, "tmax", what);
    if (npolar < 2 || nazi < 4 || nt < 4 || !(tmax > 0.0) || npolar > 100000 || nazi > 100000 || nt > 10000000)
        throw FormatError(what + ": invalid grid parameters");

    SphereGrid sphere;
    sphere.n_polar = npolar;
    sphere.n_azimuth = nazi;
    sphere.degree = std::min(2 * npolar - 1, nazi - 1);
    const std::size_t n = static_cast<std::size_t>(npolar) * nazi;
    std::vector<double> coords(3 * n);
    read_le(is, coords, what);
    sphere.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) sphere.nodes[i] = {coords[3 * i], coords[3 * i + 1], coords[3 * i + 2]};
    sphere.weights.resize(n);
    read_le(is, sphere.weights, what);
    CylinderData data(std::move(sphere), TimeGrid(static_cast<std::size_t>(nt), tmax));
    read_le(is, data.samples, what);
    return data;
}

void write_profile_csv(const std::filesystem::path& path, const RadialProfile& p) {
    auto os = open_out(path);
    os << "t,value\n" << std::setprecision(17);
    for (std::size_t k = 0; k < p.size(); ++k) os << p.node(k) << ',' << p.values[k] << '\n';
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

RadialProfile read_profile_csv(const std::filesystem::path& path) {
    const std::string what = "profile '" + path.string() + "'";
    auto is = open_in(path);
    std::string line;
    std::vector<double> t, v;
    while (std::getline(is, line)) {
        if (line.empty() || line == "t,value") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw FormatError(what + ": expected two columns");
        try {
            t.push_back(std::stod(line.substr(0, comma)));
            v.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw FormatError(what + ": bad number in '" + line + "'");
        }
    }
    if (t.size() < 2) throw FormatError(what + ": fewer than two samples");
    const double step = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t k = 0; k < t.size(); ++k)
        if (std::fabs(t[k] - (t.front() + k * step)) > 1e-9 * std::max(1.0, std::fabs(t[k])))
            throw FormatError(what + ": grid is not uniform");
    return RadialProfile(t.front(), step, std::move(v));
}

void write_phantom_spec(const std::filesystem::path& path, const ScalarField& f) {
    if (!f.phantom_kind() || f.bumps().empty()) throw FormatError("only bump phantoms can be written as a spec");
    auto os = open_out(path);
    os << "SMTPHANTOM kind=" << to_string(*f.phantom_kind()) << '\n' << std::setprecision(17);
    for (const Bump& b : f.bumps())
        os << "bump " << b.center[0] << ' ' << b.center[1] << ' ' << b.center[2] << ' ' << b.radius << ' '
           << b.exponent << ' ' << b.amplitude << '\n';
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

ScalarField read_phantom_spec(const std::filesystem::path& path) {
    const std::string what = "phantom spec '" + path.string() + "'";
    auto is = open_in(path);
    std::string line;
    if (!std::getline(is, line)) throw FormatError(what + ": empty file");
    const auto kv = parse_header(line, "SMTPHANTOM", what);
    const PhantomKind kind = [&] {
        try {
            return phantom_kind_from_string(header_value<std::string>(kv, "kind", what));
        } catch (const std::invalid_argument& e) {
            throw FormatError(what + ": " + e.what());
        }
    }();
    std::vector<Bump> bumps;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        Bump b;
        if (!(ls >> tag) || tag != "bump" ||
            !(ls >> b.center[0] >> b.center[1] >> b.center[2] >> b.radius >> b.exponent >> b.amplitude))
            throw FormatError(what + ": malformed line '" + line + "'");
        bumps.push_back(b);
    }
    // geometry errors propagate as std::invalid_argument
    return make_phantom(kind, std::move(bumps));
}

void write_slice_pgm(const std::filesystem::path& path, const VolumeGrid& v, int k) {
    if (k < 0 || k >= v.G) throw std::out_of_range("write_slice_pgm: slice index out of range");
    double lo = v.at(0, 0, k), hi = lo;
    for (int j = 0; j < v.G; ++j)
        for (int i = 0; i < v.G; ++i) {
            lo = std::min(lo, v.at(i, j, k));
            hi = std::max(hi, v.at(i, j, k));
        }
    const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;
    auto os = open_out(path, std::ios::binary);
    os << "P5\n" << v.G << ' ' << v.G << "\n65535\n";
    // top row first: flip y so the image has y pointing up
    for (int j = v.G - 1; j >= 0; --j)
        for (int i = 0; i < v.G; ++i) {
            const auto q = static_cast<std::uint16_t>(std::lround((v.at(i, j, k) - lo) * scale));
            const char bytes[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xff)};
            os.write(bytes, 2);
        }
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
    auto side = open_out(path.string() + ".txt");
    side << std::setprecision(17) << "axis=z slice=" << k << " z=" << v.coord(k) << '\n'
         << "min=" << lo << " max=" << hi << '\n'
         << "value = min + pixel * (max - min) / 65535\n";
}

}  // namespace smt::io
