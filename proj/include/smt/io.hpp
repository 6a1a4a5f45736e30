#pragma once

#include "smt/fields.hpp"
#include "smt/grids.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace smt::io {

/// Raised for unreadable files and malformed contents.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Volume file: a 64-byte header line "SMTVOL n=3 G=<int> L=<float>\n"
/// (space padded) followed by G^3 little-endian doubles, x fastest.
void write_volume(const std::filesystem::path& path, const VolumeGrid& v);
VolumeGrid read_volume(const std::filesystem::path& path);

/// Cylinder file: header "SMTCYL npolar=<int> nazi=<int> nt=<int> tmax=<float>\n",
/// then node coordinates (N x 3), weights (N), and samples (N x nt, row-major),
/// all little-endian doubles.
void write_cylinder(const std::filesystem::path& path, const CylinderData& data);
CylinderData read_cylinder(const std::filesystem::path& path);

/// Two-column CSV "t,value" with 17 significant digits.
void write_profile_csv(const std::filesystem::path& path, const RadialProfile& p);
RadialProfile read_profile_csv(const std::filesystem::path& path);

/// Text description of a bump phantom:
///   SMTPHANTOM kind=<radial-bump|shifted-bump|sum-of-bumps>
///   bump <cx> <cy> <cz> <radius> <exponent> <amplitude>
void write_phantom_spec(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_phantom_spec(const std::filesystem::path& path);

/// Writes slice z = coord(k) as a 16-bit binary PGM (P5, maxval 65535) with
/// affine min-max scaling; the scaling is recorded in "<path>.txt".
void write_slice_pgm(const std::filesystem::path& path, const VolumeGrid& v, int k);

}  // namespace smt::io
