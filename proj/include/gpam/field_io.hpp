#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gpam/enhancement.hpp"
#include "gpam/pde_solver.hpp"

namespace gpam {

// Text field format: header `GPAM-FIELD v1 n=<n>`, then one `k1 k2 re im`
// line per nonzero mode. Writers emit lexicographic order with round-trip
// precision; readers accept any order, `#` comments and blank lines.
void write_field(std::ostream& out, const SpectralField& u);
SpectralField read_field(std::istream& in);
void write_field(const std::filesystem::path& path, const SpectralField& u);
SpectralField read_field(const std::filesystem::path& path);

// `<stem>.enh` holds `GPAM-ENH v1 alpha=<α>` followed by `first=` and
// `second=` lines naming field files in the same directory.
void write_enhanced(const std::filesystem::path& manifest,
                    const EnhancedPair& pair, double alpha);
EnhancedPair read_enhanced(const std::filesystem::path& manifest,
                           double* alpha = nullptr);

// Trajectory directory: manifest.txt (key=value) plus state_<i>.field files.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj);
Trajectory read_trajectory(const std::filesystem::path& dir);

std::string format_double(double v);

}  // namespace gpam
