#include "gpam/field_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gpam/config.hpp"
#include "gpam/report.hpp"

namespace gpam {
namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field(std::ostream& out, const SpectralField& u) {
  const Grid& g = u.grid();
  const int n = g.n();
  out << "GPAM-FIELD v1 n=" << n << '\n';
  for (int k1 = -n / 2; k1 < n / 2; ++k1) {
    for (int k2 = -n / 2; k2 < n / 2; ++k2) {
      const cplx c = u.coeff(k1, k2);
      if (c == cplx{0.0, 0.0}) continue;
      out << k1 << ' ' << k2 << ' ' << format_double(c.real()) << ' '
          << format_double(c.imag()) << '\n';
    }
  }
}

SpectralField read_field(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    fail(ErrorCode::Io, "field file is empty");
  int n = 0;
  {
    std::istringstream hs(line);
    std::string magic, version, size;
    hs >> magic >> version >> size;
    require(magic == "GPAM-FIELD" && version == "v1" &&
                size.rfind("n=", 0) == 0,
            ErrorCode::Io, "bad field header: '" + line + "'");
    const char* first = size.data() + 2;
    const char* last = size.data() + size.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    require(ec == std::errc() && ptr == last, ErrorCode::Io,
            "bad grid size in field header");
  }
  Grid grid(n);
  SpectralField u(grid);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    long long k1, k2;
    double re, im;
    std::string extra;
    if (!(ls >> k1 >> k2 >> re >> im) || (ls >> extra))
      fail(ErrorCode::Io, "bad field line " + std::to_string(line_no));
    require(k1 >= -n / 2 && k1 < n / 2 && k2 >= -n / 2 && k2 < n / 2,
            ErrorCode::Io,
            "mode out of range on line " + std::to_string(line_no));
    u.set_coeff(static_cast<int>(k1), static_cast<int>(k2), {re, im});
  }
  require(u.hermitian_defect() <= 1e-12 * std::max(1.0, u.coeff_max()),
          ErrorCode::SymmetryViolation,
          "field file coefficients are not Hermitian-symmetric");
  return u;
}

void write_field(const fs::path& path, const SpectralField& u) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::Io,
          "cannot open '" + path.string() + "' for writing");
  write_field(out, u);
  require(static_cast<bool>(out), ErrorCode::Io,
          "write failed for '" + path.string() + "'");
}

SpectralField read_field(const fs::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Io,
          "cannot open '" + path.string() + "'");
  return read_field(in);
}

void write_enhanced(const fs::path& manifest, const EnhancedPair& pair,
                    double alpha) {
  const fs::path dir = manifest.parent_path();
  const std::string stem = manifest.stem().string();
  const std::string first = stem + ".first.field";
  const std::string second = stem + ".second.field";
  write_field(dir / first, pair.first);
  write_field(dir / second, pair.second);
  std::ofstream out(manifest);
  require(static_cast<bool>(out), ErrorCode::Io,
          "cannot open '" + manifest.string() + "' for writing");
  out << "GPAM-ENH v1 alpha=" << format_double(alpha) << '\n'
      << "first=" << first << '\n'
      << "second=" << second << '\n';
}

EnhancedPair read_enhanced(const fs::path& manifest, double* alpha) {
  std::ifstream in(manifest);
  require(static_cast<bool>(in), ErrorCode::Io,
          "cannot open '" + manifest.string() + "'");
  std::string header;
  std::getline(in, header);
  require(header.rfind("GPAM-ENH v1 alpha=", 0) == 0, ErrorCode::Io,
          "bad enhanced-pair header");
  if (alpha) *alpha = std::stod(header.substr(18));
  std::stringstream rest;
  rest << in.rdbuf();
  const Config cfg = Config::parse(rest.str());
  const fs::path dir = manifest.parent_path();
  return {read_field(dir / cfg.get_string("first")),
          read_field(dir / cfg.get_string("second"))};
}

void write_trajectory(const fs::path& dir, const Trajectory& traj) {
  fs::create_directories(dir);
  Config m;
  m.set("kind", "trajectory");
  m.set("version", code_version());
  m.set("scheme", scheme_name(traj.config.scheme));
  m.set("T", format_double(traj.config.T));
  m.set("dt", format_double(traj.config.dt));
  m.set("snap_every", std::to_string(traj.config.snap_every));
  m.set("picard_tol", format_double(traj.config.picard_tol));
  m.set("picard_max_iter", std::to_string(traj.config.picard_max_iter));
  m.set("seed", std::to_string(traj.provenance.seed));
  m.set("h_hash", traj.provenance.h_hash);
  m.set("c", format_double(traj.provenance.c));
  m.set("f", traj.provenance.f_name);
  m.set("exploded", traj.exploded ? "true" : "false");
  m.set("explosion_time", format_double(traj.explosion_time));
  m.set("snapshots", std::to_string(traj.states.size()));
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "state_%06zu.field", i);
    write_field(dir / name, traj.states[i]);
    m.set("t." + std::to_string(i), format_double(traj.times[i]));
    m.set("file." + std::to_string(i), name);
  }
  m.write(dir / "manifest.txt");
}

Trajectory read_trajectory(const fs::path& dir) {
  const Config m = Config::read(dir / "manifest.txt");
  require(m.get_string("kind") == "trajectory", ErrorCode::Io,
          "'" + dir.string() + "' is not a trajectory directory");
  Trajectory traj;
  traj.config.scheme = parse_scheme(m.get_string("scheme"));
  traj.config.T = m.get_double("T");
  traj.config.dt = m.get_double("dt");
  traj.config.snap_every = m.get_int("snap_every");
  traj.config.picard_tol = m.get_double("picard_tol");
  traj.config.picard_max_iter = m.get_int("picard_max_iter");
  traj.provenance.seed = m.get_uint("seed");
  traj.provenance.h_hash = m.get_string("h_hash");
  traj.provenance.c = m.get_double("c");
  traj.provenance.f_name = m.get_string("f");
  traj.exploded = m.get_bool("exploded");
  traj.explosion_time = m.get_double("explosion_time");
  const int count = m.get_int("snapshots");
  for (int i = 0; i < count; ++i) {
    traj.times.push_back(m.get_double("t." + std::to_string(i)));
    traj.states.push_back(read_field(dir / m.get_string("file." + std::to_string(i))));
  }
  return traj;
}

}  // namespace gpam
