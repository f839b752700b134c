// gpam command-line front end. Talks to the library only through gpam.h.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gpam/gpam.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct Failure {
  gpam_status status;
};

void check(gpam_status s) {
  if (s != GPAM_OK) throw Failure{s};
}

int exit_code_for(gpam_status s) {
  switch (s) {
    case GPAM_ERR_CONFIG:
    case GPAM_ERR_INVALID_ARGUMENT:
    case GPAM_ERR_OUT_OF_RANGE:
    case GPAM_ERR_IO:
    case GPAM_ERR_NONZERO_MEAN:
    case GPAM_ERR_GRID_MISMATCH:
    case GPAM_ERR_BANDWIDTH:
    case GPAM_ERR_SYMMETRY:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    throw Failure{GPAM_ERR_CONFIG};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// key=value manifest beside an output file.
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ofstream out(path);
  if (!out) throw Failure{GPAM_ERR_IO};
  out << "version=" << gpam_version() << "\n";
  for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
}

std::string partition_hash(int n) {
  gpam_partition* p = nullptr;
  check(gpam_partition_create(n, &p));
  char buf[64];
  const gpam_status s = gpam_partition_hash(p, buf, sizeof buf);
  gpam_partition_free(p);
  check(s);
  return buf;
}

struct FieldHandle {
  gpam_field* f = nullptr;
  ~FieldHandle() { gpam_field_free(f); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gpam: spectral laboratory for the generalized parabolic "
               "Anderson model on the 2-torus"};
  app.require_subcommand(1);

  // noise
  auto* noise = app.add_subcommand("noise", "white-noise samples and constants");
  noise->require_subcommand(1);
  auto* nsample = noise->add_subcommand("sample", "draw a white-noise field");
  int ns_n = 0, ns_band = -1;
  std::uint64_t ns_seed = 1, ns_stream = 0;
  std::string ns_out;
  nsample->add_option("--n", ns_n, "grid size")->required();
  nsample->add_option("--seed", ns_seed, "RNG seed");
  nsample->add_option("--stream", ns_stream, "RNG stream id");
  nsample->add_option("--band", ns_band, "max |k_i| (default n/2-1)");
  nsample->add_option("--out", ns_out, "output field file")->required();

  auto* nconst = noise->add_subcommand("constants", "lattice sums c_eps, b_eps");
  std::string nc_psi = "sharp", nc_csv;
  std::vector<double> nc_eps;
  int nc_kcut = 0;
  nconst->add_option("--psi", nc_psi, "gaussian, sharp or fejer");
  nconst->add_option("--eps-list", nc_eps, "comma-separated eps values")
      ->required()
      ->delimiter(',');
  nconst->add_option("--k-cut", nc_kcut, "box cut-off for the lattice sums")
      ->required();
  nconst->add_option("--csv", nc_csv, "output CSV")->required();

  // partition
  auto* part = app.add_subcommand("partition", "Littlewood-Paley partition");
  part->require_subcommand(1);
  auto* pdump = part->add_subcommand("dump", "CSV of (j, |k|, weight)");
  int pd_n = 0;
  std::string pd_csv;
  pdump->add_option("--n", pd_n, "grid size")->required();
  pdump->add_option("--csv", pd_csv, "output CSV")->required();

  // enhance
  auto* enh = app.add_subcommand("enhance", "lift a field to (theta, theta o K theta - c)");
  std::string en_theta, en_out;
  double en_c = 0.0, en_alpha = 0.75;
  enh->add_option("--theta", en_theta, "zero-mean field file")->required();
  enh->add_option("--c", en_c, "renormalization constant")->required();
  enh->add_option("--alpha", en_alpha, "regularity index recorded in the pair");
  enh->add_option("--out", en_out, "enhanced-pair manifest path")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "classical renormalized solver");
  solve->set_help_flag("--help", "Print this help message and exit");
  std::string sv_u0, sv_h, sv_f = "identity", sv_scheme = "etd2rk", sv_out;
  double sv_c = 0.0, sv_T = 1.0, sv_dt = 1e-3;
  int sv_snap = 1;
  solve->add_option("--u0", sv_u0, "initial field file")->required();
  solve->add_option("--h", sv_h, "zero-mean potential field file")->required();
  solve->add_option("--c", sv_c, "renormalization constant")->required();
  solve->add_option("--f", sv_f, "identity, constant_one, sine or bump");
  solve->add_option("--T", sv_T, "horizon");
  solve->add_option("--dt", sv_dt, "time step");
  solve->add_option("--scheme", sv_scheme, "etd1, etd2rk or picard");
  solve->add_option("--snap-every", sv_snap, "store every k-th step");
  solve->add_option("--out", sv_out, "trajectory directory")->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  std::string ex_name, ex_config, ex_out, ex_range;
  std::vector<std::string> ex_set;
  std::uint64_t ex_seed = 0;
  double ex_alpha = 0.0;
  int ex_jobs = 1;
  exp->add_option("name", ex_name, "experiment name")->required();
  exp->add_option("--config", ex_config, "flat key=value config file");
  exp->add_option("--out", ex_out, "output directory")->required();
  auto* o_seed = exp->add_option("--seed", ex_seed, "master seed");
  auto* o_alpha = exp->add_option("--alpha", ex_alpha, "regularity index");
  exp->add_option("--n", ex_range, "level range a..b");
  exp->add_option("--set", ex_set, "key=value override (repeatable)");
  exp->add_option("--jobs", ex_jobs, "worker threads")->check(CLI::PositiveNumber);

  // verify
  auto* ver = app.add_subcommand("verify", "recompute verdicts from stored CSVs");
  std::string vf_dir;
  ver->add_option("--dir", vf_dir, "directory holding reports")->required();

  auto* version = app.add_subcommand("version", "print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*version) {
      std::cout << gpam_version() << "\n";
      return 0;
    }
    if (*nsample) {
      FieldHandle f;
      check(gpam_noise_sample(ns_n, ns_seed, ns_stream, ns_band, &f.f));
      check(gpam_field_write(f.f, ns_out.c_str()));
      char hash[64];
      check(gpam_field_hash(f.f, hash, sizeof hash));
      write_manifest(ns_out + ".manifest.txt",
                     {{"command", "noise sample"}, {"n", std::to_string(ns_n)},
                      {"seed", std::to_string(ns_seed)},
                      {"stream", std::to_string(ns_stream)},
                      {"band", std::to_string(ns_band)}, {"field_hash", hash}});
      return 0;
    }
    if (*nconst) {
      std::ofstream csv(nc_csv);
      if (!csv) throw Failure{GPAM_ERR_IO};
      csv << "eps,c_eps,b_eps,tail_bound\r\n";
      for (double eps : nc_eps) {
        double c = 0, b = 0, tail = 0;
        check(gpam_noise_constants(nc_psi.c_str(), eps, nc_kcut, &c, &b, &tail));
        csv << fmt(eps) << ',' << fmt(c) << ',' << fmt(b) << ',' << fmt(tail)
            << "\r\n";
      }
      std::string list;
      for (double e : nc_eps) list += (list.empty() ? "" : ",") + fmt(e);
      write_manifest(nc_csv + ".manifest.txt",
                     {{"command", "noise constants"}, {"psi", nc_psi},
                      {"eps_list", list}, {"k_cut", std::to_string(nc_kcut)}});
      return 0;
    }
    if (*pdump) {
      gpam_partition* p = nullptr;
      check(gpam_partition_create(pd_n, &p));
      const gpam_status s = gpam_partition_dump_csv(p, pd_csv.c_str());
      gpam_partition_free(p);
      check(s);
      write_manifest(pd_csv + ".manifest.txt",
                     {{"command", "partition dump"}, {"n", std::to_string(pd_n)},
                      {"partition_hash", partition_hash(pd_n)}});
      return 0;
    }
    if (*enh) {
      FieldHandle theta;
      check(gpam_field_read(en_theta.c_str(), &theta.f));
      const int n = gpam_field_grid_size(theta.f);
      gpam_partition* p = nullptr;
      check(gpam_partition_create(n, &p));
      const gpam_status s =
          gpam_enhance_write(theta.f, en_c, p, en_alpha, en_out.c_str());
      gpam_partition_free(p);
      check(s);
      char hash[64];
      check(gpam_field_hash(theta.f, hash, sizeof hash));
      write_manifest(en_out + ".manifest.txt",
                     {{"command", "enhance"}, {"theta", en_theta},
                      {"theta_hash", hash}, {"c", fmt(en_c)},
                      {"alpha", fmt(en_alpha)},
                      {"partition_hash", partition_hash(n)}});
      return 0;
    }
    if (*solve) {
      FieldHandle u0, h;
      check(gpam_field_read(sv_u0.c_str(), &u0.f));
      check(gpam_field_read(sv_h.c_str(), &h.f));
      gpam_solve_options opt;
      gpam_solve_options_default(&opt);
      opt.T = sv_T;
      opt.dt = sv_dt;
      opt.scheme = sv_scheme.c_str();
      opt.snap_every = sv_snap;
      int exploded = 0;
      check(gpam_solve(u0.f, h.f, sv_c, sv_f.c_str(), &opt, sv_out.c_str(),
                       &exploded));
      if (exploded) {
        std::cerr << "warning: non-finite state; trajectory truncated\n";
        return kExitRuntime;
      }
      return 0;
    }
    if (*exp) {
      std::string text;
      if (!ex_config.empty()) text = slurp(ex_config) + "\n";
      if (*o_seed) text += "seed=" + std::to_string(ex_seed) + "\n";
      if (*o_alpha) text += "alpha=" + fmt(ex_alpha) + "\n";
      if (!ex_range.empty()) text += "n=" + ex_range + "\n";
      for (const auto& kv : ex_set) text += kv + "\n";
      int passed = 0;
      check(gpam_experiment_run(ex_name.c_str(), text.c_str(), ex_jobs,
                                ex_out.c_str(), &passed));
      std::cout << slurp((fs::path(ex_out) / "verdict.txt").string());
      return passed ? 0 : kExitVerdict;
    }
    if (*ver) {
      int passed = 0;
      std::vector<char> summary(1 << 16);
      check(gpam_experiment_verify(vf_dir.c_str(), &passed, summary.data(),
                                   summary.size()));
      std::cout << summary.data();
      return passed ? 0 : kExitVerdict;
    }
  } catch (const Failure& f) {
    std::cerr << "error (" << gpam_status_name(f.status)
              << "): " << gpam_last_error() << "\n";
    return exit_code_for(f.status);
  }
  return kExitUsage;
}
