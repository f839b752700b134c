#include "gpam/gpam.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "gpam/enhancement.hpp"
#include "gpam/experiments.hpp"
#include "gpam/field_io.hpp"

struct gpam_field {
  gpam::SpectralField value;
};

struct gpam_partition {
  gpam::DyadicPartition value;
};

namespace {

thread_local std::string g_last_error;

template <class F>
gpam_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return GPAM_OK;
  } catch (const gpam::Error& e) {
    g_last_error = e.what();
    return static_cast<gpam_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GPAM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return GPAM_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p)
    gpam::fail(gpam::ErrorCode::InvalidArgument,
               std::string(what) + " must not be null");
}

void copy_out(const std::string& s, char* buf, size_t cap) {
  need(buf, "buffer");
  if (cap == 0) return;
  const size_t len = std::min(s.size(), cap - 1);
  std::memcpy(buf, s.data(), len);
  buf[len] = '\0';
  if (s.size() >= cap)
    gpam::fail(gpam::ErrorCode::OutOfRange, "output buffer too small");
}

}  // namespace

extern "C" {

const char* gpam_version(void) {
  static const std::string v = gpam::code_version();
  return v.c_str();
}

const char* gpam_last_error(void) { return g_last_error.c_str(); }

const char* gpam_status_name(gpam_status s) {
  switch (s) {
    case GPAM_OK: return "ok";
    case GPAM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GPAM_ERR_NONZERO_MEAN: return "nonzero mean";
    case GPAM_ERR_GRID_MISMATCH: return "grid mismatch";
    case GPAM_ERR_BANDWIDTH: return "bandwidth";
    case GPAM_ERR_OUT_OF_RANGE: return "out of range";
    case GPAM_ERR_SYMMETRY: return "symmetry violation";
    case GPAM_ERR_NUMERICAL: return "numerical";
    case GPAM_ERR_IO: return "io";
    case GPAM_ERR_CONFIG: return "config";
    case GPAM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

gpam_status gpam_field_create(int n, gpam_field** out) {
  return guarded([&] {
    need(out, "out");
    *out = new gpam_field{gpam::SpectralField(gpam::Grid(n))};
  });
}

gpam_status gpam_field_read(const char* path, gpam_field** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new gpam_field{gpam::read_field(std::filesystem::path(path))};
  });
}

gpam_status gpam_field_write(const gpam_field* f, const char* path) {
  return guarded([&] {
    need(f, "field");
    need(path, "path");
    gpam::write_field(std::filesystem::path(path), f->value);
  });
}

void gpam_field_free(gpam_field* f) { delete f; }

int gpam_field_grid_size(const gpam_field* f) { return f ? f->value.n() : 0; }

gpam_status gpam_field_get(const gpam_field* f, int k1, int k2, double* re,
                           double* im) {
  return guarded([&] {
    need(f, "field");
    const int n = f->value.n();
    if (k1 < -n / 2 || k1 >= n / 2 || k2 < -n / 2 || k2 >= n / 2)
      gpam::fail(gpam::ErrorCode::OutOfRange, "mode outside the grid");
    const gpam::cplx c = f->value.coeff(k1, k2);
    if (re) *re = c.real();
    if (im) *im = c.imag();
  });
}

gpam_status gpam_field_set_mode(gpam_field* f, int k1, int k2, double re,
                                double im) {
  return guarded([&] {
    need(f, "field");
    f->value.set_real_mode(k1, k2, {re, im});
  });
}

gpam_status gpam_field_hash(const gpam_field* f, char* buf, size_t cap) {
  return guarded([&] {
    need(f, "field");
    copy_out(gpam::field_hash(f->value), buf, cap);
  });
}

gpam_status gpam_field_holder_norm(const gpam_field* f, const gpam_partition* p,
                                   double alpha, double* out) {
  return guarded([&] {
    need(f, "field");
    need(p, "partition");
    need(out, "out");
    *out = gpam::holder_norm(f->value, alpha, p->value);
  });
}

gpam_status gpam_noise_sample(int n, uint64_t seed, uint64_t stream, int band,
                              gpam_field** out) {
  return guarded([&] {
    need(out, "out");
    *out = new gpam_field{
        gpam::sample_white_noise(gpam::Grid(n), seed, stream, band).field};
  });
}

gpam_status gpam_noise_constants(const char* psi, double eps, int k_cut,
                                 double* c_eps, double* b_eps, double* tail) {
  return guarded([&] {
    need(psi, "psi");
    const gpam::Mollifier m = gpam::Mollifier::parse(psi);
    const gpam::LatticeSum c = gpam::renorm_constant(m, eps, k_cut);
    const gpam::LatticeSum b = gpam::mixed_constant(m, eps, k_cut);
    if (c_eps) *c_eps = c.value;
    if (b_eps) *b_eps = b.value;
    if (tail) *tail = std::max(c.tail_bound, b.tail_bound);
  });
}

gpam_status gpam_partition_create(int n, gpam_partition** out) {
  return guarded([&] {
    need(out, "out");
    *out = new gpam_partition{gpam::DyadicPartition(gpam::Grid(n))};
  });
}

void gpam_partition_free(gpam_partition* p) { delete p; }

gpam_status gpam_partition_hash(const gpam_partition* p, char* buf,
                                size_t cap) {
  return guarded([&] {
    need(p, "partition");
    copy_out(p->value.hash(), buf, cap);
  });
}

gpam_status gpam_partition_dump_csv(const gpam_partition* p, const char* path) {
  return guarded([&] {
    need(p, "partition");
    need(path, "path");
    const int h = p->value.grid().n() / 2;
    std::set<long long> radii;
    for (long long a = 0; a <= h; ++a)
      for (long long b = 0; b <= a; ++b) radii.insert(a * a + b * b);
    gpam::CsvTable t;
    t.header = {"j", "k_abs", "weight"};
    for (int j = -1; j <= p->value.j_max(); ++j)
      for (long long r2 : radii) {
        const double r = std::sqrt(static_cast<double>(r2));
        const double w = p->value.weight(j, r);
        if (w != 0.0)
          t.add_row({std::to_string(j), gpam::format_double(r),
                     gpam::format_double(w)});
      }
    gpam::write_csv(path, t);
  });
}

gpam_status gpam_enhance_write(const gpam_field* theta, double c,
                               const gpam_partition* p, double alpha,
                               const char* manifest_path) {
  return guarded([&] {
    need(theta, "theta");
    need(p, "partition");
    need(manifest_path, "path");
    gpam::write_enhanced(manifest_path, gpam::enhance(theta->value, c, p->value),
                         alpha);
  });
}

void gpam_solve_options_default(gpam_solve_options* opt) {
  if (!opt) return;
  const gpam::SolveConfig d;
  opt->T = d.T;
  opt->dt = d.dt;
  opt->scheme = "etd2rk";
  opt->snap_every = d.snap_every;
  opt->picard_tol = d.picard_tol;
  opt->picard_max_iter = d.picard_max_iter;
}

gpam_status gpam_solve(const gpam_field* u0, const gpam_field* h, double c,
                       const char* f, const gpam_solve_options* opt,
                       const char* out_dir, int* exploded) {
  return guarded([&] {
    need(u0, "u0");
    need(h, "h");
    need(f, "f");
    need(opt, "options");
    need(out_dir, "out_dir");
    gpam::SolveConfig cfg;
    cfg.T = opt->T;
    cfg.dt = opt->dt;
    cfg.scheme = gpam::parse_scheme(opt->scheme ? opt->scheme : "etd2rk");
    cfg.snap_every = opt->snap_every;
    cfg.picard_tol = opt->picard_tol;
    cfg.picard_max_iter = opt->picard_max_iter;
    const gpam::Trajectory traj = gpam::solve_classical(
        u0->value, h->value, c, gpam::Nonlinearity::builtin(f), cfg);
    gpam::write_trajectory(out_dir, traj);
    if (exploded) *exploded = traj.exploded ? 1 : 0;
  });
}

gpam_status gpam_experiment_names(char* buf, size_t cap) {
  return guarded([&] {
    std::string s;
    for (const auto& n : gpam::experiment_names()) s += (s.empty() ? "" : ",") + n;
    copy_out(s, buf, cap);
  });
}

gpam_status gpam_experiment_run(const char* name, const char* config_text,
                                int jobs, const char* out_dir, int* passed) {
  return guarded([&] {
    need(name, "name");
    need(out_dir, "out_dir");
    const gpam::Config cfg =
        gpam::Config::parse(config_text ? config_text : "");
    const gpam::ExperimentReport rep =
        gpam::run_experiment(name, cfg, std::max(1, jobs));
    gpam::write_report(out_dir, rep);
    if (passed) *passed = rep.verdict.pass() ? 1 : 0;
  });
}

gpam_status gpam_experiment_verify(const char* dir, int* passed, char* summary,
                                   size_t cap) {
  return guarded([&] {
    need(dir, "dir");
    const auto results = gpam::verify_reports(dir);
    bool ok = !results.empty();
    std::string text;
    for (const auto& r : results) {
      const bool good = r.recomputed.pass() && r.consistent();
      ok = ok && good;
      text += std::string(good ? "PASS " : "FAIL ") + r.experiment + " " +
              r.dir.string() + (r.consistent() ? "" : " (stored verdict differs)") +
              "\n";
      for (const auto& c : r.recomputed.checks)
        text += std::string("  ") + (c.pass ? "pass " : "FAIL ") + c.name +
                ": " + c.detail + "\n";
    }
    if (results.empty()) text = "no experiment reports found\n";
    if (passed) *passed = ok ? 1 : 0;
    if (summary && cap) {
      const size_t len = std::min(text.size(), cap - 1);
      std::memcpy(summary, text.data(), len);
      summary[len] = '\0';
    }
  });
}

}  // extern "C"
