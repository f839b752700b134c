#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gpam/config.hpp"
#include "gpam/pde_solver.hpp"
#include "gpam/report.hpp"

namespace gpam {

// pure-area, enhanced-convergence, mixed-convergence, zero-translation,
// support-approx, renorm-group, log-positivity, strict-embedding.
const std::vector<std::string>& experiment_names();

// Parameters with every default filled in; unknown keys and keys prefixed
// `meta.` (written into manifests) are rejected and ignored respectively.
Config experiment_defaults(const std::string& name);
Config resolve_params(const std::string& name, const Config& overrides);

// Runs with `jobs` workers; results do not depend on the worker count.
ExperimentReport run_experiment(const std::string& name, const Config& params,
                                int jobs = 1);

// Recomputes the verdict from the recorded table and parameters alone.
Verdict judge_experiment(const std::string& name, const Config& params,
                         const CsvTable& table);

struct VerifyResult {
  std::filesystem::path dir;
  std::string experiment;
  bool stored_pass = false;
  Verdict recomputed;
  bool consistent() const { return stored_pass == recomputed.pass(); }
};

// Every directory under root (root included) holding an experiment manifest.
std::vector<VerifyResult> verify_reports(const std::filesystem::path& root);

// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first
// exception by index is rethrown after all workers stop.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

double median(std::vector<double> v);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;
};
SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// sup_x |Δ(Kh)² − 2|∇Kh|² + 2hKh|.
double embedding_identity_residual(const SpectralField& h);

struct MeanLogIdentity {
  double mean_log = 0.0;       // (2π)^{-2}∫ log v(T)
  double grad_integral = 0.0;  // ∫₀^T (2π)^{-2}∫ |∇log v|²
  double min_value = 0.0;      // smallest grid value of v over stored times
};

// Solves ∂_t v − Δv = vh, v₀ = 1 and evaluates both sides of the mean-log
// identity: the left side by a physical-grid average, the right side by
// Parseval and composite Simpson in time (T/dt must be even).
MeanLogIdentity mean_log_identity(const SpectralField& h, double T, double dt);

}  // namespace gpam
