#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gpam/noise.hpp"
#include "gpam/spectral_field.hpp"

namespace gpam {

/// Reaction function with closed-form first and second derivatives.
struct Nonlinearity {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;

  // identity, constant_one, sine, bump.
  static Nonlinearity builtin(std::string_view name);
};

enum class Scheme { Etd1, Etd2rk, Picard };

Scheme parse_scheme(std::string_view name);
std::string scheme_name(Scheme s);

struct SolveConfig {
  double T = 1.0;
  double dt = 1e-3;
  Scheme scheme = Scheme::Etd2rk;
  double picard_tol = 1e-10;
  int picard_max_iter = 200;
  int snap_every = 1;  // store every k-th step; the final state is always kept
};

struct Provenance {
  std::uint64_t seed = 0;
  std::string h_hash;
  double c = 0.0;
  std::string f_name;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  SolveConfig config;
  Provenance provenance;
  bool exploded = false;
  double explosion_time = 0.0;  // first time with a non-finite state
};

// FNV-1a digest of the coefficient bytes.
std::string field_hash(const SpectralField& u);

// v = 𝒮_c(u₀, h, c): ∂_t v − Δv = f(v)h − c f′(v)f(v), integrated with
// exponential time differencing on the mild form. A non-finite state stops
// the march and sets `exploded`.
Trajectory solve_classical(const SpectralField& u0, const SpectralField& h,
                           double c, const Nonlinearity& f,
                           const SolveConfig& cfg);

// Throws Numerical when the trajectory stopped on a non-finite state.
void require_no_explosion(const Trajectory& traj);

// One application of Γ_T to a trajectory on a uniform time grid,
// exponential trapezoid per mode.
Trajectory gamma_map(const Trajectory& v, const SpectralField& u0,
                     const SpectralField& h, double c, const Nonlinearity& f);

// sup over stored times of the L² distance (coefficient ℓ²).
double trajectory_distance(const Trajectory& a, const Trajectory& b);

// u^ε = 𝒮_c(u₀, ξ^ε, c_ε) with c_ε summed over the modes the sample carries.
Trajectory solve_renormalized_mollified(const SpectralField& u0,
                                        const WhiteNoiseSample& xi,
                                        const Mollifier& psi, double eps,
                                        const Nonlinearity& f,
                                        const SolveConfig& cfg);

struct ContractionEstimate {
  double T = 0.0;
  double factor = 0.0;  // max over pairs of ‖Γu − Γv‖ / ‖u − v‖
};

// Empirical Lipschitz constant of Γ_T on random band-limited trajectory pairs.
ContractionEstimate estimate_contraction(const SpectralField& u0,
                                         const SpectralField& h, double c,
                                         const Nonlinearity& f, double T,
                                         double dt, int pairs,
                                         std::uint64_t seed);

// Largest T in [dt, t_max] (bisection, `iterations` halvings) on which the
// empirical factor stays below one.
ContractionEstimate bisect_contraction_window(
    const SpectralField& u0, const SpectralField& h, double c,
    const Nonlinearity& f, double t_max, double dt, int pairs,
    std::uint64_t seed, int iterations = 12);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// E[exp(∫₀ᵗ h(x + B_s) ds)] for B with generator Δ (increments √(2dt)·N),
// left-point quadrature over `steps` steps, h summed directly from its modes.
MonteCarloEstimate feynman_kac_mc(const SpectralField& h, double t, double x1,
                                  double x2, int paths, std::uint64_t seed,
                                  int steps = 1000);

}  // namespace gpam
