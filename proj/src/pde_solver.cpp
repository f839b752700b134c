#include "gpam/pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "gpam/rng.hpp"
#include "gpam/torus.hpp"

namespace gpam {
namespace {

// φ₁(z) = (e^z − 1)/z and φ₂(z) = (e^z − 1 − z)/z², series near zero.
double phi1(double z) {
  if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 1e-3) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
  return (std::expm1(z) - z) / (z * z);
}

bool all_finite(const SpectralField& u) {
  for (const cplx& c : u.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

// Per-mode exponential weights for one step of size dt, plus the reaction
// term evaluated on the 2n grid.
class MildStepper {
 public:
  MildStepper(const SpectralField& h, double c, const Nonlinearity& f,
              double dt)
      : grid_(h.grid()),
        c_(c),
        f_(f),
        dt_(dt),
        h_phys_(to_physical(h, 2 * h.n())) {
    const int n = grid_.n();
    const std::size_t size = grid_.size();
    decay_.resize(size);
    w1_.resize(size);
    w2_.resize(size);
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        const int k1 = grid_.mode_of(i1), k2 = grid_.mode_of(i2);
        const double z = -(double(k1) * k1 + double(k2) * k2) * dt;
        const std::size_t idx = static_cast<std::size_t>(i1) * n + i2;
        decay_[idx] = std::exp(z);
        w1_[idx] = dt * phi1(z);
        w2_[idx] = dt * phi2(z);
      }
    }
  }

  SpectralField reaction(const SpectralField& v) const {
    PhysicalField p = to_physical(v, h_phys_.m);
    const double* h = h_phys_.values.data();
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      const double x = p.values[i];
      const double fx = f_.f(x);
      p.values[i] = fx * h[i] - c_ * f_.df(x) * fx;
    }
    return from_physical(p, grid_, grid_.nyquist() - 1);
  }

  // E v + dt φ₁ N
  SpectralField etd1(const SpectralField& v, const SpectralField& nv) const {
    SpectralField out(grid_);
    auto o = out.coeffs();
    auto a = v.coeffs();
    auto b = nv.coeffs();
    for (std::size_t i = 0; i < o.size(); ++i)
      o[i] = decay_[i] * a[i] + w1_[i] * b[i];
    return out;
  }

  // a + dt φ₂ (N(a) − N(v))
  SpectralField etd2_correct(const SpectralField& a, const SpectralField& na,
                             const SpectralField& nv) const {
    SpectralField out = a;
    auto o = out.coeffs();
    auto x = na.coeffs();
    auto y = nv.coeffs();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += w2_[i] * (x[i] - y[i]);
    return out;
  }

  // Exponential trapezoid: E v_m + dt[(φ₁ − φ₂) N_m + φ₂ N_{m+1}].
  SpectralField trapezoid(const SpectralField& v, const SpectralField& n0,
                          const SpectralField& n1) const {
    SpectralField out(grid_);
    auto o = out.coeffs();
    auto a = v.coeffs();
    auto p = n0.coeffs();
    auto q = n1.coeffs();
    for (std::size_t i = 0; i < o.size(); ++i)
      o[i] = decay_[i] * a[i] + (w1_[i] - w2_[i]) * p[i] + w2_[i] * q[i];
    return out;
  }

 private:
  Grid grid_;
  double c_;
  const Nonlinearity& f_;
  double dt_;
  PhysicalField h_phys_;
  std::vector<double> decay_, w1_, w2_;
};

int step_count(double T, double dt) {
  require(dt > 0.0 && T >= 0.0, ErrorCode::InvalidArgument,
          "solver needs dt > 0 and T >= 0");
  return static_cast<int>(std::llround(T / dt));
}

void check_inputs(const SpectralField& u0, const SpectralField& h) {
  require_same_grid(u0.grid(), h.grid());
  require(h.is_zero_mean(1e-12), ErrorCode::NonZeroMean,
          "potential h must have zero mean");
  const int limit = h.n() / 4;
  require(h.band() <= limit && u0.band() <= limit, ErrorCode::Bandwidth,
          "h and u0 must be band-limited to n/4");
}

// Γ applied to `prev` on one window starting from `start`.
std::vector<SpectralField> gamma_window(const std::vector<SpectralField>& prev,
                                        const SpectralField& start,
                                        const MildStepper& st) {
  std::vector<SpectralField> out;
  out.reserve(prev.size());
  out.push_back(start);
  SpectralField n_prev = st.reaction(prev[0]);
  for (std::size_t m = 0; m + 1 < prev.size(); ++m) {
    SpectralField n_next = st.reaction(prev[m + 1]);
    out.push_back(st.trapezoid(out.back(), n_prev, n_next));
    n_prev = std::move(n_next);
  }
  return out;
}

double window_distance(const std::vector<SpectralField>& a,
                       const std::vector<SpectralField>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, (a[i] - b[i]).coeff_l2());
  return d;
}

enum class PicardOutcome { Converged, Split };

// Iterates Γ on `steps` steps from `start`. Splits when the observed
// contraction factor reaches 0.5.
PicardOutcome picard_window(const SpectralField& start, int steps,
                            const MildStepper& st, const SolveConfig& cfg,
                            std::vector<SpectralField>& states) {
  states.assign(static_cast<std::size_t>(steps) + 1, start);
  double last_diff = -1.0;
  int stalled = 0;
  for (int it = 0; it < cfg.picard_max_iter; ++it) {
    std::vector<SpectralField> next = gamma_window(states, start, st);
    for (const auto& s : next)
      if (!all_finite(s))
        fail(ErrorCode::Numerical, "picard iteration produced non-finite state");
    const double diff = window_distance(next, states);
    states = std::move(next);
    if (diff < cfg.picard_tol) return PicardOutcome::Converged;
    if (last_diff > 0.0) {
      const double factor = diff / last_diff;
      if (factor >= 0.5 && it >= 2) {
        if (steps > 1) return PicardOutcome::Split;
        if (factor >= 1.0 && ++stalled >= 5)
          fail(ErrorCode::Numerical,
               "picard iteration does not contract on a single step");
      }
    }
    last_diff = diff;
  }
  if (steps > 1) return PicardOutcome::Split;
  fail(ErrorCode::Numerical, "picard iteration hit the iteration limit");
}

void picard_solve(const SpectralField& start, int steps, const MildStepper& st,
                  const SolveConfig& cfg, std::vector<SpectralField>& all) {
  std::vector<SpectralField> states;
  if (picard_window(start, steps, st, cfg, states) ==
      PicardOutcome::Converged) {
    all.insert(all.end(), states.begin() + 1, states.end());
    return;
  }
  const int first = steps / 2;
  picard_solve(start, first, st, cfg, all);
  picard_solve(all.back(), steps - first, st, cfg, all);
}

}  // namespace

Nonlinearity Nonlinearity::builtin(std::string_view name) {
  if (name == "identity")
    return {"identity", [](double u) { return u; }, [](double) { return 1.0; },
            [](double) { return 0.0; }};
  if (name == "constant_one")
    return {"constant_one", [](double) { return 1.0; },
            [](double) { return 0.0; }, [](double) { return 0.0; }};
  if (name == "sine")
    return {"sine", [](double u) { return std::sin(u); },
            [](double u) { return std::cos(u); },
            [](double u) { return -std::sin(u); }};
  if (name == "bump") {
    // e^{−1/(1−u²)} on |u| < 1, zero outside.
    auto f = [](double u) {
      const double s = 1.0 - u * u;
      return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
    };
    auto df = [f](double u) {
      const double s = 1.0 - u * u;
      return s > 0.0 ? f(u) * (-2.0 * u / (s * s)) : 0.0;
    };
    auto d2f = [f](double u) {
      const double s = 1.0 - u * u;
      if (s <= 0.0) return 0.0;
      const double g1 = -2.0 * u / (s * s);
      const double g2 = -2.0 / (s * s) - 8.0 * u * u / (s * s * s);
      return f(u) * (g1 * g1 + g2);
    };
    return {"bump", f, df, d2f};
  }
  fail(ErrorCode::InvalidArgument,
       "unknown nonlinearity '" + std::string(name) + "'");
}

Scheme parse_scheme(std::string_view name) {
  if (name == "etd1") return Scheme::Etd1;
  if (name == "etd2rk") return Scheme::Etd2rk;
  if (name == "picard") return Scheme::Picard;
  fail(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Etd1:
      return "etd1";
    case Scheme::Etd2rk:
      return "etd2rk";
    case Scheme::Picard:
      return "picard";
  }
  return "unknown";
}

std::string field_hash(const SpectralField& u) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  const int n = u.n();
  mix(&n, sizeof n);
  for (const cplx& c : u.coeffs()) {
    // Normalize signed zeros so equal fields hash equally.
    const double re = c.real() == 0.0 ? 0.0 : c.real();
    const double im = c.imag() == 0.0 ? 0.0 : c.imag();
    mix(&re, sizeof re);
    mix(&im, sizeof im);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Trajectory solve_classical(const SpectralField& u0, const SpectralField& h,
                           double c, const Nonlinearity& f,
                           const SolveConfig& cfg) {
  check_inputs(u0, h);
  require(cfg.snap_every >= 1, ErrorCode::InvalidArgument,
          "snap_every must be >= 1");
  require(cfg.picard_tol > 0.0, ErrorCode::InvalidArgument,
          "picard tolerance must be positive");
  const int steps = step_count(cfg.T, cfg.dt);
  const double dt = steps > 0 ? cfg.T / steps : cfg.dt;

  Trajectory traj;
  traj.config = cfg;
  traj.provenance = {0, field_hash(h), c, f.name};
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  if (steps == 0) return traj;

  const MildStepper st(h, c, f, dt);

  if (cfg.scheme == Scheme::Picard) {
    // Windows of at most 256 steps bound the memory of one iterate.
    std::vector<SpectralField> all{u0};
    int done = 0;
    while (done < steps) {
      const int chunk = std::min(256, steps - done);
      picard_solve(all.back(), chunk, st, cfg, all);
      done += chunk;
    }
    for (int m = 1; m <= steps; ++m) {
      if (m % cfg.snap_every == 0 || m == steps) {
        traj.times.push_back(m * dt);
        traj.states.push_back(all[static_cast<std::size_t>(m)]);
      }
    }
    return traj;
  }

  SpectralField v = u0;
  for (int m = 1; m <= steps; ++m) {
    const SpectralField nv = st.reaction(v);
    SpectralField next = st.etd1(v, nv);
    if (cfg.scheme == Scheme::Etd2rk) next = st.etd2_correct(next, st.reaction(next), nv);
    if (!all_finite(next)) {
      traj.exploded = true;
      traj.explosion_time = m * dt;
      return traj;
    }
    v = std::move(next);
    if (m % cfg.snap_every == 0 || m == steps) {
      traj.times.push_back(m * dt);
      traj.states.push_back(v);
    }
  }
  return traj;
}

void require_no_explosion(const Trajectory& traj) {
  if (traj.exploded)
    fail(ErrorCode::Numerical, "non-finite state at t = " +
                                   std::to_string(traj.explosion_time));
}

Trajectory gamma_map(const Trajectory& v, const SpectralField& u0,
                     const SpectralField& h, double c, const Nonlinearity& f) {
  check_inputs(u0, h);
  require(v.states.size() >= 2, ErrorCode::InvalidArgument,
          "gamma map needs at least two time points");
  const double dt = v.times[1] - v.times[0];
  for (std::size_t m = 1; m < v.times.size(); ++m)
    require(std::abs((v.times[m] - v.times[m - 1]) - dt) <= 1e-9 * dt,
            ErrorCode::InvalidArgument, "gamma map needs a uniform time grid");
  const MildStepper st(h, c, f, dt);
  Trajectory out;
  out.times = v.times;
  out.config = v.config;
  out.provenance = {v.provenance.seed, field_hash(h), c, f.name};
  out.states = gamma_window(v.states, u0, st);
  return out;
}

double trajectory_distance(const Trajectory& a, const Trajectory& b) {
  require(a.states.size() == b.states.size(), ErrorCode::InvalidArgument,
          "trajectories have different lengths");
  return window_distance(a.states, b.states);
}

Trajectory solve_renormalized_mollified(const SpectralField& u0,
                                        const WhiteNoiseSample& xi,
                                        const Mollifier& psi, double eps,
                                        const Nonlinearity& f,
                                        const SolveConfig& cfg) {
  const int limit = xi.field.n() / 4;
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  if (!std::isinf(psi.support_radius()))
    require(psi.support_radius() / eps <= limit, ErrorCode::Bandwidth,
            "mollifier support 1/eps exceeds n/4");
  SpectralField h = mollify(xi, psi, eps);
  if (h.band() > limit) {
    require(std::abs(psi(eps * (limit + 1))) <= 1e-15, ErrorCode::Bandwidth,
            "mollified noise is not negligible beyond n/4");
    SpectralField cut(h.grid());
    for (int k1 = -limit; k1 <= limit; ++k1)
      for (int k2 = -limit; k2 <= limit; ++k2)
        cut.set_coeff(k1, k2, h.coeff(k1, k2));
    h = std::move(cut);
  }
  const double c = carried_renorm_constant(psi, eps, std::min(xi.band, limit));
  Trajectory traj = solve_classical(u0, h, c, f, cfg);
  traj.provenance.seed = xi.seed;
  return traj;
}

ContractionEstimate estimate_contraction(const SpectralField& u0,
                                         const SpectralField& h, double c,
                                         const Nonlinearity& f, double T,
                                         double dt, int pairs,
                                         std::uint64_t seed) {
  const int steps = std::max(1, step_count(T, dt));
  const Grid& g = u0.grid();
  const int band = g.n() / 4;
  ContractionEstimate est{steps * dt, 0.0};
  for (int p = 0; p < pairs; ++p) {
    Trajectory u, v;
    for (int m = 0; m <= steps; ++m) {
      u.times.push_back(m * dt);
      v.times.push_back(m * dt);
      const std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | m;
      u.states.push_back(u0 + sample_band_limited(g, band, 2.0, seed, 2 * key));
      v.states.push_back(u0 +
                         sample_band_limited(g, band, 2.0, seed, 2 * key + 1));
    }
    const double num =
        trajectory_distance(gamma_map(u, u0, h, c, f), gamma_map(v, u0, h, c, f));
    const double den = trajectory_distance(u, v);
    if (den > 0.0) est.factor = std::max(est.factor, num / den);
  }
  return est;
}

ContractionEstimate bisect_contraction_window(
    const SpectralField& u0, const SpectralField& h, double c,
    const Nonlinearity& f, double t_max, double dt, int pairs,
    std::uint64_t seed, int iterations) {
  int lo = 1;
  int hi = std::max(1, step_count(t_max, dt));
  ContractionEstimate best =
      estimate_contraction(u0, h, c, f, lo * dt, dt, pairs, seed);
  if (best.factor >= 1.0) return best;
  const ContractionEstimate top =
      estimate_contraction(u0, h, c, f, hi * dt, dt, pairs, seed);
  if (top.factor < 1.0) return top;
  for (int it = 0; it < iterations && hi - lo > 1; ++it) {
    const int mid = lo + (hi - lo) / 2;
    const ContractionEstimate e =
        estimate_contraction(u0, h, c, f, mid * dt, dt, pairs, seed);
    if (e.factor < 1.0) {
      lo = mid;
      best = e;
    } else {
      hi = mid;
    }
  }
  return best;
}

MonteCarloEstimate feynman_kac_mc(const SpectralField& h, double t, double x1,
                                  double x2, int paths, std::uint64_t seed,
                                  int steps) {
  require(t >= 0.0 && paths > 0 && steps > 0, ErrorCode::InvalidArgument,
          "Feynman-Kac needs t >= 0, paths > 0, steps > 0");
  struct Mode {
    int k1, k2;
    cplx c;
  };
  std::vector<Mode> modes;
  const int band = h.band();
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      if (k1 < -h.grid().nyquist() + 1 || k2 < -h.grid().nyquist() + 1) continue;
      const cplx c = h.coeff(k1, k2);
      if (c != cplx{0.0, 0.0}) modes.push_back({k1, k2, c});
    }
  auto eval = [&modes](double y1, double y2) {
    double s = 0.0;
    for (const Mode& m : modes) {
      const double ph = m.k1 * y1 + m.k2 * y2;
      s += m.c.real() * std::cos(ph) - m.c.imag() * std::sin(ph);
    }
    return s;
  };
  const double dt = t / steps;
  const double sd = std::sqrt(2.0 * dt);
  double sum = 0.0, sum_sq = 0.0;
  for (int p = 0; p < paths; ++p) {
    double y1 = x1, y2 = x2, integral = 0.0;
    const CounterKey key{seed, 0, static_cast<std::uint64_t>(p), 0};
    for (int s = 0; s < steps; ++s) {
      integral += eval(y1, y2) * dt;
      double z1, z2;
      counter_normal_pair(key, static_cast<std::uint64_t>(s), z1, z2);
      // h is 2π-periodic, so the path need not be wrapped explicitly.
      y1 += sd * z1;
      y2 += sd * z2;
    }
    const double w = std::exp(integral);
    sum += w;
    sum_sq += w * w;
  }
  MonteCarloEstimate est;
  est.estimate = sum / paths;
  const double var = std::max(0.0, sum_sq / paths - est.estimate * est.estimate);
  est.std_error = paths > 1 ? std::sqrt(var / (paths - 1)) : 0.0;
  return est;
}

}  // namespace gpam
