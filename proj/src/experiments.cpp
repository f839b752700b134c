#include "gpam/experiments.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "gpam/enhancement.hpp"
#include "gpam/field_io.hpp"
#include "gpam/paraproduct.hpp"
#include "gpam/torus.hpp"

namespace gpam {
namespace fs = std::filesystem;

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  jobs = std::clamp(jobs, 1, count);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double median(std::vector<double> v) {
  require(!v.empty(), ErrorCode::InvalidArgument, "median of an empty set");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::InvalidArgument,
          "line fit needs at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, ErrorCode::InvalidArgument, "degenerate abscissae");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.std_error = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

double embedding_identity_residual(const SpectralField& h) {
  const SpectralField kh = inverse_laplacian(h);
  const auto grad = gradient(kh);
  SpectralField lhs = laplacian(dealiased_product(kh, kh));
  SpectralField rhs = 2.0 * (dealiased_product(grad[0], grad[0]) +
                             dealiased_product(grad[1], grad[1])) -
                      2.0 * dealiased_product(h, kh);
  return sup_norm(lhs - rhs);
}

MeanLogIdentity mean_log_identity(const SpectralField& h, double T,
                                  double dt) {
  const int steps = static_cast<int>(std::llround(T / dt));
  require(steps >= 2 && steps % 2 == 0, ErrorCode::InvalidArgument,
          "mean-log identity needs an even number of steps");
  SolveConfig cfg;
  cfg.T = T;
  cfg.dt = dt;
  cfg.scheme = Scheme::Etd2rk;
  const Trajectory traj =
      solve_classical(SpectralField::constant(h.grid(), 1.0), h, 0.0,
                      Nonlinearity::builtin("identity"), cfg);
  require_no_explosion(traj);
  MeanLogIdentity out;
  out.min_value = std::numeric_limits<double>::infinity();
  const double h_step = traj.times[1] - traj.times[0];
  double simpson = 0.0;
  const int n = h.n();
  for (std::size_t m = 0; m < traj.states.size(); ++m) {
    const PhysicalField p = to_physical(traj.states[m], 2 * n);
    RealBuffer logs(p.values.size());
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      out.min_value = std::min(out.min_value, p.values[i]);
      require(p.values[i] > 0.0, ErrorCode::Numerical,
              "solution lost positivity");
      logs[i] = std::log(p.values[i]);
    }
    if (m + 1 == traj.states.size()) {
      double s = 0.0;
      for (double v : logs) s += v;
      out.mean_log = s / static_cast<double>(logs.size());
    }
    // Parseval for the normalized measure: mean |∇w|² = Σ |k|² |ŵ(k)|².
    PhysicalField lp{p.m, std::move(logs)};
    const SpectralField w = from_physical(lp, h.grid(), n / 2 - 1);
    double energy = 0.0;
    for (int k1 = -n / 2 + 1; k1 < n / 2; ++k1)
      for (int k2 = -n / 2 + 1; k2 < n / 2; ++k2)
        energy += (double(k1) * k1 + double(k2) * k2) * std::norm(w.coeff(k1, k2));
    const std::size_t last = traj.states.size() - 1;
    const double weight = (m == 0 || m == last) ? 1.0 : (m % 2 ? 4.0 : 2.0);
    simpson += weight * energy;
  }
  out.grad_integral = simpson * h_step / 3.0;
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) { return format_double(v); }
std::string num(int v) { return std::to_string(v); }

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

std::string series(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.4g", i ? ", " : "", v[i]);
    out += buf;
  }
  return "[" + out + "]";
}

// Groups a numeric column by a key column, keys in ascending order.
std::map<double, std::vector<double>> group(const CsvTable& t,
                                            const std::string& key,
                                            const std::string& value,
                                            const std::string& filter_col = "",
                                            double filter_val = 0.0) {
  std::map<double, std::vector<double>> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (!filter_col.empty() && t.number(r, filter_col) != filter_val) continue;
    const double v = t.number(r, value);
    if (std::isnan(v)) continue;
    out[t.number(r, key)].push_back(v);
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> medians(
    const std::map<double, std::vector<double>>& g) {
  std::vector<double> keys, meds;
  for (const auto& [k, v] : g) {
    keys.push_back(k);
    meds.push_back(median(v));
  }
  return {keys, meds};
}

Check monotone_check(const std::string& name, const std::vector<double>& meds,
                     bool decreasing, std::size_t min_points) {
  Check c{name, false, series(meds)};
  if (meds.size() < min_points) {
    c.detail += " (needs at least " + std::to_string(min_points) + " points)";
    return c;
  }
  c.pass = decreasing ? strictly_decreasing(meds) : strictly_increasing(meds);
  return c;
}

std::vector<double> exponent_list(const Config& p, const std::string& key) {
  std::vector<double> e = p.get_doubles(key, {});
  for (double x : e)
    require(x == std::floor(x) && x >= 0 && x <= 30, ErrorCode::Config,
            "key '" + key + "' needs non-negative integer exponents");
  return e;
}

double sup_holder_distance(const Trajectory& a, const Trajectory& b,
                           double alpha, const DyadicPartition& part) {
  require(a.states.size() == b.states.size(), ErrorCode::InvalidArgument,
          "trajectories have different lengths");
  double d = 0.0;
  for (std::size_t i = 0; i < a.states.size(); ++i)
    d = std::max(d, holder_norm(a.states[i] - b.states[i], alpha, part));
  return d;
}

double renorm_on_grid(int band) {
  // Sharp cut-off wide enough to keep every carried mode.
  return carried_renorm_constant(Mollifier(MollifierKind::Sharp),
                                 0.5 / band, band);
}

Grid grid_param(const Config& p) {
  const int n = p.get_int("grid");
  require(is_power_of_two(n) && n >= 8, ErrorCode::Config,
          "grid must be a power of two >= 8");
  return Grid(n);
}

SolveConfig solve_params(const Config& p) {
  SolveConfig cfg;
  cfg.T = p.get_double("T");
  cfg.dt = p.get_double("dt");
  cfg.scheme = parse_scheme(p.get_string("scheme"));
  cfg.snap_every = p.get_int("snap_every");
  require(cfg.dt > 0.0 && cfg.T >= 0.0 && cfg.snap_every >= 1,
          ErrorCode::Config, "need dt > 0, T >= 0, snap_every >= 1");
  return cfg;
}

// ---------------------------------------------------------------- pure-area

ExperimentReport run_pure_area(const Config& p, int jobs) {
  const Grid g = grid_param(p);
  const DyadicPartition part(g);
  const double alpha = p.get_double("alpha");
  const double c = p.get_double("c");
  const auto [lo, hi] = p.get_range("n", {});
  require(c >= 0.0, ErrorCode::Config, "c must be non-negative");
  const int count = hi - lo + 1;
  std::vector<double> xn(count), rn(count);
  parallel_for(count, jobs, [&](int i) {
    const SpectralField X = oscillatory(lo + i, c, g);
    SpectralField r = resonant(X, inverse_laplacian(X), part);
    r.add_constant(-c);
    xn[i] = holder_norm(X, alpha - 2.0, part);
    rn[i] = holder_norm(r, 2.0 * alpha - 2.0, part);
  });
  ExperimentReport rep;
  rep.partition_hash = part.hash();
  rep.table.header = {"n", "x_norm", "resonant_norm"};
  PlotSeries px{"x_norm_log2", {}, {}}, pr{"resonant_norm_log2", {}, {}};
  for (int i = 0; i < count; ++i) {
    rep.table.add_row({num(lo + i), num(xn[i]), num(rn[i])});
    if (xn[i] > 0.0 && rn[i] > 0.0) {
      px.x.push_back(lo + i);
      px.y.push_back(std::log2(xn[i]));
      pr.x.push_back(lo + i);
      pr.y.push_back(std::log2(rn[i]));
    }
  }
  rep.plots = {px, pr};
  return rep;
}

Verdict judge_pure_area(const Config& p, const CsvTable& t) {
  const double alpha = p.get_double("alpha");
  const double c = p.get_double("c");
  const double tol = p.get_double("slope_tol");
  Verdict v;
  std::vector<double> n, lx, lr;
  bool all_zero = true;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double x = t.number(r, "x_norm"), y = t.number(r, "resonant_norm");
    all_zero = all_zero && x == 0.0 && y == 0.0;
    n.push_back(t.number(r, "n"));
    lx.push_back(std::log2(x));
    lr.push_back(std::log2(y));
  }
  if (c == 0.0) {
    v.checks.push_back({"zero amplitude gives zero norms", all_zero, ""});
    return v;
  }
  if (n.size() < 2) {
    v.checks.push_back({"slope fit", false, "fewer than two points"});
    return v;
  }
  const SlopeFit fx = fit_line(n, lx), fr = fit_line(n, lr);
  const double ex = -(1.0 - alpha), er = -2.0 * (1.0 - alpha);
  char buf[160];
  std::snprintf(buf, sizeof buf, "slope %.4f, expected %.4f +- %.3g", fx.slope,
                ex, tol);
  v.checks.push_back({"log2 slope of |X|_{alpha-2}",
                      std::abs(fx.slope - ex) <= tol, buf});
  std::snprintf(buf, sizeof buf, "slope %.4f, expected %.4f +- %.3g", fr.slope,
                er, tol);
  v.checks.push_back({"log2 slope of |X o KX - c|_{2alpha-2}",
                      std::abs(fr.slope - er) <= tol, buf});
  return v;
}

// ------------------------------------------------------ enhanced-convergence

ExperimentReport run_enhanced(const Config& p, int jobs) {
  const Grid g = grid_param(p);
  const DyadicPartition part(g);
  const double alpha = p.get_double("alpha");
  const int samples = p.get_int("samples");
  const std::uint64_t seed = p.get_uint("seed");
  const Mollifier psi = Mollifier::parse(p.get_string("psi"));
  const Mollifier cross = Mollifier::parse(p.get_string("cross_psi"));
  const std::vector<double> ex = exponent_list(p, "eps_exp");
  require(samples >= 1, ErrorCode::Config, "samples must be >= 1");
  const int band = lift_band(g);
  const std::size_t ne = ex.size();
  struct Row {
    double cauchy, unren, cross;
  };
  std::vector<std::vector<Row>> rows(samples, std::vector<Row>(ne));
  parallel_for(samples, jobs, [&](int s) {
    const WhiteNoiseSample xi = sample_white_noise(g, seed, s, band);
    std::vector<EnhancedPair> lifts;
    for (std::size_t i = 0; i < ne; ++i) {
      const double eps = std::ldexp(1.0, -static_cast<int>(ex[i]));
      const SpectralField a = mollify(xi, psi, eps);
      const SpectralField b = mollify(xi, cross, eps);
      EnhancedPair la = enhance(a, carried_renorm_constant(psi, eps, band), part);
      EnhancedPair lb =
          enhance(b, carried_renorm_constant(cross, eps, band), part);
      const SpectralField raw = resonant(a, inverse_laplacian(a), part);
      rows[s][i].unren = holder_norm(raw, 2.0 * alpha - 2.0, part);
      rows[s][i].cross = h_alpha_dist(la, lb, alpha, part);
      lifts.push_back(std::move(la));
    }
    for (std::size_t i = 0; i < ne; ++i)
      rows[s][i].cauchy =
          i + 1 < ne ? h_alpha_dist(lifts[i], lifts[i + 1], alpha, part)
                     : std::numeric_limits<double>::quiet_NaN();
  });
  ExperimentReport rep;
  rep.partition_hash = part.hash();
  rep.table.header = {"sample", "eps", "cauchy_distance", "unrenormalized_norm",
                      "cross_distance"};
  for (int s = 0; s < samples; ++s)
    for (std::size_t i = 0; i < ne; ++i) {
      const double eps = std::ldexp(1.0, -static_cast<int>(ex[i]));
      const Row& r = rows[s][i];
      rep.table.add_row({num(s), num(eps),
                         std::isnan(r.cauchy) ? "" : num(r.cauchy),
                         num(r.unren), num(r.cross)});
    }
  return rep;
}

// Medians keyed by ε, returned in the order of decreasing ε.
std::vector<double> by_decreasing_eps(const CsvTable& t,
                                      const std::string& col,
                                      const std::string& fcol = "",
                                      double fval = 0.0) {
  auto [keys, meds] = medians(group(t, "eps", col, fcol, fval));
  std::reverse(meds.begin(), meds.end());
  return meds;
}

Verdict judge_enhanced(const Config&, const CsvTable& t) {
  Verdict v;
  v.checks.push_back(monotone_check("median Cauchy distance decreasing",
                                    by_decreasing_eps(t, "cauchy_distance"),
                                    true, 4));
  v.checks.push_back(monotone_check("median unrenormalized norm increasing",
                                    by_decreasing_eps(t, "unrenormalized_norm"),
                                    false, 4));
  v.checks.push_back(monotone_check("median cross-mollifier distance decreasing",
                                    by_decreasing_eps(t, "cross_distance"),
                                    true, 4));
  return v;
}

// --------------------------------------------------------- mixed-convergence

ExperimentReport run_mixed(const Config& p, int jobs) {
  const Grid g = grid_param(p);
  const DyadicPartition part(g);
  const double alpha = p.get_double("alpha");
  const int samples = p.get_int("samples");
  const std::uint64_t seed = p.get_uint("seed");
  const Mollifier psi = Mollifier::parse(p.get_string("psi"));
  const std::vector<double> ex = exponent_list(p, "eps_exp");
  require(samples >= 1, ErrorCode::Config, "samples must be >= 1");
  const int band = lift_band(g);
  const std::size_t ne = ex.size();
  std::vector<std::vector<std::array<double, 3>>> d(
      samples, std::vector<std::array<double, 3>>(ne));
  parallel_for(samples, jobs, [&](int s) {
    const WhiteNoiseSample xi = sample_white_noise(g, seed, s, band);
    const SpectralField kxi = inverse_laplacian(xi.field);
    for (std::size_t i = 0; i < ne; ++i) {
      const double eps = std::ldexp(1.0, -static_cast<int>(ex[i]));
      const SpectralField xe = mollify(xi, psi, eps);
      const SpectralField kxe = inverse_laplacian(xe);
      const double b = carried_mixed_constant(psi, eps, band);
      const double c = carried_renorm_constant(psi, eps, band);
      SpectralField ref = resonant(xe, kxe, part);
      ref.add_constant(-c);
      SpectralField left = resonant(xe, kxi, part);
      left.add_constant(-b);
      SpectralField right = resonant(xi.field, kxe, part);
      right.add_constant(-b);
      d[s][i][0] = holder_norm(left - ref, 2.0 * alpha - 2.0, part);
      d[s][i][1] = holder_norm(right - ref, 2.0 * alpha - 2.0, part);
      SpectralField swapped = resonant(kxi, xe, part);
      swapped.add_constant(-b);
      d[s][i][2] = max_coeff_diff(swapped, left);
    }
  });
  ExperimentReport rep;
  rep.partition_hash = part.hash();
  rep.table.header = {"sample", "eps", "left_distance", "right_distance",
                      "symmetry_residual"};
  for (int s = 0; s < samples; ++s)
    for (std::size_t i = 0; i < ne; ++i)
      rep.table.add_row({num(s), num(std::ldexp(1.0, -static_cast<int>(ex[i]))),
                         num(d[s][i][0]), num(d[s][i][1]), num(d[s][i][2])});
  return rep;
}

Verdict judge_mixed(const Config& p, const CsvTable& t) {
  Verdict v;
  v.checks.push_back(monotone_check("median distance (mollified left) decreasing",
                                    by_decreasing_eps(t, "left_distance"), true,
                                    4));
  v.checks.push_back(monotone_check(
      "median distance (mollified right) decreasing",
      by_decreasing_eps(t, "right_distance"), true, 4));
  const double tol = p.get_double("symmetry_tol");
  double worst = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    worst = std::max(worst, t.number(r, "symmetry_residual"));
  char buf[64];
  std::snprintf(buf, sizeof buf, "max %.3g, tolerance %.3g", worst, tol);
  v.checks.push_back({"resonant product symmetric", !t.rows.empty() && worst <= tol, buf});
  return v;
}

// --------------------------------------------------------- zero-translation

ExperimentReport run_zero_translation(const Config& p, int jobs) {
  const Grid g = grid_param(p);
  const DyadicPartition part(g);
  const double alpha = p.get_double("alpha");
  const int samples = p.get_int("samples");
  const std::uint64_t seed = p.get_uint("seed");
  const std::vector<double> as = p.get_doubles("a", {});
  const auto [lo, hi] = p.get_range("n", {});
  require(samples >= 1, ErrorCode::Config, "samples must be >= 1");
  const int band = lift_band(g);
  const int nn = hi - lo + 1;
  const int na = static_cast<int>(as.size());
  struct Cell {
    double dist, annihilation, c_n;
  };
  std::vector<Cell> cells(static_cast<std::size_t>(samples) * na * nn);
  parallel_for(samples, jobs, [&](int s) {
    const WhiteNoiseSample xi = sample_white_noise(g, seed, s, band);
    const EnhancedPair lift = enhance(xi.field, renorm_on_grid(band), part);
    for (int ia = 0; ia < na; ++ia) {
      const EnhancedPair target{SpectralField(g),
                                SpectralField::constant(g, -as[ia])};
      for (int in = 0; in < nn; ++in) {
        const ZeroTranslation zt = zero_translation_field(xi, lo + in, as[ia], part);
        const EnhancedPair moved = translate(lift, zt.h, part);
        cells[(static_cast<std::size_t>(s) * na + ia) * nn + in] = {
            h_alpha_dist(moved, target, alpha, part), zt.annihilation_residual,
            zt.c_n};
      }
    }
  });
  ExperimentReport rep;
  rep.partition_hash = part.hash();
  rep.table.header = {"sample", "a", "n", "distance", "annihilation_residual",
                      "c_n"};
  for (int s = 0; s < samples; ++s)
    for (int ia = 0; ia < na; ++ia)
      for (int in = 0; in < nn; ++in) {
        const Cell& c = cells[(static_cast<std::size_t>(s) * na + ia) * nn + in];
        rep.table.add_row({num(s), num(as[ia]), num(lo + in), num(c.dist),
                           num(c.annihilation), num(c.c_n)});
      }
  return rep;
}

Verdict judge_zero_translation(const Config& p, const CsvTable& t) {
  Verdict v;
  const double tol = p.get_double("annihilation_tol");
  for (double a : p.get_doubles("a", {})) {
    auto [ns, meds] = medians(group(t, "n", "distance", "a", a));
    v.checks.push_back(monotone_check(
        "median distance to (0,-a) decreasing, a=" + num(a), meds, true, 4));
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    worst = std::max(worst, t.number(r, "annihilation_residual"));
  char buf[64];
  std::snprintf(buf, sizeof buf, "max %.3g, tolerance %.3g", worst, tol);
  v.checks.push_back({"annihilation residual", worst <= tol, buf});
  return v;
}

// ----------------------------------------------------------- support-approx

SpectralField theta_field(const Config& p, Grid g, int sample) {
  return sample_band_limited(g, p.get_int("theta_band"), 2.0,
                             p.get_uint("seed"),
                             static_cast<std::uint64_t>(sample));
}

struct SupportRun {
  std::vector<double> solution_dist;
  std::vector<double> enhanced_dist;
};

// Solution- and enhanced-level distances between the oscillatory-shifted
// runs at levels lo..hi and the target run with constant a.
SupportRun support_distances(const SpectralField& u0, const SpectralField& theta,
                             double a, double c, const Nonlinearity& f,
                             const SolveConfig& cfg, int lo, int hi,
                             double alpha, const DyadicPartition& part,
                             int jobs) {
  require(c > std::max(0.0, a), ErrorCode::Config, "needs c > max(0, a)");
  const Grid& g = part.grid();
  const int nn = hi - lo + 1;
  Trajectory target = solve_classical(u0, theta, a, f, cfg);
  require_no_explosion(target);
  const EnhancedPair target_lift = enhance(theta, a, part);
  SupportRun out{std::vector<double>(nn), std::vector<double>(nn)};
  parallel_for(nn, jobs, [&](int i) {
    const SpectralField h = theta + oscillatory(lo + i, c - a, g);
    const Trajectory run = solve_classical(u0, h, c, f, cfg);
    require_no_explosion(run);
    out.solution_dist[i] = sup_holder_distance(run, target, alpha, part);
    out.enhanced_dist[i] = h_alpha_dist(enhance(h, c, part), target_lift, alpha, part);
  });
  return out;
}

ExperimentReport run_support(const Config& p, int jobs) {
  const Grid g = grid_param(p);
  const DyadicPartition part(g);
  const double alpha = p.get_double("alpha");
  const double a = p.get_double("a"), c = p.get_double("c");
  const int samples = p.get_int("samples");
  const auto [lo, hi] = p.get_range("n", {});
  const Nonlinearity f = Nonlinearity::builtin(p.get_string("f"));
  const SolveConfig cfg = solve_params(p);
  const SpectralField u0 = SpectralField::constant(g, p.get_double("u0"));
  ExperimentReport rep;
  rep.partition_hash = part.hash();
  rep.table.header = {"sample", "n", "solution_distance", "enhanced_distance"};
  for (int s = 0; s < samples; ++s) {
    const SupportRun r = support_distances(u0, theta_field(p, g, s), a, c, f,
                                           cfg, lo, hi, alpha, part, jobs);
    for (int i = 0; i <= hi - lo; ++i)
      rep.table.add_row({num(s), num(lo + i), num(r.solution_dist[i]),
                         num(r.enhanced_dist[i])});
  }
  return rep;
}

Verdict judge_support(const Config&, const CsvTable& t) {
  Verdict v;
  v.checks.push_back(monotone_check(
      "median sup-time C^alpha solution distance decreasing",
      medians(group(t, "n", "solution_distance")).second, true, 4));
  v.checks.push_back(monotone_check(
      "median enhanced-level distance decreasing",
      medians(group(t, "n", "enhanced_distance")).second, true, 4));
  return v;
}

// ------------------------------------------------------------- renorm-group

ExperimentReport run_renorm_group(const Config& p, int jobs) {
  const Grid g = grid_param(p);
  const DyadicPartition part(g);
  const double alpha = p.get_double("alpha");
  const double c = p.get_double("c");
  const double shift = p.get_double("shift");
  const auto [lo, hi] = p.get_range("n", {});
  const Nonlinearity f = Nonlinearity::builtin(p.get_string("f"));
  const SolveConfig cfg = solve_params(p);
  const SpectralField u0 = SpectralField::constant(g, p.get_double("u0"));
  const SpectralField theta = theta_field(p, g, 0);
  ExperimentReport rep;
  rep.partition_hash = part.hash();
  rep.table.header = {"check", "a", "n", "value"};

  // ℳ(θ, c + a) against ℳ(θ, c) + (0, −a), for a = 0 and a = shift.
  for (double a : {0.0, shift}) {
    const EnhancedPair direct = enhance(theta, c + a, part);
    const EnhancedPair moved = enhance(theta, c, part).shifted(a);
    const double d = std::max(max_coeff_diff(direct.first, moved.first),
                              max_coeff_diff(direct.second, moved.second));
    rep.table.add_row({"enhance_shift", num(a), "", num(d)});
  }
  // Solving with c + a against solving with the constant read off the
  // shifted lift.
  {
    const EnhancedPair moved = enhance(theta, c, part).shifted(shift);
    const double c_read =
        resonant(theta, inverse_laplacian(theta), part).mean().real() -
        moved.second.mean().real();
    const Trajectory x = solve_classical(u0, theta, c + shift, f, cfg);
    const Trajectory y = solve_classical(u0, theta, c_read, f, cfg);
    rep.table.add_row({"solve_shift", num(shift), "",
                       num(trajectory_distance(x, y))});
  }
  for (double a : p.get_doubles("a_list", {})) {
    const SupportRun r = support_distances(u0, theta, a, c, f, cfg, lo, hi,
                                           alpha, part, jobs);
    for (int i = 0; i <= hi - lo; ++i)
      rep.table.add_row({"support", num(a), num(lo + i), num(r.solution_dist[i])});
  }
  return rep;
}

Verdict judge_renorm_group(const Config& p, const CsvTable& t) {
  Verdict v;
  const double tol = p.get_double("identity_tol");
  const double sig = p.get_double("slope_sigmas");
  double enh = 0.0, sol = 0.0;
  bool saw_enh = false, saw_sol = false;
  std::map<double, std::pair<std::vector<double>, std::vector<double>>> sup;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::string& kind = t.cell(r, "check");
    const double val = t.number(r, "value");
    if (kind == "enhance_shift") {
      enh = std::max(enh, val);
      saw_enh = true;
    } else if (kind == "solve_shift") {
      sol = std::max(sol, val);
      saw_sol = true;
    } else if (kind == "support") {
      auto& s = sup[t.number(r, "a")];
      s.first.push_back(t.number(r, "n"));
      s.second.push_back(std::log2(val));
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "max coefficient difference %.3g", enh);
  v.checks.push_back({"enhance shift identity", saw_enh && enh <= tol, buf});
  std::snprintf(buf, sizeof buf, "trajectory distance %.3g", sol);
  v.checks.push_back({"solve shift identity", saw_sol && sol <= tol, buf});
  std::vector<std::pair<double, double>> cis;
  std::string detail;
  for (const auto& [a, xy] : sup) {
    if (xy.first.size() < 3) continue;
    const SlopeFit fit = fit_line(xy.first, xy.second);
    cis.push_back({fit.slope - sig * fit.std_error, fit.slope + sig * fit.std_error});
    std::snprintf(buf, sizeof buf, "%sa=%g: slope %.4f +- %.4f",
                  detail.empty() ? "" : "; ", a, fit.slope, sig * fit.std_error);
    detail += buf;
  }
  bool overlap = cis.size() >= 2;
  for (std::size_t i = 0; i < cis.size(); ++i)
    for (std::size_t j = i + 1; j < cis.size(); ++j)
      overlap = overlap && cis[i].first <= cis[j].second &&
                cis[j].first <= cis[i].second;
  v.checks.push_back({"support slopes agree across targets", overlap, detail});
  return v;
}

// ----------------------------------------------------------- log-positivity

ExperimentReport run_log_positivity(const Config& p, int jobs) {
  const Grid g = grid_param(p);
  const int samples = p.get_int("samples");
  const double T = p.get_double("T"), dt = p.get_double("dt");
  const int band = p.get_int("h_band");
  const double decay = p.get_double("h_decay");
  const double amp = p.get_double("h_amplitude");
  const std::uint64_t seed = p.get_uint("seed");
  require(band >= 1 && band <= g.n() / 4, ErrorCode::Config,
          "h_band must lie in [1, grid/4]");
  std::vector<MeanLogIdentity> res(samples);
  parallel_for(samples, jobs, [&](int s) {
    SpectralField h = sample_band_limited(g, band, decay, seed, s);
    h *= amp / std::max(sup_norm(h), 1e-300);
    res[s] = mean_log_identity(h, T, dt);
  });
  ExperimentReport rep;
  rep.partition_hash = DyadicPartition(g).hash();
  rep.table.header = {"sample", "mean_log", "grad_integral", "min_value"};
  for (int s = 0; s < samples; ++s)
    rep.table.add_row({num(s), num(res[s].mean_log), num(res[s].grad_integral),
                       num(res[s].min_value)});
  return rep;
}

Verdict judge_log_positivity(const Config& p, const CsvTable& t) {
  Verdict v;
  const double tol = p.get_double("tol");
  const double target = p.get_double("target_c") * p.get_double("T");
  double min_log = std::numeric_limits<double>::infinity(), gap = 0.0;
  double min_dist = std::numeric_limits<double>::infinity();
  double min_val = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double ml = t.number(r, "mean_log");
    min_log = std::min(min_log, ml);
    gap = std::max(gap, std::abs(ml - t.number(r, "grad_integral")));
    min_dist = std::min(min_dist, std::abs(ml - target));
    min_val = std::min(min_val, t.number(r, "min_value"));
  }
  const bool have = !t.rows.empty();
  char buf[128];
  std::snprintf(buf, sizeof buf, "min %.3g over grid and time", min_val);
  v.checks.push_back({"solutions stay positive", have && min_val > 0.0, buf});
  std::snprintf(buf, sizeof buf, "min %.3g, tolerance %.3g", min_log, tol);
  v.checks.push_back({"mean-log nonnegative", have && min_log >= -tol, buf});
  std::snprintf(buf, sizeof buf, "max gap %.3g, tolerance %.3g", gap, tol);
  v.checks.push_back({"mean-log identity", have && gap <= tol, buf});
  std::snprintf(buf, sizeof buf, "min distance %.4g to cT = %.4g", min_dist,
                target);
  v.checks.push_back({"negative target stays out of reach",
                      have && target < 0.0 && min_dist >= -target - tol, buf});
  return v;
}

// ---------------------------------------------------------- strict-embedding

ExperimentReport run_strict_embedding(const Config& p, int jobs) {
  const Grid g = grid_param(p);
  const DyadicPartition part(g);
  const double alpha = p.get_double("alpha");
  const int samples = p.get_int("samples");
  const int band = p.get_int("h_band");
  const std::uint64_t seed = p.get_uint("seed");
  const auto [lo, hi] = p.get_range("n", {});
  require(2 * band <= g.nyquist() - 1, ErrorCode::Config,
          "h_band must be below grid/4 so squares are exact");
  struct Item {
    std::string kind;
    int index;
    SpectralField h;
  };
  std::vector<Item> items;
  items.push_back({"zero", 0, SpectralField(g)});
  for (int s = 0; s < samples; ++s)
    items.push_back({"random", s,
                     sample_band_limited(g, band, p.get_double("h_decay"), seed, s)});
  for (int n = lo; n <= hi; ++n)
    items.push_back({"oscillatory", n, oscillatory(n, 1.0, g)});
  const int count = static_cast<int>(items.size());
  std::vector<std::array<double, 4>> out(count);
  parallel_for(count, jobs, [&](int i) {
    const SpectralField& h = items[i].h;
    const SpectralField kh = inverse_laplacian(h);
    const auto grad = gradient(kh);
    const SpectralField g2 = 2.0 * (dealiased_product(grad[0], grad[0]) +
                                    dealiased_product(grad[1], grad[1]));
    const PhysicalField phys = to_physical(g2, 2 * g.n());
    double mn = std::numeric_limits<double>::infinity();
    for (double x : phys.values) mn = std::min(mn, x);
    out[i] = {embedding_identity_residual(h), mn,
              resonant(h, kh, part).mean().real(),
              holder_norm(h, alpha - 2.0, part)};
  });
  ExperimentReport rep;
  rep.partition_hash = part.hash();
  rep.table.header = {"kind", "index", "identity_residual", "min_grad_sq",
                      "resonant_mean", "h_norm"};
  for (int i = 0; i < count; ++i)
    rep.table.add_row({items[i].kind, num(items[i].index), num(out[i][0]),
                       num(out[i][1]), num(out[i][2]), num(out[i][3])});
  return rep;
}

Verdict judge_strict_embedding(const Config& p, const CsvTable& t) {
  Verdict v;
  const double tol = p.get_double("tol");
  double res = 0.0, mn = std::numeric_limits<double>::infinity();
  double rm = std::numeric_limits<double>::infinity();
  bool zero_ok = true;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    res = std::max(res, t.number(r, "identity_residual"));
    mn = std::min(mn, t.number(r, "min_grad_sq"));
    rm = std::min(rm, t.number(r, "resonant_mean"));
    if (t.cell(r, "kind") == "zero")
      zero_ok = zero_ok && t.number(r, "identity_residual") == 0.0 &&
                t.number(r, "min_grad_sq") == 0.0 &&
                t.number(r, "resonant_mean") == 0.0;
  }
  const bool have = !t.rows.empty();
  char buf[96];
  std::snprintf(buf, sizeof buf, "max %.3g, tolerance %.3g", res, tol);
  v.checks.push_back({"differential identity", have && res <= tol, buf});
  std::snprintf(buf, sizeof buf, "min %.3g", mn);
  v.checks.push_back({"2|grad Kh|^2 nonnegative", have && mn >= -tol, buf});
  std::snprintf(buf, sizeof buf, "min %.3g", rm);
  v.checks.push_back({"mean of h o Kh nonnegative", have && rm >= -tol, buf});
  v.checks.push_back({"zero field gives zero terms", zero_ok, ""});
  return v;
}

// ------------------------------------------------------------------ registry

struct Entry {
  const char* name;
  const char* defaults;
  ExperimentReport (*run)(const Config&, int);
  Verdict (*judge)(const Config&, const CsvTable&);
};

const Entry kEntries[] = {
    {"pure-area", "alpha=0.75\nc=1\ngrid=2048\nn=3..8\nslope_tol=0.1\n",
     run_pure_area, judge_pure_area},
    {"enhanced-convergence",
     "alpha=0.75\ngrid=256\nsamples=32\nseed=1\npsi=sharp\ncross_psi=gaussian\n"
     "eps_exp=2,3,4,5,6\n",
     run_enhanced, judge_enhanced},
    {"mixed-convergence",
     "alpha=0.75\ngrid=256\nsamples=32\nseed=1\npsi=gaussian\neps_exp=2,3,4,5\n"
     "symmetry_tol=1e-12\n",
     run_mixed, judge_mixed},
    {"zero-translation",
     "alpha=0.75\ngrid=1024\nsamples=16\nseed=1\na=0,1\nn=3..6\n"
     "annihilation_tol=1e-12\n",
     run_zero_translation, judge_zero_translation},
    {"support-approx",
     "alpha=0.75\ngrid=1024\nsamples=1\nseed=1\na=1\nc=2\nf=identity\nu0=1\n"
     "theta_band=2\nn=3..6\nT=0.5\ndt=0.005\nscheme=etd2rk\nsnap_every=10\n",
     run_support, judge_support},
    {"renorm-group",
     "alpha=0.75\ngrid=256\nseed=1\nc=2\nshift=0.5\na_list=0,1\nf=identity\n"
     "u0=1\ntheta_band=2\nn=2..5\nT=0.5\ndt=0.005\nscheme=etd2rk\n"
     "snap_every=10\nidentity_tol=1e-12\nslope_sigmas=2\n",
     run_renorm_group, judge_renorm_group},
    {"log-positivity",
     "grid=32\nsamples=20\nseed=1\nT=0.5\ndt=0.00025\nh_band=3\nh_decay=2\n"
     "h_amplitude=2\ntarget_c=-0.5\ntol=1e-6\n",
     run_log_positivity, judge_log_positivity},
    {"strict-embedding",
     "alpha=0.75\ngrid=256\nsamples=20\nseed=1\nh_band=32\nh_decay=2\nn=2..5\n"
     "tol=1e-10\n",
     run_strict_embedding, judge_strict_embedding},
};

const Entry& entry(const std::string& name) {
  for (const Entry& e : kEntries)
    if (name == e.name) return e;
  fail(ErrorCode::Config, "unknown experiment '" + name + "'");
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Entry& e : kEntries) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

Config experiment_defaults(const std::string& name) {
  return Config::parse(entry(name).defaults);
}

Config resolve_params(const std::string& name, const Config& overrides) {
  Config p = experiment_defaults(name);
  std::vector<std::string> known;
  for (const auto& [k, v] : p.entries()) known.push_back(k);
  Config clean;
  for (const auto& [k, v] : overrides.entries())
    if (k.rfind("meta.", 0) != 0) clean.set(k, v);
  clean.require_known(known);
  p.merge(clean);
  return p;
}

ExperimentReport run_experiment(const std::string& name, const Config& params,
                                int jobs) {
  const Entry& e = entry(name);
  const Config p = resolve_params(name, params);
  const auto t0 = Clock::now();
  ExperimentReport rep = e.run(p, jobs);
  rep.name = name;
  rep.params = p;
  rep.verdict = e.judge(p, rep.table);
  rep.runtime_seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

Verdict judge_experiment(const std::string& name, const Config& params,
                         const CsvTable& table) {
  return entry(name).judge(resolve_params(name, params), table);
}

std::vector<VerifyResult> verify_reports(const fs::path& root) {
  require(fs::is_directory(root), ErrorCode::Io,
          "'" + root.string() + "' is not a directory");
  std::vector<fs::path> dirs;
  if (fs::exists(root / "manifest.txt")) dirs.push_back(root);
  for (const auto& de : fs::recursive_directory_iterator(root))
    if (de.is_directory() && fs::exists(de.path() / "manifest.txt"))
      dirs.push_back(de.path());
  std::sort(dirs.begin(), dirs.end());
  std::vector<VerifyResult> out;
  for (const auto& d : dirs) {
    const Config m = Config::read(d / "manifest.txt");
    if (m.get_string("meta.kind", "") != "experiment") continue;
    VerifyResult r;
    r.dir = d;
    r.experiment = m.get_string("meta.experiment");
    std::ifstream vin(d / "verdict.txt");
    std::string first;
    std::getline(vin, first);
    r.stored_pass = first == "PASS";
    r.recomputed = judge_experiment(r.experiment, m, read_csv(d / "report.csv"));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gpam
