#include "gpam/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpam/rng.hpp"
#include "gpam/torus.hpp"

namespace gpam {
namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

double lattice_term_sum(const Mollifier& psi, double eps, int k_cut,
                        double power, bool absolute) {
  CompensatedSum s;
  for (int k1 = -k_cut; k1 <= k_cut; ++k1) {
    for (int k2 = -k_cut; k2 <= k_cut; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double r2 = double(k1) * k1 + double(k2) * k2;
      double w = psi(eps * std::sqrt(r2));
      if (absolute) w = std::abs(w);
      if (w == 0.0) continue;
      s.add(std::pow(w, power) / r2);
    }
  }
  return s.value();
}

// Σ over shells max|k_i| = m > k_cut of 8m · sup_{|k| ≥ m} |ψ(ε|k|)|^p / m².
double lattice_tail(const Mollifier& psi, double eps, int k_cut, double power) {
  if (eps * (k_cut + 1) >= psi.support_radius()) return 0.0;
  if (std::isinf(psi.support_radius())) {
    double tail = 0.0;
    for (long long m = k_cut + 1;; ++m) {
      const double w = std::pow(std::abs(psi(eps * double(m))), power);
      const double term = 8.0 * w / double(m);
      tail += term;
      if (w < 1e-300 || (term < 1e-18 * tail && m > 4LL * (k_cut + 1))) break;
    }
    return tail;
  }
  double tail = 0.0;
  const long long last =
      static_cast<long long>(std::ceil(psi.support_radius() / eps));
  for (long long m = k_cut + 1; m <= last; ++m)
    tail += 8.0 * std::pow(std::abs(psi(eps * double(m))), power) / double(m);
  return tail;
}

void check_lattice_args(const Mollifier& psi, double eps, int k_cut) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  require(k_cut >= 1, ErrorCode::InvalidArgument, "k_cut must be >= 1");
  const double reach = psi.support_radius() / eps;
  require(std::isinf(reach) || k_cut >= std::floor(reach + 1e-12),
          ErrorCode::OutOfRange,
          "k_cut " + std::to_string(k_cut) + " below support radius 1/eps = " +
              std::to_string(reach) + " of the " + psi.name() + " mollifier");
}

}  // namespace

Mollifier Mollifier::parse(std::string_view name) {
  if (name == "gaussian") return Mollifier(MollifierKind::Gaussian);
  if (name == "sharp") return Mollifier(MollifierKind::Sharp);
  if (name == "fejer") return Mollifier(MollifierKind::Fejer);
  fail(ErrorCode::InvalidArgument,
       "unknown mollifier '" + std::string(name) + "'");
}

std::string Mollifier::name() const {
  switch (kind_) {
    case MollifierKind::Gaussian:
      return "gaussian";
    case MollifierKind::Sharp:
      return "sharp";
    case MollifierKind::Fejer:
      return "fejer";
  }
  return "unknown";
}

double Mollifier::operator()(double r) const {
  r = std::abs(r);
  switch (kind_) {
    case MollifierKind::Gaussian:
      return std::exp(-r * r);
    case MollifierKind::Sharp:
      return r <= 1.0 ? 1.0 : 0.0;
    case MollifierKind::Fejer:
      return r < 1.0 ? 1.0 - r : 0.0;
  }
  return 0.0;
}

double Mollifier::support_radius() const {
  return kind_ == MollifierKind::Gaussian
             ? std::numeric_limits<double>::infinity()
             : 1.0;
}

WhiteNoiseSample sample_white_noise(Grid grid, std::uint64_t seed,
                                    std::uint64_t stream, int band) {
  const int limit = grid.nyquist() - 1;
  if (band < 0) band = limit;
  band = std::min(band, limit);
  WhiteNoiseSample s{SpectralField(grid), seed, stream, band};
  for (int k1 = 0; k1 <= band; ++k1) {
    for (int k2 = -band; k2 <= band; ++k2) {
      // One representative per pair {k, −k}.
      if (k1 == 0 && k2 <= 0) continue;
      double a, b;
      counter_normal_pair({seed, stream, mode_key(k1), mode_key(k2)}, 0, a, b);
      s.field.set_real_mode(k1, k2, cplx{a, b} * std::sqrt(0.5));
    }
  }
  return s;
}

SpectralField sample_band_limited(Grid grid, int band, double decay,
                                  std::uint64_t seed, std::uint64_t stream) {
  band = std::min(band, grid.nyquist() - 1);
  SpectralField u(grid);
  for (int k1 = 0; k1 <= band; ++k1) {
    for (int k2 = -band; k2 <= band; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      double a, b;
      counter_normal_pair({seed, stream, mode_key(k1), mode_key(k2)}, 0, a, b);
      const double scale =
          std::pow(1.0 + double(k1) * k1 + double(k2) * k2, -0.5 * decay);
      u.set_real_mode(k1, k2, cplx{a, b} * (scale * std::sqrt(0.5)));
    }
  }
  return u;
}

SpectralField mollify(const SpectralField& xi, const Mollifier& psi,
                      double eps) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  return apply_radial(xi, [&](long long r2) {
    return psi(eps * std::sqrt(static_cast<double>(r2)));
  });
}

LatticeSum renorm_constant(const Mollifier& psi, double eps, int k_cut) {
  check_lattice_args(psi, eps, k_cut);
  return {lattice_term_sum(psi, eps, k_cut, 2.0, false),
          lattice_tail(psi, eps, k_cut, 2.0)};
}

LatticeSum mixed_constant(const Mollifier& psi, double eps, int k_cut,
                          bool absolute) {
  check_lattice_args(psi, eps, k_cut);
  return {lattice_term_sum(psi, eps, k_cut, 1.0, absolute),
          lattice_tail(psi, eps, k_cut, 1.0)};
}

double carried_renorm_constant(const Mollifier& psi, double eps, int band) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  return lattice_term_sum(psi, eps, band, 2.0, false);
}

double carried_mixed_constant(const Mollifier& psi, double eps, int band) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  return lattice_term_sum(psi, eps, band, 1.0, false);
}

TruncatedNoise truncate_noise(const WhiteNoiseSample& xi, int level,
                              double nu) {
  require(level >= 0 && nu > 0.0, ErrorCode::InvalidArgument,
          "truncation needs level >= 0 and nu > 0");
  const double radius = std::ldexp(nu, level);
  const double r2max = radius * radius;
  TruncatedNoise out{SpectralField(xi.field.grid()), 0.0, radius};
  CompensatedSum c;
  const int band = xi.band;
  for (int k1 = -band; k1 <= band; ++k1) {
    for (int k2 = -band; k2 <= band; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double r2 = double(k1) * k1 + double(k2) * k2;
      if (r2 > r2max) continue;
      out.field.set_coeff(k1, k2, xi.field.coeff(k1, k2));
      c.add(1.0 / r2);
    }
  }
  out.c_n = c.value();
  return out;
}

}  // namespace gpam
