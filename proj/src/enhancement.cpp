#include "gpam/enhancement.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gpam/paraproduct.hpp"
#include "gpam/torus.hpp"

namespace gpam {
namespace {

void require_zero_mean(const SpectralField& u, const char* what) {
  require(u.is_zero_mean(1e-12), ErrorCode::NonZeroMean,
          std::string(what) + " must have zero mean");
}

void require_lift_band(const SpectralField& u, const char* what) {
  const int band = u.band();
  require(band <= lift_band(u.grid()), ErrorCode::Bandwidth,
          std::string(what) + " has band " + std::to_string(band) +
              " above n/4 = " + std::to_string(lift_band(u.grid())));
}

}  // namespace

EnhancedPair enhance(const SpectralField& theta, double c,
                     const DyadicPartition& part) {
  require_zero_mean(theta, "theta");
  require_lift_band(theta, "theta");
  SpectralField second = resonant(theta, inverse_laplacian(theta), part);
  second.add_constant(-c);
  return {theta, std::move(second)};
}

double h_alpha_dist(const EnhancedPair& a, const EnhancedPair& b, double alpha,
                    const DyadicPartition& part) {
  require_same_grid(a.first.grid(), b.first.grid());
  return holder_norm(a.first - b.first, alpha - 2.0, part) +
         holder_norm(a.second - b.second, 2.0 * alpha - 2.0, part);
}

EnhancedPair translate(const EnhancedPair& xi, const SpectralField& h,
                       const DyadicPartition& part) {
  require_zero_mean(h, "translation h");
  require_lift_band(h, "translation h");
  require_lift_band(xi.first, "first component");
  // h∘Kh + h∘KΞ¹ = h∘K(h + Ξ¹)
  const SpectralField kh = inverse_laplacian(h);
  SpectralField second = xi.second;
  second += resonant(h, inverse_laplacian(h + xi.first), part);
  second += resonant(xi.first, kh, part);
  return {xi.first + h, std::move(second)};
}

SpectralField oscillatory(int n, double c, Grid grid) {
  require(n >= 1, ErrorCode::InvalidArgument, "oscillation level n >= 1");
  require(c >= 0.0, ErrorCode::InvalidArgument, "X^{n,c} needs c >= 0");
  require(2 * (1 << n) <= grid.n() / 4, ErrorCode::OutOfRange,
          "frequency 2^(n+1) = " + std::to_string(2 * (1 << n)) +
              " exceeds n/4 on grid " + std::to_string(grid.n()));
  SpectralField x(grid);
  if (c == 0.0) return x;
  const int k = 1 << n;
  // c^{1/2} 2^{n+1} cos(⟨k,x⟩) = c^{1/2} 2^n (e^{i⟨k,x⟩} + e^{−i⟨k,x⟩}).
  x.set_real_mode(k, k, std::sqrt(c) * std::ldexp(1.0, n));
  return x;
}

double separation_nu(int n, const DyadicPartition& part) {
  const double rx = std::ldexp(std::numbers::sqrt2, n);  // |2^n z|
  const auto [lo, hi] = part.blocks_touching(rx);
  (void)lo;
  // Modes with |k| ≥ 2^{hi+1} r_outer only reach blocks ≥ hi + 2.
  const double need = std::ldexp(part.radii().rho_outer, hi + 1 - n);
  double nu = 1.0;
  while (nu < need) nu *= 2.0;
  return nu;
}

ZeroTranslation zero_translation_field(const WhiteNoiseSample& xi, int n,
                                       double a, const DyadicPartition& part) {
  require_same_grid(xi.field.grid(), part.grid());
  const double nu = separation_nu(n, part);
  TruncatedNoise tr = truncate_noise(xi, n, nu);
  require(tr.c_n - a >= 0.0, ErrorCode::InvalidArgument,
          "c_n - a = " + std::to_string(tr.c_n - a) + " is negative");
  SpectralField x = oscillatory(n, tr.c_n - a, xi.field.grid());
  ZeroTranslation out{x - tr.field, nu, tr.c_n, 0.0};
  const SpectralField remainder = xi.field - tr.field;
  if (remainder.coeff_max() > 0.0 && x.coeff_max() > 0.0) {
    out.annihilation_residual =
        resonant(remainder, inverse_laplacian(x), part).coeff_l1();
  }
  return out;
}

}  // namespace gpam
