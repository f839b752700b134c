#pragma once

#include <array>
#include <functional>
#include <span>

#include "gpam/aligned.hpp"
#include "gpam/spectral_field.hpp"

namespace gpam {

/// Samples of a real field on an m×m uniform grid of [0, 2π)², row-major,
/// point (a, b) at (2πa/m, 2πb/m).
struct PhysicalField {
  int m = 0;
  RealBuffer values;

  double& at(int a, int b) {
    return values[static_cast<std::size_t>(a) * m + b];
  }
  double at(int a, int b) const {
    return values[static_cast<std::size_t>(a) * m + b];
  }
};

// Grid values u(x_m) -> coefficients. Round trip with fft_inverse is exact to
// round-off, Nyquist modes included.
SpectralField fft_forward(Grid grid, std::span<const double> values);
std::vector<double> fft_inverse(const SpectralField& u);

// Trigonometric interpolation of u on an m×m grid (m a power of two, m ≥ n,
// or m ≥ 2·band + 2 when m < n). A Nyquist coefficient is split evenly over
// its ± representatives when m > n.
PhysicalField to_physical(const SpectralField& u, int m);
// Same, with u.band() already known to be at most `band`.
PhysicalField to_physical(const SpectralField& u, int m, int band);

// Coefficients of the sampled field restricted to modes max(|k1|,|k2|) ≤
// keep_band on the target grid. With m > n the target's Nyquist modes are
// dropped.
SpectralField from_physical(const PhysicalField& values, Grid target,
                            int keep_band);

// Smallest power-of-two size whose grid carries the product of two fields of
// total bandwidth `band_sum` without aliasing onto kept modes |k_i| ≤ keep_band.
int product_grid_size(int band_sum, int keep_band);

using Multiplier = std::function<cplx(int, int)>;

// Coefficient-wise multiplier. Throws SymmetryViolation when m(−k) differs
// from conj(m(k)) on a paired mode, since the output would not be real.
SpectralField apply_multiplier(const SpectralField& u, const Multiplier& m);

// Real multiplier depending only on |k|²; skips symmetry bookkeeping.
SpectralField apply_radial(const SpectralField& u,
                           const std::function<double(long long)>& weight);

SpectralField inverse_laplacian(const SpectralField& u);  // K = (−Δ)^{-1}
SpectralField laplacian(const SpectralField& u);
SpectralField heat_semigroup(const SpectralField& u, double t);
std::array<SpectralField, 2> gradient(const SpectralField& u);
SpectralField project_zero_mean(SpectralField u);

// Pointwise product, truncated back to the base mode set (Nyquist dropped).
// Exact whenever the true product lives in the kept modes.
SpectralField dealiased_product(const SpectralField& u, const SpectralField& v);

// Σ_i a_i·b_i evaluated in physical space on one padded grid and transformed
// once. Used by the paraproduct and resonant sums.
class ProductAccumulator {
 public:
  ProductAccumulator(Grid grid, int band_sum);

  // Padded size an accumulator for this band sum would use.
  static int size_for(const Grid& grid, int band_sum);
  // Raises the admissible band sum; the padded size must not change.
  void widen(int band_sum);

  void add(const SpectralField& a, const SpectralField& b);
  void add(const SpectralField& a, int band_a, const SpectralField& b,
           int band_b);
  void add(const PhysicalField& a, const PhysicalField& b);
  int padded_size() const noexcept { return m_; }
  SpectralField finish() const;

 private:
  Grid grid_;
  int band_sum_;
  int keep_band_;
  int m_;
  PhysicalField sum_;
};

// Applies g pointwise on the 2n grid and truncates back (Nyquist dropped).
SpectralField map_pointwise(const SpectralField& u,
                            const std::function<double(double)>& g);

// Sup of |u| sampled on a grid 2× oversampled relative to u's bandwidth.
double sup_norm(const SpectralField& u);
double sup_norm(const SpectralField& u, int band);

}  // namespace gpam
