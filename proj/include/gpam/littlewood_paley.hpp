#pragma once

#include <limits>
#include <cstdint>
#include <cmath>
#include <string>
#include <vector>
#include <utility>

#include "gpam/spectral_field.hpp"

namespace gpam {

// Smooth step η: [0,∞) → [0,1], η = 1 on [0,1], η = 0 on [2,∞), built from
// g(t) = e^{−1/t}.
double smooth_transition(double r);

// Radii recorded by scanning where the sampled multipliers are positive.
// Inner bounds are the last zero sample, outer bounds the first zero sample
// after the positive region, so the true supports lie inside.
struct SupportRadii {
  double chi_outer = 0.0;
  double rho_inner = 0.0;
  double rho_outer = 0.0;
};

/// Dyadic partition of unity χ(ξ) = η(3|ξ|/4), ρ(ξ) = χ(ξ/2) − χ(ξ), sampled
/// on the integer modes of a grid. Blocks run over j = −1 … j_max with
/// j_max = log₂(n) − 1, which covers every representable mode.
class DyadicPartition {
 public:
  explicit DyadicPartition(Grid grid);

  const Grid& grid() const noexcept { return grid_; }
  int j_max() const noexcept { return j_max_; }
  const SupportRadii& radii() const noexcept { return radii_; }

  double chi(double r) const;
  double rho(double r) const;
  // χ(r) for j = −1, ρ(2^{−j} r) for j ≥ 0.
  double weight(int j, double r) const;

  // Lowest and highest block index whose recorded support contains radius r.
  std::pair<int, int> blocks_touching(double r) const;
  // Largest |k| that block j can see, from the recorded radii.
  double block_outer_radius(int j) const;

  // weight(j, √r2) for a representable squared radius r2, from a table
  // filled at construction.
  double weight_r2(int j, long long r2) const {
    const std::size_t i = static_cast<std::size_t>(r2);
    if (i >= low_block_.size()) return weight(j, std::sqrt(double(r2)));
    const int lo = low_block_[i];
    if (j == lo) return low_weight_[i];
    if (j == lo + 1) return high_weight_[i];
    return 0.0;
  }
  // Σ_{j_lo ≤ j ≤ j_hi} weight_r2(j, r2).
  double range_weight_r2(int j_lo, int j_hi, long long r2) const {
    const std::size_t i = static_cast<std::size_t>(r2);
    if (i >= low_block_.size()) {
      double w = 0.0;
      for (int j = j_lo; j <= j_hi; ++j) w += weight(j, std::sqrt(double(r2)));
      return w;
    }
    const int lo = low_block_[i];
    double w = 0.0;
    if (lo >= j_lo && lo <= j_hi) w += low_weight_[i];
    if (lo + 1 >= j_lo && lo + 1 <= j_hi) w += high_weight_[i];
    return w;
  }

  // Scanned over every grid mode at construction.
  int max_overlap() const noexcept { return max_overlap_; }
  double unity_defect() const noexcept { return unity_defect_; }
  bool supports_disjoint() const noexcept { return disjoint_; }

  // Stable digest of the sampled partition, used in run provenance.
  std::string hash() const;

 private:
  Grid grid_;
  int j_max_;
  SupportRadii radii_;
  int max_overlap_ = 0;
  std::vector<std::int8_t> low_block_;
  std::vector<double> low_weight_, high_weight_;
  double unity_defect_ = 0.0;
  bool disjoint_ = true;
};

// Σ_{j_lo ≤ j ≤ j_hi} Δ_j u in one multiplier pass; indices are clipped to
// the partition's range.
SpectralField band_pass(const SpectralField& u, int j_lo, int j_hi,
                        const DyadicPartition& part);

struct BandedField {
  SpectralField field;
  int band = -1;  // band of field, −1 when it is identically zero
};

// band_pass for a field whose band is known, also reporting the band of the
// result so callers can skip rescanning it.
BandedField band_pass_banded(const SpectralField& u, int u_band, int j_lo,
                             int j_hi, const DyadicPartition& part);

// Δ_j u; j = −1 is the low-pass block.
SpectralField lp_block(const SpectralField& u, int j,
                       const DyadicPartition& part);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct BesovIndex {
  double alpha = 0.0;
  double p = kInf;
  double q = kInf;
};

// L^p norm for the normalized measure, so ‖1‖_{L^p} = 1. Sampled on a grid
// 2× oversampled relative to u's bandwidth; p = ∞ takes the max.
double lp_norm(const SpectralField& u, double p);

double besov_norm(const SpectralField& u, const BesovIndex& idx,
                  const DyadicPartition& part);

inline double holder_norm(const SpectralField& u, double alpha,
                          const DyadicPartition& part) {
  return besov_norm(u, {alpha, kInf, kInf}, part);
}

inline double sobolev_norm(const SpectralField& u, double alpha,
                           const DyadicPartition& part) {
  return besov_norm(u, {alpha, 2.0, 2.0}, part);
}

struct EmbeddingReport {
  double source_norm = 0.0;  // ‖u‖ in B^α_{p1,p1}
  double target_norm = 0.0;  // ‖u‖ in B^{α−2(1/p1−1/p2)}_{p2,p2}
  double ratio = 0.0;
};

EmbeddingReport besov_embedding_check(const SpectralField& u, double alpha,
                                      double p1, double p2,
                                      const DyadicPartition& part);

}  // namespace gpam
