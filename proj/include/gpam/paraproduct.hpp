#pragma once

#include <cstdint>
#include <string_view>

#include "gpam/littlewood_paley.hpp"

namespace gpam {

// f ≺ g = Σ_{j≥1} S_{j−1}f · Δ_j g, with S_{j−1}f = Σ_{i<j−1} Δ_i f.
SpectralField para_lt(const SpectralField& f, const SpectralField& g,
                      const DyadicPartition& part);
// f ≻ g = g ≺ f.
SpectralField para_gt(const SpectralField& f, const SpectralField& g,
                      const DyadicPartition& part);
// f ∘ g = Σ_{|i−j|≤1} Δ_i f · Δ_j g.
SpectralField resonant(const SpectralField& f, const SpectralField& g,
                       const DyadicPartition& part);

enum class BonyKind { ParaBounded, ParaNegative, ResonantPositive };

BonyKind parse_bony_kind(std::string_view name);

struct BonyEnsemble {
  int n = 64;
  int count = 200;
  std::uint64_t seed = 1;
  double alpha = 0.8;  // regularity of f
  double beta = -0.5;  // regularity of g
};

struct BonyReport {
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int samples = 0;
};

// Ratio LHS/RHS of the chosen Bony inequality over random band-limited
// pairs with prescribed coefficient decay:
//   ParaBounded:      ‖f≺g‖_β / (‖f‖_∞ ‖g‖_β)
//   ParaNegative:     ‖f≻g‖_{α+β} / (‖f‖_α ‖g‖_β), needs β < 0
//   ResonantPositive: ‖f∘g‖_{α+β} / (‖f‖_α ‖g‖_β), needs α + β > 0
BonyReport bony_estimate_check(BonyKind kind, const BonyEnsemble& ens);

}  // namespace gpam
