#pragma once

#include "gpam/littlewood_paley.hpp"
#include "gpam/noise.hpp"

namespace gpam {

/// Ξ = (Ξ¹, Ξ²): a zero-mean candidate noise and its renormalized resonant
/// lift. A renormalization constant −c sits in the mean of Ξ².
struct EnhancedPair {
  SpectralField first;
  SpectralField second;

  EnhancedPair shifted(double a) const {
    EnhancedPair out = *this;
    out.second.add_constant(-a);
    return out;
  }
};

// Largest band for which every lift product is computed exactly.
inline int lift_band(const Grid& g) { return g.n() / 4; }

// ℳ(θ, c) = (θ, θ∘Kθ − c).
EnhancedPair enhance(const SpectralField& theta, double c,
                     const DyadicPartition& part);

// ‖Ξ¹_a − Ξ¹_b‖_{α−2} + ‖Ξ²_a − Ξ²_b‖_{2α−2}. Values of alpha outside
// (2/3, 1) are accepted; h_alpha_in_standing_range() reports them.
double h_alpha_dist(const EnhancedPair& a, const EnhancedPair& b, double alpha,
                    const DyadicPartition& part);
inline bool h_alpha_in_standing_range(double alpha) {
  return alpha > 2.0 / 3.0 && alpha < 1.0;
}

// T_hΞ = (Ξ¹ + h, Ξ² + h∘Kh + h∘KΞ¹ + Ξ¹∘Kh).
EnhancedPair translate(const EnhancedPair& xi, const SpectralField& h,
                       const DyadicPartition& part);

// X^{n,c}(x) = c^{1/2} 2^{n+1} cos(2^n⟨z,x⟩), z = (1,1).
SpectralField oscillatory(int n, double c, Grid grid);

struct ZeroTranslation {
  SpectralField h;                   // −ξ^n + X^{n, c_n − a}
  double nu = 0.0;                   // truncation scale
  double c_n = 0.0;                  // lattice sum of the retained modes
  double annihilation_residual = 0.0;  // Σ|coeff| of (ξ − ξ^n)∘K X
};

// Smallest power-of-two ν such that every mode of ξ − ξ^n (|k| > ν2^n) lies
// at least two dyadic blocks above every block that sees X^{n,·}, using the
// partition's recorded radii.
double separation_nu(int n, const DyadicPartition& part);

ZeroTranslation zero_translation_field(const WhiteNoiseSample& xi, int n,
                                       double a, const DyadicPartition& part);

}  // namespace gpam
