#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gpam/spectral_field.hpp"

namespace gpam {

enum class MollifierKind { Gaussian, Sharp, Fejer };

/// Radial cut-off ψ with ψ(0) = 1 and |ψ| ≤ 1:
///   gaussian ψ(x) = e^{−|x|²}, sharp ψ = 1_{|x|≤1}, fejer ψ = (1 − |x|)₊.
class Mollifier {
 public:
  explicit Mollifier(MollifierKind kind) : kind_(kind) {}
  static Mollifier parse(std::string_view name);

  MollifierKind kind() const noexcept { return kind_; }
  std::string name() const;
  double operator()(double radius) const;
  // Radius beyond which ψ vanishes; infinity for the gaussian.
  double support_radius() const;

 private:
  MollifierKind kind_;
};

struct WhiteNoiseSample {
  SpectralField field;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int band = 0;  // populated modes satisfy max(|k1|,|k2|) ≤ band
};

// Zero-mean spatial white noise: for each pair {k, −k}, k ≠ 0, inside the
// band and below Nyquist, û(k) = (a + ib)/√2 with a, b standard normals keyed
// by (seed, stream, k). band < 0 selects n/2 − 1.
WhiteNoiseSample sample_white_noise(Grid grid, std::uint64_t seed,
                                    std::uint64_t stream, int band = -1);

// Random zero-mean real field on modes max(|k_i|) ≤ band with complex
// Gaussian coefficients scaled by (1 + |k|²)^{−decay/2}.
SpectralField sample_band_limited(Grid grid, int band, double decay,
                                  std::uint64_t seed, std::uint64_t stream);

// ξ^ε: û(k) ↦ ψ(ε|k|) û(k).
SpectralField mollify(const SpectralField& xi, const Mollifier& psi, double eps);
inline SpectralField mollify(const WhiteNoiseSample& xi, const Mollifier& psi,
                             double eps) {
  return mollify(xi.field, psi, eps);
}

struct LatticeSum {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the omitted terms beyond k_cut
};

// c_ε = Σ_{0 < max|k_i| ≤ k_cut} ψ(ε|k|)² / |k|².
LatticeSum renorm_constant(const Mollifier& psi, double eps, int k_cut);

// b_ε = Σ_{0 < max|k_i| ≤ k_cut} ψ(ε|k|) / |k|²; with absolute = true the
// terms use |ψ(ε|k|)|.
LatticeSum mixed_constant(const Mollifier& psi, double eps, int k_cut,
                          bool absolute = false);

struct TruncatedNoise {
  SpectralField field;  // ξ^n
  double c_n = 0.0;     // Σ 1/|k|² over the retained modes
  double radius = 0.0;  // ν 2^n
};

// Sharp truncation to 0 < |k| ≤ ν2^n. The radius may exceed the sample's
// band, in which case ξ^n = ξ; c_n always sums over retained modes only.
TruncatedNoise truncate_noise(const WhiteNoiseSample& xi, int level, double nu);

}  // namespace gpam

namespace gpam {

// Same sums restricted to the modes a sample of the given band carries,
// without the k_cut ≥ support/ε check; these are the on-grid counterterms.
double carried_renorm_constant(const Mollifier& psi, double eps, int band);
double carried_mixed_constant(const Mollifier& psi, double eps, int band);

}  // namespace gpam
