#pragma once

#include <complex>
#include <span>
#include <vector>

#include "gpam/grid.hpp"

namespace gpam {

using cplx = std::complex<double>;

/// Real scalar field on the 2-torus held as Fourier coefficients against
/// e^{i⟨k,x⟩}, so u(x) = Σ_k û(k) e^{i⟨k,x⟩} and û(0) is the mean of u with
/// respect to the normalized measure dx/(2π)². Real fields satisfy
/// û(−k) = conj(û(k)) (indices taken mod n).
class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, std::vector<cplx> coeffs);

  static SpectralField constant(Grid grid, double value);

  const Grid& grid() const noexcept { return grid_; }
  int n() const noexcept { return grid_.n(); }

  cplx coeff(int k1, int k2) const { return coeffs_[grid_.flat(k1, k2)]; }
  void set_coeff(int k1, int k2, cplx v) { coeffs_[grid_.flat(k1, k2)] = v; }
  // Sets û(k) and û(−k) = conj(v) together.
  void set_real_mode(int k1, int k2, cplx v);

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }

  cplx mean() const { return coeffs_[0]; }
  bool is_zero_mean(double tol = 1e-12) const {
    return std::abs(coeffs_[0]) <= tol;
  }

  // Largest max(|k1|, |k2|) over nonzero coefficients; 0 for constants.
  int band() const;
  // max_k |û(k) − conj(û(−k))|.
  double hermitian_defect() const;
  // Σ|û(k)|, an upper bound for the sup norm of u.
  double coeff_l1() const;
  double coeff_l2() const;
  double coeff_max() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  SpectralField& add_constant(double c) {
    coeffs_[0] += c;
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) {
    return a += b;
  }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) {
    return a -= b;
  }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator-(SpectralField a) { return a *= -1.0; }

  friend bool operator==(const SpectralField& a, const SpectralField& b) {
    return a.grid_ == b.grid_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Grid grid_;
  std::vector<cplx> coeffs_;
};

// Coefficient-wise sup distance.
double max_coeff_diff(const SpectralField& a, const SpectralField& b);

}  // namespace gpam
