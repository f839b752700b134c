#include "gpam/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace gpam {

SpectralField::SpectralField(Grid grid)
    : grid_(grid), coeffs_(grid.size(), cplx{0.0, 0.0}) {}

SpectralField::SpectralField(Grid grid, std::vector<cplx> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  require(coeffs_.size() == grid_.size(), ErrorCode::InvalidArgument,
          "coefficient array does not match grid size");
}

SpectralField SpectralField::constant(Grid grid, double value) {
  SpectralField u(grid);
  u.coeffs_[0] = value;
  return u;
}

void SpectralField::set_real_mode(int k1, int k2, cplx v) {
  const bool self_paired = grid_.index_of(k1) == grid_.index_of(-k1) &&
                           grid_.index_of(k2) == grid_.index_of(-k2);
  require(!self_paired || v.imag() == 0.0, ErrorCode::SymmetryViolation,
          "self-conjugate mode needs a real coefficient");
  set_coeff(k1, k2, v);
  set_coeff(-k1, -k2, std::conj(v));
}

int SpectralField::band() const {
  const int n = grid_.n();
  int best = 0;
  for (int i1 = 0; i1 < n; ++i1) {
    const int a1 = std::abs(grid_.mode_of(i1));
    const cplx* row = coeffs_.data() + static_cast<std::size_t>(i1) * n;
    for (int i2 = 0; i2 < n; ++i2) {
      if (row[i2] == cplx{0.0, 0.0}) continue;
      best = std::max({best, a1, std::abs(grid_.mode_of(i2))});
    }
  }
  return best;
}

double SpectralField::hermitian_defect() const {
  const int n = grid_.n();
  double worst = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const int k1 = grid_.mode_of(i1), k2 = grid_.mode_of(i2);
      worst = std::max(worst,
                       std::abs(coeff(k1, k2) - std::conj(coeff(-k1, -k2))));
    }
  }
  return worst;
}

double SpectralField::coeff_l1() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s += std::abs(c);
  return s;
}

double SpectralField::coeff_l2() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

double SpectralField::coeff_max() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (cplx& c : coeffs_) c *= s;
  return *this;
}

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  double worst = 0.0;
  auto ca = a.coeffs();
  auto cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i)
    worst = std::max(worst, std::abs(ca[i] - cb[i]));
  return worst;
}

}  // namespace gpam
