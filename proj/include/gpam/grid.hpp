#pragma once

#include <cstddef>

#include "gpam/errors.hpp"

namespace gpam {

/// Square collocation grid on [0, 2π)²: points x_m = 2π m / n, modes
/// k ∈ {−n/2, …, n/2−1}². Coefficients are stored row-major with the usual
/// FFT wrap-around (index i holds mode i for i < n/2 and i − n otherwise).
class Grid {
 public:
  explicit Grid(int n);

  int n() const noexcept { return n_; }
  int nyquist() const noexcept { return n_ / 2; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }

  int mode_of(int index) const noexcept {
    return index < n_ / 2 ? index : index - n_;
  }
  int index_of(int mode) const noexcept {
    int i = mode % n_;
    return i < 0 ? i + n_ : i;
  }
  std::size_t flat(int k1, int k2) const noexcept {
    return static_cast<std::size_t>(index_of(k1)) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(index_of(k2));
  }
  // True when the mode is representable and not on the Nyquist row/column.
  bool below_nyquist(int k1, int k2) const noexcept {
    return k1 > -n_ / 2 && k1 < n_ / 2 && k2 > -n_ / 2 && k2 < n_ / 2;
  }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_ == b.n_;
  }

 private:
  int n_;
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline Grid::Grid(int n) : n_(n) {
  require(is_power_of_two(n) && n >= 8, ErrorCode::InvalidArgument,
          "grid size must be a power of two >= 8, got " + std::to_string(n));
}

inline void require_same_grid(const Grid& a, const Grid& b) {
  require(a == b, ErrorCode::GridMismatch,
          "grid mismatch: " + std::to_string(a.n()) + " vs " +
              std::to_string(b.n()));
}

}  // namespace gpam
