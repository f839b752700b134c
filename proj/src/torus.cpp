#include "gpam/torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "fft_backend.hpp"

namespace gpam {
namespace {

using HalfBuffer = std::vector<cplx, AlignedAllocator<cplx>>;

int next_pow2(int v) {
  int p = 1;
  while (p < v) p <<= 1;
  return p;
}

int wrap(int k, int m) {
  int i = k % m;
  return i < 0 ? i + m : i;
}

// Iterates the coefficient box max(|k1|,|k2|) ≤ band clipped to the grid.
template <class F>
void for_each_mode_in_band(const Grid& g, int band, F&& fn) {
  const int lo = std::max(-band, -g.nyquist());
  const int hi = std::min(band, g.nyquist() - 1);
  for (int k1 = lo; k1 <= hi; ++k1)
    for (int k2 = lo; k2 <= hi; ++k2) fn(k1, k2);
}

}  // namespace

PhysicalField to_physical(const SpectralField& u, int m) {
  return to_physical(u, m, u.band());
}

PhysicalField to_physical(const SpectralField& u, int m, int band) {
  const Grid& g = u.grid();
  const int n = g.n();
  require(is_power_of_two(m) && (m >= n || 2 * band + 2 <= m),
          ErrorCode::InvalidArgument,
          "evaluation grid " + std::to_string(m) + " cannot carry band " +
              std::to_string(band));
  const int hc = m / 2 + 1;
  HalfBuffer half(static_cast<std::size_t>(m) * hc, cplx{0.0, 0.0});
  const bool split_nyquist = m > n;

  for_each_mode_in_band(g, band, [&](int k1, int k2) {
    const cplx c = u.coeff(k1, k2);
    if (c == cplx{0.0, 0.0}) return;
    int reps1[2] = {k1, k1}, reps2[2] = {k2, k2};
    int c1 = 1, c2 = 1;
    if (split_nyquist && k1 == -n / 2) reps1[1] = n / 2, c1 = 2;
    if (split_nyquist && k2 == -n / 2) reps2[1] = n / 2, c2 = 2;
    const double w = 1.0 / (c1 * c2);
    for (int a = 0; a < c1; ++a) {
      for (int b = 0; b < c2; ++b) {
        int r2 = reps2[b];
        if (r2 < 0) {
          // Only the self-conjugate column m/2 is stored for negative r2.
          if (r2 != -m / 2) continue;
          r2 = m / 2;
        }
        half[static_cast<std::size_t>(wrap(reps1[a], m)) * hc + r2] += c * w;
      }
    }
  });

  PhysicalField out{m, RealBuffer(static_cast<std::size_t>(m) * m)};
  detail::fft_c2r(m, half.data(), out.values.data());
  return out;
}

SpectralField from_physical(const PhysicalField& values, Grid target,
                            int keep_band) {
  const int m = values.m;
  const int n = target.n();
  require(values.values.size() == static_cast<std::size_t>(m) * m,
          ErrorCode::InvalidArgument, "physical buffer size mismatch");
  int band = std::min(keep_band, n / 2);
  if (m > n) band = std::min(band, n / 2 - 1);
  require(band <= m / 2, ErrorCode::InvalidArgument,
          "sample grid too coarse for requested band");
  const int hc = m / 2 + 1;
  HalfBuffer half(static_cast<std::size_t>(m) * hc);
  RealBuffer scratch(values.values.begin(), values.values.end());
  detail::fft_r2c(m, scratch.data(), half.data());
  const double scale = 1.0 / (static_cast<double>(m) * m);

  SpectralField out(target);
  for_each_mode_in_band(target, band, [&](int k1, int k2) {
    cplx v;
    if (k2 >= 0)
      v = half[static_cast<std::size_t>(wrap(k1, m)) * hc + k2];
    else
      v = std::conj(half[static_cast<std::size_t>(wrap(-k1, m)) * hc + (-k2)]);
    out.set_coeff(k1, k2, v * scale);
  });
  return out;
}

SpectralField fft_forward(Grid grid, std::span<const double> values) {
  require(values.size() == grid.size(), ErrorCode::InvalidArgument,
          "expected " + std::to_string(grid.size()) + " grid values, got " +
              std::to_string(values.size()));
  PhysicalField p{grid.n(), RealBuffer(values.begin(), values.end())};
  return from_physical(p, grid, grid.n() / 2);
}

std::vector<double> fft_inverse(const SpectralField& u) {
  PhysicalField p = to_physical(u, u.n());
  return {p.values.begin(), p.values.end()};
}

int product_grid_size(int max_input_band, int band_sum, int keep_band) {
  const int kept = std::min(keep_band, band_sum);
  int m = next_pow2(band_sum + kept + 1);
  m = std::max(m, next_pow2(2 * max_input_band + 2));
  return std::max(m, 8);
}

SpectralField apply_multiplier(const SpectralField& u, const Multiplier& mult) {
  const Grid& g = u.grid();
  SpectralField out(g);
  const int n = g.n();
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const int k1 = g.mode_of(i1), k2 = g.mode_of(i2);
      const cplx mk = mult(k1, k2);
      if (g.below_nyquist(k1, k2)) {
        const cplx mpair = mult(-k1, -k2);
        const double tol = 1e-12 * std::max(1.0, std::abs(mk));
        if (std::abs(mpair - std::conj(mk)) > tol)
          fail(ErrorCode::SymmetryViolation,
               "multiplier breaks Hermitian symmetry at mode (" +
                   std::to_string(k1) + "," + std::to_string(k2) + ")");
      }
      out.set_coeff(k1, k2, mk * u.coeff(k1, k2));
    }
  }
  return out;
}

SpectralField apply_radial(const SpectralField& u,
                           const std::function<double(long long)>& weight) {
  const Grid& g = u.grid();
  SpectralField out(g);
  for_each_mode_in_band(g, u.band(), [&](int k1, int k2) {
    const cplx c = u.coeff(k1, k2);
    if (c == cplx{0.0, 0.0}) return;
    const long long r2 = 1LL * k1 * k1 + 1LL * k2 * k2;
    out.set_coeff(k1, k2, weight(r2) * c);
  });
  return out;
}

SpectralField inverse_laplacian(const SpectralField& u) {
  require(u.is_zero_mean(1e-12), ErrorCode::NonZeroMean,
          "inverse Laplacian needs a zero-mean field");
  return apply_radial(u, [](long long r2) {
    return r2 == 0 ? 0.0 : 1.0 / static_cast<double>(r2);
  });
}

SpectralField laplacian(const SpectralField& u) {
  return apply_radial(u,
                      [](long long r2) { return -static_cast<double>(r2); });
}

SpectralField heat_semigroup(const SpectralField& u, double t) {
  require(t >= 0.0, ErrorCode::InvalidArgument,
          "heat semigroup needs t >= 0");
  return apply_radial(
      u, [t](long long r2) { return std::exp(-static_cast<double>(r2) * t); });
}

std::array<SpectralField, 2> gradient(const SpectralField& u) {
  const Grid& g = u.grid();
  std::array<SpectralField, 2> out{SpectralField(g), SpectralField(g)};
  for_each_mode_in_band(g, u.band(), [&](int k1, int k2) {
    const cplx c = u.coeff(k1, k2);
    if (c == cplx{0.0, 0.0}) return;
    // The Nyquist component of a derivative is not real; it is dropped.
    if (k1 != -g.nyquist()) out[0].set_coeff(k1, k2, cplx{0.0, double(k1)} * c);
    if (k2 != -g.nyquist()) out[1].set_coeff(k1, k2, cplx{0.0, double(k2)} * c);
  });
  return out;
}

SpectralField project_zero_mean(SpectralField u) {
  u.coeffs()[0] = 0.0;
  return u;
}

SpectralField dealiased_product(const SpectralField& u, const SpectralField& v) {
  require_same_grid(u.grid(), v.grid());
  const int bu = u.band(), bv = v.band();
  ProductAccumulator acc(u.grid(), bu + bv);
  acc.add(u, v);
  return acc.finish();
}

namespace {

// A grid at least as fine as the base grid samples any input exactly, so
// only the aliasing bound matters there.
int accumulator_size(const Grid& grid, int band_sum) {
  const int m = product_grid_size(0, band_sum, grid.nyquist() - 1);
  if (m >= grid.n()) return m;
  return product_grid_size(std::min(band_sum, grid.nyquist()), band_sum,
                           grid.nyquist() - 1);
}

}  // namespace

int ProductAccumulator::size_for(const Grid& grid, int band_sum) {
  return accumulator_size(grid, band_sum);
}

void ProductAccumulator::widen(int band_sum) {
  if (band_sum <= band_sum_) return;
  require(accumulator_size(grid_, band_sum) == m_, ErrorCode::Bandwidth,
          "widened band sum needs a different padded grid");
  band_sum_ = band_sum;
  keep_band_ = std::min(band_sum, grid_.nyquist() - 1);
}

ProductAccumulator::ProductAccumulator(Grid grid, int band_sum)
    : grid_(grid),
      band_sum_(band_sum),
      keep_band_(std::min(band_sum, grid.nyquist() - 1)),
      m_(accumulator_size(grid, band_sum)),
      sum_{m_, RealBuffer(static_cast<std::size_t>(m_) * m_, 0.0)} {}

void ProductAccumulator::add(const SpectralField& a, const SpectralField& b) {
  add(a, a.band(), b, b.band());
}

void ProductAccumulator::add(const SpectralField& a, int band_a,
                             const SpectralField& b, int band_b) {
  require_same_grid(grid_, a.grid());
  require_same_grid(grid_, b.grid());
  require(band_a + band_b <= band_sum_, ErrorCode::Bandwidth,
          "product exceeds accumulator bandwidth");
  add(to_physical(a, m_, band_a), to_physical(b, m_, band_b));
}

void ProductAccumulator::add(const PhysicalField& a, const PhysicalField& b) {
  require(a.m == m_ && b.m == m_, ErrorCode::InvalidArgument,
          "physical field size does not match accumulator");
  double* s = sum_.values.data();
  const double* pa = a.values.data();
  const double* pb = b.values.data();
  const std::size_t count = sum_.values.size();
  for (std::size_t i = 0; i < count; ++i) s[i] += pa[i] * pb[i];
}

SpectralField ProductAccumulator::finish() const {
  return from_physical(sum_, grid_, keep_band_);
}

SpectralField map_pointwise(const SpectralField& u,
                            const std::function<double(double)>& g) {
  const int m = 2 * u.n();
  PhysicalField p = to_physical(u, m);
  for (double& x : p.values) x = g(x);
  return from_physical(p, u.grid(), u.grid().nyquist() - 1);
}

double sup_norm(const SpectralField& u) { return sup_norm(u, u.band()); }

double sup_norm(const SpectralField& u, int band) {
  const int n = u.n();
  int m = std::min(2 * n, 2 * next_pow2(2 * band + 2));
  if (band >= n / 2) m = 2 * n;
  m = std::max(m, 8);
  PhysicalField p = to_physical(u, m, band);
  double s = 0.0;
  for (double x : p.values) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace gpam
