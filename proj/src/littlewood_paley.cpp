#include "gpam/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <vector>

#include "gpam/torus.hpp"

namespace gpam {
namespace {

double bump_tail(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

int log2_int(int n) {
  int l = 0;
  while ((1 << l) < n) ++l;
  return l;
}

int next_pow2(int v) {
  int p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace

double smooth_transition(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = bump_tail(2.0 - r);
  const double b = bump_tail(r - 1.0);
  return a / (a + b);
}

DyadicPartition::DyadicPartition(Grid grid)
    : grid_(grid), j_max_(log2_int(grid.n()) - 1) {
  // Radial scan of the multipliers on [0, 8] with step 1e-4.
  constexpr double step = 1e-4;
  constexpr int samples = 80000;
  bool seen_positive = false;
  radii_.chi_outer = 8.0;
  for (int i = 0; i <= samples; ++i) {
    const double r = i * step;
    if (chi(r) == 0.0) {
      radii_.chi_outer = r;
      break;
    }
  }
  radii_.rho_outer = 8.0;
  for (int i = 0; i <= samples; ++i) {
    const double r = i * step;
    const double v = rho(r);
    if (!seen_positive) {
      if (v > 0.0)
        seen_positive = true;
      else
        radii_.rho_inner = r;
    } else if (v == 0.0) {
      radii_.rho_outer = r;
      break;
    }
  }

  // Mode scan over one octant; the multipliers are radial.
  const int half = grid_.nyquist();
  const std::size_t table = 2 * static_cast<std::size_t>(half) * half + 1;
  low_block_.assign(table, static_cast<std::int8_t>(-2));
  low_weight_.assign(table, 0.0);
  high_weight_.assign(table, 0.0);
  for (int k1 = 0; k1 <= half; ++k1) {
    for (int k2 = 0; k2 <= k1; ++k2) {
      const double r = std::sqrt(double(k1) * k1 + double(k2) * k2);
      double total = 0.0;
      int count = 0;
      int lo = j_max_ + 1, hi = -2;
      for (int j = -1; j <= j_max_; ++j) {
        const double w = weight(j, r);
        total += w;
        if (w > 0.0) {
          ++count;
          lo = std::min(lo, j);
          hi = std::max(hi, j);
        }
      }
      unity_defect_ = std::max(unity_defect_, std::abs(total - 1.0));
      max_overlap_ = std::max(max_overlap_, count);
      if (hi - lo > 1) disjoint_ = false;
      const std::size_t r2 = static_cast<std::size_t>(k1) * k1 +
                             static_cast<std::size_t>(k2) * k2;
      low_block_[r2] = static_cast<std::int8_t>(lo);
      low_weight_[r2] = weight(lo, r);
      high_weight_[r2] = lo + 1 <= j_max_ ? weight(lo + 1, r) : 0.0;
    }
  }
  if (!disjoint_) {
    // Tables assume at most two adjacent blocks per radius.
    low_block_.clear();
    low_weight_.clear();
    high_weight_.clear();
  }
}

double DyadicPartition::chi(double r) const {
  return smooth_transition(3.0 * r / 4.0);
}

double DyadicPartition::rho(double r) const { return chi(r / 2.0) - chi(r); }

double DyadicPartition::weight(int j, double r) const {
  if (j < 0) return chi(r);
  return rho(std::ldexp(r, -j));
}

std::pair<int, int> DyadicPartition::blocks_touching(double r) const {
  int lo = j_max_ + 1, hi = -2;
  if (r < radii_.chi_outer) lo = hi = -1;
  for (int j = 0; j <= j_max_; ++j) {
    const double s = std::ldexp(1.0, j);
    if (r > s * radii_.rho_inner && r < s * radii_.rho_outer) {
      lo = std::min(lo, j);
      hi = std::max(hi, j);
    }
  }
  return {lo, hi};
}

double DyadicPartition::block_outer_radius(int j) const {
  if (j < 0) return radii_.chi_outer;
  return std::ldexp(radii_.rho_outer, j);
}

std::string DyadicPartition::hash() const {
  // FNV-1a over the grid size and a fixed radial sampling of χ and ρ.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(grid_.n()));
  mix(static_cast<std::uint64_t>(j_max_));
  for (int i = 0; i <= 800; ++i) {
    const double r = i * 0.01;
    double c = chi(r), p = rho(r);
    std::uint64_t bits;
    std::memcpy(&bits, &c, sizeof bits);
    mix(bits);
    std::memcpy(&bits, &p, sizeof bits);
    mix(bits);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BandedField band_pass_banded(const SpectralField& u, int u_band, int j_lo,
                             int j_hi, const DyadicPartition& part) {
  require_same_grid(u.grid(), part.grid());
  j_lo = std::max(j_lo, -1);
  j_hi = std::min(j_hi, part.j_max());
  const Grid& g = u.grid();
  BandedField out{SpectralField(g), -1};
  if (j_lo > j_hi) return out;
  const int reach = static_cast<int>(std::ceil(part.block_outer_radius(j_hi)));
  const int box = std::min(u_band, reach);
  const int lo = std::max(-box, -g.nyquist());
  const int hi = std::min(box, g.nyquist() - 1);
  const int n = g.n();
  std::vector<int> cols;
  for (int k2 = lo; k2 <= hi; ++k2) cols.push_back(g.index_of(k2));
  auto src = u.coeffs();
  auto dst = out.field.coeffs();
  for (int k1 = lo; k1 <= hi; ++k1) {
    const std::size_t row = static_cast<std::size_t>(g.index_of(k1)) * n;
    const long long a = static_cast<long long>(k1) * k1;
    for (int k2 = lo; k2 <= hi; ++k2) {
      const std::size_t idx = row + cols[k2 - lo];
      const cplx c = src[idx];
      if (c == cplx{0.0, 0.0}) continue;
      const double w =
          part.range_weight_r2(j_lo, j_hi, a + static_cast<long long>(k2) * k2);
      if (w == 0.0) continue;
      dst[idx] = w * c;
      out.band = std::max({out.band, std::abs(k1), std::abs(k2)});
    }
  }
  return out;
}

SpectralField band_pass(const SpectralField& u, int j_lo, int j_hi,
                        const DyadicPartition& part) {
  return band_pass_banded(u, u.band(), j_lo, j_hi, part).field;
}

SpectralField lp_block(const SpectralField& u, int j,
                       const DyadicPartition& part) {
  require(j >= -1 && j <= part.j_max(), ErrorCode::OutOfRange,
          "block index " + std::to_string(j) + " outside [-1, " +
              std::to_string(part.j_max()) + "]");
  return band_pass(u, j, j, part);
}

double lp_norm(const SpectralField& u, double p) {
  require(p >= 1.0, ErrorCode::InvalidArgument, "L^p norm needs p >= 1");
  if (std::isinf(p)) return sup_norm(u);
  const int band = u.band();
  const int n = u.n();
  int m = std::min(2 * n, 2 * next_pow2(2 * band + 2));
  if (band >= n / 2) m = 2 * n;
  m = std::max(m, 8);
  PhysicalField f = to_physical(u, m);
  double s = 0.0;
  for (double x : f.values) s += std::pow(std::abs(x), p);
  return std::pow(s / static_cast<double>(f.values.size()), 1.0 / p);
}

double besov_norm(const SpectralField& u, const BesovIndex& idx,
                  const DyadicPartition& part) {
  require(idx.p >= 1.0 && idx.q >= 1.0, ErrorCode::InvalidArgument,
          "Besov exponents p, q must lie in [1, inf]");
  double acc = 0.0;
  const int band = u.band();
  for (int j = -1; j <= part.j_max(); ++j) {
    const BandedField block = band_pass_banded(u, band, j, j, part);
    if (block.band < 0) continue;
    const double lp = std::isinf(idx.p) ? sup_norm(block.field, block.band)
                                        : lp_norm(block.field, idx.p);
    const double term = std::pow(2.0, j * idx.alpha) * lp;
    if (std::isinf(idx.q))
      acc = std::max(acc, term);
    else
      acc += std::pow(term, idx.q);
  }
  return std::isinf(idx.q) ? acc : std::pow(acc, 1.0 / idx.q);
}

EmbeddingReport besov_embedding_check(const SpectralField& u, double alpha,
                                      double p1, double p2,
                                      const DyadicPartition& part) {
  require(p1 <= p2, ErrorCode::InvalidArgument, "embedding needs p1 <= p2");
  EmbeddingReport r;
  r.source_norm = besov_norm(u, {alpha, p1, p1}, part);
  require(r.source_norm > 0.0, ErrorCode::InvalidArgument,
          "embedding ratio undefined for the zero field");
  const double inv1 = std::isinf(p1) ? 0.0 : 1.0 / p1;
  const double inv2 = std::isinf(p2) ? 0.0 : 1.0 / p2;
  r.target_norm = besov_norm(u, {alpha - 2.0 * (inv1 - inv2), p2, p2}, part);
  r.ratio = r.target_norm / r.source_norm;
  return r;
}

}  // namespace gpam
