#include "gpam/paraproduct.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <numbers>
#include <string>

#include "gpam/noise.hpp"
#include "gpam/torus.hpp"

namespace gpam {
namespace {

// Block j of a field with the given band can only be nonzero when the band
// reaches the recorded inner radius of the block.
bool block_reachable(int j, int band, const DyadicPartition& part) {
  if (j < -1 || j > part.j_max()) return false;
  if (j == -1) return true;
  return std::ldexp(part.radii().rho_inner, j) < std::numbers::sqrt2 * band;
}

}  // namespace

SpectralField para_lt(const SpectralField& f, const SpectralField& g,
                      const DyadicPartition& part) {
  require_same_grid(f.grid(), g.grid());
  require_same_grid(f.grid(), part.grid());
  const int bf = f.band(), bg = g.band();
  ProductAccumulator acc(f.grid(), bf + bg);
  const int m = acc.padded_size();
  PhysicalField low{m, RealBuffer(static_cast<std::size_t>(m) * m, 0.0)};
  bool low_nonzero = false;
  for (int j = 1; j <= part.j_max(); ++j) {
    // low = S_{j−1} f = Σ_{i ≤ j−2} Δ_i f.
    if (block_reachable(j - 2, bf, part)) {
      const BandedField add = band_pass_banded(f, bf, j - 2, j - 2, part);
      if (add.band >= 0) {
        PhysicalField p = to_physical(add.field, m, add.band);
        for (std::size_t i = 0; i < p.values.size(); ++i)
          low.values[i] += p.values[i];
        low_nonzero = true;
      }
    }
    if (!low_nonzero || !block_reachable(j, bg, part)) continue;
    const BandedField gj = band_pass_banded(g, bg, j, j, part);
    if (gj.band < 0) continue;
    acc.add(low, to_physical(gj.field, m, gj.band));
  }
  return acc.finish();
}

SpectralField para_gt(const SpectralField& f, const SpectralField& g,
                      const DyadicPartition& part) {
  return para_lt(g, f, part);
}

SpectralField resonant(const SpectralField& f, const SpectralField& g,
                       const DyadicPartition& part) {
  require_same_grid(f.grid(), g.grid());
  require_same_grid(f.grid(), part.grid());
  const int bf = f.band(), bg = g.band();
  // Block pairs are grouped by the padded grid their band needs, so low
  // blocks are multiplied on small grids.
  std::map<int, ProductAccumulator> accs;
  for (int j = -1; j <= part.j_max(); ++j) {
    if (!block_reachable(j, bg, part)) continue;
    if (!block_reachable(j - 1, bf, part) && !block_reachable(j, bf, part) &&
        !block_reachable(j + 1, bf, part))
      continue;
    const BandedField gj = band_pass_banded(g, bg, j, j, part);
    if (gj.band < 0) continue;
    // (Δ_{j−1} + Δ_j + Δ_{j+1}) f in one multiplier pass.
    const BandedField fj = band_pass_banded(f, bf, j - 1, j + 1, part);
    if (fj.band < 0) continue;
    const int band_sum = fj.band + gj.band;
    const int m = ProductAccumulator::size_for(f.grid(), band_sum);
    auto it = accs.find(m);
    if (it == accs.end())
      it = accs.emplace(m, ProductAccumulator(f.grid(), band_sum)).first;
    else
      it->second.widen(band_sum);
    it->second.add(fj.field, fj.band, gj.field, gj.band);
  }
  SpectralField out(f.grid());
  for (const auto& [m, acc] : accs) out += acc.finish();
  return out;
}

BonyKind parse_bony_kind(std::string_view name) {
  if (name == "para_bounded") return BonyKind::ParaBounded;
  if (name == "para_negative") return BonyKind::ParaNegative;
  if (name == "resonant_positive") return BonyKind::ResonantPositive;
  fail(ErrorCode::InvalidArgument,
       "unknown Bony estimate '" + std::string(name) + "'");
}

BonyReport bony_estimate_check(BonyKind kind, const BonyEnsemble& ens) {
  require(ens.count > 0, ErrorCode::InvalidArgument, "empty ensemble");
  if (kind == BonyKind::ParaNegative)
    require(ens.beta < 0.0, ErrorCode::InvalidArgument,
            "the f≻g estimate needs beta < 0");
  if (kind == BonyKind::ResonantPositive)
    require(ens.alpha + ens.beta > 0.0, ErrorCode::InvalidArgument,
            "the resonant estimate needs alpha + beta > 0");
  const Grid grid(ens.n);
  const DyadicPartition part(grid);
  const int band = grid.n() / 4 - 1;
  BonyReport rep;
  double total = 0.0;
  for (int s = 0; s < ens.count; ++s) {
    // Coefficient decay |k|^{−(r+1)} puts a white-noise-like field in C^r.
    SpectralField f = sample_band_limited(grid, band, ens.alpha + 1.0,
                                          ens.seed, 2 * std::uint64_t(s));
    SpectralField g = sample_band_limited(grid, band, ens.beta + 1.0,
                                          ens.seed, 2 * std::uint64_t(s) + 1);
    double lhs = 0.0, rhs = 0.0;
    switch (kind) {
      case BonyKind::ParaBounded:
        lhs = holder_norm(para_lt(f, g, part), ens.beta, part);
        rhs = sup_norm(f) * holder_norm(g, ens.beta, part);
        break;
      case BonyKind::ParaNegative:
        lhs = holder_norm(para_gt(f, g, part), ens.alpha + ens.beta, part);
        rhs = holder_norm(f, ens.alpha, part) * holder_norm(g, ens.beta, part);
        break;
      case BonyKind::ResonantPositive:
        lhs = holder_norm(resonant(f, g, part), ens.alpha + ens.beta, part);
        rhs = holder_norm(f, ens.alpha, part) * holder_norm(g, ens.beta, part);
        break;
    }
    const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    total += ratio;
    ++rep.samples;
  }
  rep.mean_ratio = total / rep.samples;
  return rep;
}

}  // namespace gpam
