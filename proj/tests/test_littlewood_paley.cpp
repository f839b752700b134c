#include <doctest.h>

#include <cmath>

#include "gpam/littlewood_paley.hpp"
#include "gpam/torus.hpp"
#include "oracles.hpp"

using namespace gpam;

TEST_CASE("smooth transition") {
  CHECK(smooth_transition(0.5) == 1.0);
  CHECK(smooth_transition(1.0) == 1.0);
  CHECK(smooth_transition(2.0) == 0.0);
  CHECK(smooth_transition(3.0) == 0.0);
  CHECK(smooth_transition(1.5) == doctest::Approx(0.5));
  for (double r = 1.0; r < 2.0; r += 0.01)
    CHECK(smooth_transition(r + 0.01) <= smooth_transition(r));
}

TEST_CASE("partition of unity and supports") {
  for (int n : {16, 64, 256}) {
    const DyadicPartition part{Grid(n)};
    CHECK(part.j_max() == static_cast<int>(std::log2(n)) - 1);
    CHECK(part.unity_defect() <= 1e-12);
    CHECK(part.supports_disjoint());
    CHECK(part.max_overlap() <= 2);
    const SupportRadii& r = part.radii();
    CHECK(r.chi_outer <= 8.0 / 3.0 + 1e-3);
    CHECK(r.rho_inner >= 4.0 / 3.0 - 1e-3);
    CHECK(r.rho_outer <= 16.0 / 3.0 + 1e-3);
  }
  const DyadicPartition part{Grid(64)};
  CHECK(part.chi(0.0) == 1.0);
  CHECK(part.chi(3.0) == 0.0);
  CHECK(part.rho(1.0) == 0.0);
  CHECK(part.rho(8.0 / 3.0) == doctest::Approx(1.0));
  CHECK(part.rho(2.0) == doctest::Approx(0.5));
  for (double r = 0.0; r < 40.0; r += 0.37) {
    double s = 0.0;
    for (int j = -1; j <= part.j_max(); ++j) s += part.weight(j, r);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("blocks reconstruct the field") {
  const Grid g(128);
  const DyadicPartition part(g);
  SpectralField u = oracle::random_field(g, 63, 9);
  u.add_constant(0.7);
  SpectralField sum(g);
  for (int j = -1; j <= part.j_max(); ++j) sum += lp_block(u, j, part);
  CHECK(max_coeff_diff(sum, u) <= 1e-11 * u.coeff_max());
  CHECK_THROWS_AS(lp_block(u, part.j_max() + 1, part), Error);
  CHECK_THROWS_AS(lp_block(u, -2, part), Error);
}

TEST_CASE("block supports are annuli") {
  const Grid g(64);
  const DyadicPartition part(g);
  const SpectralField u = oracle::random_field(g, 31, 4);
  for (int j = 0; j <= part.j_max(); ++j) {
    const SpectralField b = lp_block(u, j, part);
    for (int k1 = -31; k1 <= 31; ++k1)
      for (int k2 = -31; k2 <= 31; ++k2) {
        if (b.coeff(k1, k2) == cplx{0.0, 0.0}) continue;
        const double r = std::hypot(k1, k2);
        CHECK(r > std::ldexp(4.0 / 3.0, j) - 1e-9);
        CHECK(r < std::ldexp(16.0 / 3.0, j) + 1e-9);
      }
  }
}

TEST_CASE("Lp norms use the normalized measure") {
  const Grid g(32);
  CHECK(lp_norm(SpectralField::constant(g, 1.0), 1.0) == doctest::Approx(1.0));
  CHECK(lp_norm(SpectralField::constant(g, -2.0), kInf) == doctest::Approx(2.0));
  SpectralField c(g);
  c.set_real_mode(3, 0, {1.0, 0.0});  // 2cos(3x1)
  CHECK(lp_norm(c, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(lp_norm(c, kInf) == doctest::Approx(2.0).epsilon(1e-12));
  // Grid sampling of |·| is exact for positive trigonometric polynomials.
  SpectralField pos = c;
  pos.add_constant(3.0);
  CHECK(lp_norm(pos, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(lp_norm(c, 1.0) <= lp_norm(c, 2.0));
  const SpectralField u = oracle::random_field(g, 7, 12);
  CHECK(lp_norm(u, 2.0) == doctest::Approx(u.coeff_l2()).epsilon(1e-12));
}

TEST_CASE("Parseval bounds the B^0_{2,2} norm two-sided") {
  const Grid g(128);
  const DyadicPartition part(g);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const SpectralField u = oracle::random_field(g, 40, 50 + s);
    const double b = sobolev_norm(u, 0.0, part);
    const double l2 = u.coeff_l2();
    CHECK(b <= l2 * (1.0 + 1e-12));
    CHECK(b >= l2 / std::sqrt(2.0) * (1.0 - 1e-12));
  }
}

TEST_CASE("Besov norms of a single mode") {
  const Grid g(256);
  const DyadicPartition part(g);
  SpectralField e(g);
  e.set_real_mode(24, 0, {0.5, 0.0});  // cos(24 x1)
  for (double alpha : {-1.0, 0.5}) {
    double want = 0.0;
    for (int j = -1; j <= part.j_max(); ++j)
      want = std::max(want, std::pow(2.0, j * alpha) *
                                part.weight(j, 24.0));
    CHECK(holder_norm(e, alpha, part) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("embedding ratio stays bounded") {
  const Grid g(64);
  const DyadicPartition part(g);
  const SpectralField u = oracle::random_field(g, 20, 77);
  const EmbeddingReport r = besov_embedding_check(u, 0.5, 2.0, kInf, part);
  CHECK(r.source_norm > 0.0);
  CHECK(r.ratio == doctest::Approx(r.target_norm / r.source_norm));
  CHECK(r.ratio < 10.0);
  CHECK_THROWS_AS(besov_embedding_check(SpectralField(g), 0.5, 2.0, kInf, part), Error);
}

TEST_CASE("partition hash is stable") {
  CHECK(DyadicPartition(Grid(64)).hash() == DyadicPartition(Grid(64)).hash());
  CHECK(DyadicPartition(Grid(64)).hash() != DyadicPartition(Grid(128)).hash());
}
