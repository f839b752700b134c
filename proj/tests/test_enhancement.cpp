#include <doctest.h>

#include "gpam/enhancement.hpp"
#include "gpam/paraproduct.hpp"
#include "gpam/torus.hpp"
#include "oracles.hpp"

using namespace gpam;

namespace {

double pair_diff(const EnhancedPair& a, const EnhancedPair& b) {
  return std::max(max_coeff_diff(a.first, b.first),
                  max_coeff_diff(a.second, b.second));
}

}  // namespace

TEST_CASE("lift of a single mode") {
  const Grid g(64);
  const DyadicPartition part(g);
  SpectralField theta(g);
  theta.set_real_mode(3, 1, {0.5, -0.25});
  const EnhancedPair e = enhance(theta, 0.0, part);
  // θ∘Kθ for one ± pair is the full product θ·Kθ.
  const SpectralField full = oracle::direct_product(theta, inverse_laplacian(theta));
  CHECK(max_coeff_diff(e.second, full) < 1e-15);
  CHECK(e.second.mean().real() == doctest::Approx(2.0 * 0.3125 / 10.0));
}

TEST_CASE("lift preconditions") {
  const Grid g(64);
  const DyadicPartition part(g);
  SpectralField wide(g);
  wide.set_real_mode(17, 0, {1.0, 0.0});
  CHECK_THROWS_AS(enhance(wide, 0.0, part), Error);
  CHECK_THROWS_AS(enhance(SpectralField::constant(g, 1.0), 0.0, part), Error);
  const SpectralField theta = oracle::random_field(g, 16, 3);
  CHECK_THROWS_AS(enhance(theta, 0.0, DyadicPartition(Grid(32))), Error);
}

TEST_CASE("renormalization shift is exact") {
  const Grid g(128);
  const DyadicPartition part(g);
  const SpectralField theta = oracle::random_field(g, 32, 5);
  for (double a : {0.0, 1.0, -2.5, 7.25}) {
    const EnhancedPair lhs = enhance(theta, 3.0 + a, part);
    const EnhancedPair rhs = enhance(theta, 3.0, part).shifted(a);
    CHECK(lhs.first == rhs.first);
    CHECK(lhs.second == rhs.second);
  }
}

TEST_CASE("translation group law") {
  const Grid g(128);
  const DyadicPartition part(g);
  const EnhancedPair xi = enhance(oracle::random_field(g, 32, 1), 1.5, part);
  const SpectralField h = oracle::random_field(g, 20, 2, 0.3);
  const SpectralField h2 = oracle::random_field(g, 32, 3, 0.7);

  CHECK(pair_diff(translate(translate(xi, h2, part), h, part),
                  translate(xi, h + h2, part)) < 1e-10);
  CHECK(pair_diff(translate(translate(xi, h, part), -h, part), xi) < 1e-10);
  CHECK(pair_diff(translate(xi, SpectralField(g), part), xi) == 0.0);

  const SpectralField theta = oracle::random_field(g, 24, 4);
  CHECK(pair_diff(translate(enhance(theta, 0.5, part), h, part),
                  enhance(theta + h, 0.5, part)) < 1e-10);
}

TEST_CASE("oscillatory fields") {
  const Grid g(128);
  const SpectralField x = oscillatory(3, 4.0, g);
  // 2·2^4 cos(8(x1 + x2))
  CHECK(oracle::evaluate(x, 0.0, 0.0) == doctest::Approx(32.0));
  CHECK(oracle::evaluate(x, 0.1, 0.2) == doctest::Approx(32.0 * std::cos(2.4)));
  CHECK(oscillatory(3, 0.0, g).coeff_max() == 0.0);
  CHECK_THROWS_AS(oscillatory(3, -1.0, g), Error);
  CHECK_THROWS_AS(oscillatory(5, 1.0, g), Error);
}

TEST_CASE("hα distance") {
  const Grid g(64);
  const DyadicPartition part(g);
  const EnhancedPair a = enhance(oracle::random_field(g, 16, 8), 0.0, part);
  CHECK(h_alpha_dist(a, a, 0.75, part) == 0.0);
  const EnhancedPair b = a.shifted(2.0);
  // Only the mean moves: block −1 at weight 2^{−(2α−2)}.
  CHECK(h_alpha_dist(a, b, 0.75, part) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(h_alpha_in_standing_range(0.75));
  CHECK_FALSE(h_alpha_in_standing_range(0.5));
}

TEST_CASE("zero translation field") {
  const Grid g(512);
  const DyadicPartition part(g);
  const WhiteNoiseSample xi = sample_white_noise(g, 4, 0, lift_band(g));
  for (int n : {3, 4, 5}) {
    const ZeroTranslation z = zero_translation_field(xi, n, 1.0, part);
    CHECK(z.nu >= 1.0);
    CHECK(z.annihilation_residual <= 1e-12);
    const TruncatedNoise tr = truncate_noise(xi, n, z.nu);
    CHECK(tr.c_n == z.c_n);
    // First component of the translate is X^{n, c_n − a} + (ξ − ξ^n).
    const SpectralField want = oscillatory(n, z.c_n - 1.0, g) + (xi.field - tr.field);
    CHECK(max_coeff_diff(xi.field + z.h, want) < 1e-14);
  }
}
