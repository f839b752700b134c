#include <doctest.h>

#include <cmath>

#include "gpam/noise.hpp"
#include "oracles.hpp"

using namespace gpam;

TEST_CASE("white noise samples") {
  const Grid g(64);
  const WhiteNoiseSample a = sample_white_noise(g, 7, 0);
  CHECK(a.band == 31);
  CHECK(a.field.is_zero_mean(0.0));
  CHECK(a.field.hermitian_defect() == 0.0);
  CHECK(a.field.coeff(-32, 5) == cplx{0.0, 0.0});

  const WhiteNoiseSample b = sample_white_noise(g, 7, 0);
  CHECK(a.field == b.field);
  CHECK_FALSE(a.field == sample_white_noise(g, 7, 1).field);
  CHECK_FALSE(a.field == sample_white_noise(g, 8, 0).field);

  // E|û(k)|² = 1 and E û(k)² = 0 for k ≠ 0.
  double m2 = 0.0;
  cplx sq{0.0, 0.0};
  int count = 0;
  for (int k1 = -31; k1 <= 31; ++k1)
    for (int k2 = -31; k2 <= 31; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const cplx c = a.field.coeff(k1, k2);
      m2 += std::norm(c);
      if (k1 > 0 || (k1 == 0 && k2 > 0)) sq += c * c;
      ++count;
    }
  CHECK(m2 / count == doctest::Approx(1.0).epsilon(0.12));
  CHECK(std::abs(sq) / (count / 2) < 0.15);
}

TEST_CASE("band-limited noise keeps its band") {
  const Grid g(64);
  const WhiteNoiseSample a = sample_white_noise(g, 1, 2, 8);
  CHECK(a.field.band() == 8);
  // The same mode draws the same value whatever the band.
  const WhiteNoiseSample full = sample_white_noise(g, 1, 2);
  CHECK(a.field.coeff(3, -5) == full.field.coeff(3, -5));
}

TEST_CASE("mollifiers") {
  CHECK(Mollifier::parse("sharp").kind() == MollifierKind::Sharp);
  CHECK(Mollifier::parse("gaussian")(0.0) == 1.0);
  CHECK(Mollifier::parse("fejer")(0.25) == doctest::Approx(0.75));
  CHECK(Mollifier::parse("sharp")(1.0) == 1.0);
  CHECK(Mollifier::parse("sharp")(1.0001) == 0.0);
  CHECK(std::isinf(Mollifier::parse("gaussian").support_radius()));
  CHECK_THROWS_AS(Mollifier::parse("box"), Error);

  const Grid g(32);
  const WhiteNoiseSample xi = sample_white_noise(g, 3, 0);
  const SpectralField m = mollify(xi, Mollifier(MollifierKind::Sharp), 0.25);
  CHECK(m.coeff(4, 0) == xi.field.coeff(4, 0));
  CHECK(m.coeff(3, 3) == cplx{0.0, 0.0});
  const SpectralField gm = mollify(xi, Mollifier(MollifierKind::Gaussian), 0.1);
  CHECK(std::abs(gm.coeff(2, 1) - std::exp(-0.05) * xi.field.coeff(2, 1)) < 1e-15);
}

TEST_CASE("renormalization constants by lattice enumeration") {
  const Mollifier sharp(MollifierKind::Sharp);
  // |k| ≤ 2: four modes at 1, four at 1/2, four at 1/4.
  CHECK(renorm_constant(sharp, 0.5, 2).value == 7.0);
  CHECK(renorm_constant(sharp, 0.5, 50).value == 7.0);
  CHECK_THROWS_AS(renorm_constant(sharp, 0.1, 5), Error);

  const Mollifier gauss(MollifierKind::Gaussian);
  for (double eps : {0.5, 0.2, 0.05}) {
    const int cut = static_cast<int>(8.0 / eps);
    const LatticeSum c = renorm_constant(gauss, eps, cut);
    const double want = oracle::lattice_sum(
        [](double r) { return std::exp(-2.0 * r * r); }, eps, cut);
    CHECK(c.value == doctest::Approx(want).epsilon(1e-12));
    CHECK(c.tail_bound >= 0.0);
    CHECK(c.tail_bound < 1e-12);
    const LatticeSum b = mixed_constant(gauss, eps, cut);
    CHECK(b.value == doctest::Approx(oracle::lattice_sum(
                                         [](double r) { return std::exp(-r * r); },
                                         eps, cut))
                         .epsilon(1e-12));
    CHECK(b.value > c.value);
  }
  // ψ² = ψ for the sharp cut-off.
  CHECK(mixed_constant(sharp, 0.1, 20).value == renorm_constant(sharp, 0.1, 20).value);
  const Mollifier fejer(MollifierKind::Fejer);
  CHECK(mixed_constant(fejer, 0.2, 10, true).value ==
        doctest::Approx(mixed_constant(fejer, 0.2, 10).value));
}

TEST_CASE("constants grow like 2π log(1/ε)") {
  const Mollifier sharp(MollifierKind::Sharp);
  const double a = renorm_constant(sharp, std::ldexp(1.0, -6), 64).value;
  const double b = renorm_constant(sharp, std::ldexp(1.0, -7), 128).value;
  CHECK((b - a) / std::log(2.0) == doctest::Approx(2.0 * M_PI).epsilon(0.05));
}

TEST_CASE("carried constants sum over the sample's modes") {
  const Mollifier gauss(MollifierKind::Gaussian);
  const double c = carried_renorm_constant(gauss, 0.1, 7);
  CHECK(c == doctest::Approx(oracle::lattice_sum(
                                 [](double r) { return std::exp(-2.0 * r * r); },
                                 0.1, 7))
                 .epsilon(1e-13));
}

TEST_CASE("sharp truncation of a sample") {
  const Grid g(64);
  const WhiteNoiseSample xi = sample_white_noise(g, 9, 0, 16);
  const TruncatedNoise t = truncate_noise(xi, 2, 2.0);  // radius 8
  CHECK(t.radius == 8.0);
  double want = 0.0;
  for (int k1 = -16; k1 <= 16; ++k1)
    for (int k2 = -16; k2 <= 16; ++k2) {
      const int r2 = k1 * k1 + k2 * k2;
      if (r2 == 0) continue;
      if (r2 <= 64) {
        want += 1.0 / r2;
        CHECK(t.field.coeff(k1, k2) == xi.field.coeff(k1, k2));
      } else {
        CHECK(t.field.coeff(k1, k2) == cplx{0.0, 0.0});
      }
    }
  CHECK(t.c_n == doctest::Approx(want).epsilon(1e-14));

  const TruncatedNoise all = truncate_noise(xi, 4, 16.0);  // radius 256
  CHECK(all.field == xi.field);
}
