#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhfc/ensemble.hpp"
#include "nhfc/spaces.hpp"

#include "oracles.hpp"

using namespace nhfc;

TEST_CASE("Sobolev norms of single basis functions") {
  const int M = 1024, N = 8;
  const ModelProblem p1 = ModelProblem::oh1d(1.0);
  for (double s : {-1.0, 0.0, 2.0})
    CHECK(sobolev_norm(sample_u(p1, M, EigenIndex::make1(0)), s, N) == doctest::Approx(1.0));

  const ModelProblem p2 = ModelProblem::oh1d(2.0);
  // closed form at this grid resolution: the quadrature of h^{2x} over the grid
  const GridFunction u3 = sample_u(p2, M, EigenIndex::make1(3));
  const double l2 = norm_l2(u3);
  CHECK(sobolev_norm(u3, 0.0, N) == doctest::Approx(l2).epsilon(1e-10));
  // the exact integral value int_0^1 2^{2x} dx = 3/(2 ln 2); grid quadrature
  // is within O(1/M)
  CHECK(std::abs(l2 - std::sqrt(3.0 / (2.0 * std::log(2.0)))) < 2e-3);
  const double w3 = angle_weight(p2, EigenIndex::make1(3));
  CHECK(sobolev_norm(u3, 1.0, N) == doctest::Approx(w3 * l2).epsilon(1e-10));
}

TEST_CASE("H^0 equals the quadrature L2 norm") {
  std::mt19937_64 rng(51);
  for (double h : {0.5, 1.0, 2.0}) {
    const ModelProblem p = ModelProblem::oh1d(h);
    for (int t = 0; t < 5; ++t) {
      const GridFunction f = random_band(p, 256, 16, rng);
      CHECK(std::abs(sobolev_norm(f, 0.0, 16) - norm_l2(f)) < 1e-10 * norm_l2(f));
    }
  }
}

TEST_CASE("norm-isometry ladder is exact") {
  std::mt19937_64 rng(53);
  const int M = 256, N = 16;
  for (double h : {0.5, 2.0}) {
    const ModelProblem p = ModelProblem::oh1d(h);
    SpectralCoeffs c = make_coeffs(p, N, Flavor::L);
    c.values = random_normal_vector(c.size(), rng);
    for (double s : {-2.0, -1.0, 1.0, 2.0}) {
      const SpectralCoeffs shifted = weight_scaled(c, -s);
      const double lhs = sobolev_norm_coeffs(shifted, 1.0 + s, M);
      const double rhs = sobolev_norm_coeffs(c, 1.0, M);
      CHECK(std::abs(lhs - rhs) < 1e-12 * rhs);
    }
  }
}

TEST_CASE("radicand is real and nonnegative") {
  std::mt19937_64 rng(59);
  const ModelProblem p = ModelProblem::oh1d(2.0);
  for (int t = 0; t < 20; ++t) {
    SpectralCoeffs c = make_coeffs(p, 12, Flavor::L);
    c.values = random_normal_vector(c.size(), rng);
    double im = 0.0;
    const double n = sobolev_norm_coeffs(weight_scaled(c, -1.3), 1.3, 128, &im);
    CHECK(n >= 0.0);
    CHECK(std::abs(im) < 1e-10 * std::max(1.0, n * n));
  }
}

TEST_CASE("Sobolev inner product") {
  std::mt19937_64 rng(61);
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 256, N = 12;
  const GridFunction f = random_band(p, M, N, rng);
  const GridFunction g = random_band(p, M, N, rng);
  // s = 0 coincides with the duality pairing
  const Complex i0 = sobolev_inner(f, g, 0.0, N);
  CHECK(std::abs(i0 - plancherel_pair(forward_l(f, N), forward_lstar(g, N))) <
        1e-12 * std::abs(i0));
  // f = g recovers the squared norm
  const Complex ii = sobolev_inner(f, f, 1.5, N);
  const double nn = sobolev_norm(f, 1.5, N);
  CHECK(std::abs(ii - Complex(nn * nn, 0)) < 1e-10 * nn * nn);
  // sesquilinear scaling
  GridFunction f2 = f;
  f2.values *= Complex(2.0, 0.0);
  CHECK(std::abs(sobolev_inner(f2, g, 0.5, N) - 2.0 * sobolev_inner(f, g, 0.5, N)) <
        1e-10 * std::abs(i0));
}

TEST_CASE("sequence norms with sup-norm weights") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  SpectralCoeffs c = make_coeffs(p, 4, Flavor::L);
  c.at(EigenIndex::make1(0)) = 1.0;
  CHECK(lp_norm(c, 1.0, Flavor::L) == doctest::Approx(2.0));
  CHECK(lp_norm(c, std::numeric_limits<double>::infinity(), Flavor::L) == doctest::Approx(1.0));
  CHECK(lp_norm(c, 2.0, Flavor::L) == doctest::Approx(1.0));

  const ModelProblem p1 = ModelProblem::oh1d(1.0);
  SpectralCoeffs c1 = make_coeffs(p1, 4, Flavor::L);
  c1.at(EigenIndex::make1(0)) = 1.0;
  for (double pe : {1.0, 1.5, 2.0, 3.0}) CHECK(lp_norm(c1, pe, Flavor::L) == doctest::Approx(1.0));
  CHECK_THROWS(lp_norm(c1, 0.5, Flavor::L));
}

TEST_CASE("l2 sequence norm equivalent to the Plancherel norm") {
  std::mt19937_64 rng(67);
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 256, N = 12;
  for (int t = 0; t < 10; ++t) {
    const GridFunction f = random_band(p, M, N, rng);
    const double seq = lp_norm(forward_l(f, N), 2.0, Flavor::L);
    const double pl = norm_l2(f);
    const double ratio = seq / pl;
    CHECK(ratio >= 0.5);  // Pi min(1, h_j)
    CHECK(ratio <= 2.0);  // Pi max(1, h_j)
  }
}

TEST_CASE("Hausdorff-Young at p = 1") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 1024, N = 8;
  const RatioReport r0 = hausdorff_young_check(sample_u(p, M, EigenIndex::make1(0)), 1.0, N);
  CHECK(r0.lhs == doctest::Approx(1.0));
  CHECK(std::abs(r0.rhs - 1.0 / std::log(2.0)) < 2e-3);  // int 2^x dx = 1/ln 2
  CHECK(r0.pass);

  std::mt19937_64 rng(71);
  for (double h : {0.5, 2.0}) {
    const ModelProblem ph = ModelProblem::oh1d(h);
    for (int t = 0; t < 20; ++t) {
      const RatioReport r = hausdorff_young_check(random_band(ph, 256, 12, rng), 1.0, 12);
      CHECK(r.pass);
      CHECK(r.ratio <= 1.0 + 1e-8);
    }
  }

  // p = 2 at h = 1 is Parseval
  const ModelProblem p1 = ModelProblem::oh1d(1.0);
  const RatioReport r2 = hausdorff_young_check(random_band(p1, 256, 12, rng), 2.0, 12);
  CHECK(std::abs(r2.ratio - 1.0) < 1e-10);
}

TEST_CASE("duality pairing inequality") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  SpectralCoeffs d0 = make_coeffs(p, 4, Flavor::L);
  d0.at(EigenIndex::make1(0)) = 1.0;
  const RatioReport re = duality_pair_check(d0, d0, 1.0);
  CHECK(re.lhs == doctest::Approx(1.0));
  CHECK(re.rhs == doctest::Approx(1.0));  // 2 * (1/2), equality case
  CHECK(re.pass);

  SpectralCoeffs z = make_coeffs(p, 4, Flavor::L);
  const RatioReport rz = duality_pair_check(d0, z, 1.5);
  CHECK(rz.lhs == doctest::Approx(0.0));
  CHECK(rz.pass);

  std::mt19937_64 rng(73);
  for (double pe : {1.0, 1.5, 2.0}) {
    for (int t = 0; t < 10; ++t) {
      SpectralCoeffs a = make_coeffs(p, 8, Flavor::L);
      SpectralCoeffs b = make_coeffs(p, 8, Flavor::L);
      a.values = random_normal_vector(a.size(), rng);
      b.values = random_normal_vector(b.size(), rng);
      CHECK(duality_pair_check(a, b, pe).pass);
    }
  }
}

TEST_CASE("embedding diagnostic") {
  const ModelProblem p1 = ModelProblem::oh1d(1.0);
  CHECK(embedding_ratio(sample_u(p1, 256, EigenIndex::make1(0)), 1.0, 8) == doctest::Approx(1.0));

  // smooth decaying profile: ratio stable under window doubling
  auto make_f = [&](int N, int M) {
    SpectralCoeffs c = make_coeffs(p1, N, Flavor::L);
    for (long w = 0; w < c.size(); ++w)
      c.values(w) = std::pow(angle_weight(p1, box_index(w, N, 1)), -2.0);
    return inverse_l(c, M);
  };
  const double r32 = embedding_ratio(make_f(32, 256), 1.0, 32);
  const double r64 = embedding_ratio(make_f(64, 256), 1.0, 64);
  CHECK(std::abs(r64 - r32) < 0.1 * r32);

  GridFunction f2 = make_f(32, 256);
  f2.values *= 2.0;
  CHECK(embedding_ratio(f2, 1.0, 32) == doctest::Approx(r32));
}
