#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhfc/ensemble.hpp"
#include "nhfc/transform.hpp"

#include "oracles.hpp"

using namespace nhfc;

TEST_CASE("forward transform picks out basis coefficients") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 128, N = 8;
  const SpectralCoeffs c = forward_l(sample_u(p, M, EigenIndex::make1(3)), N);
  for (long w = 0; w < c.size(); ++w) {
    const double expect = box_index(w, N, 1).k[0] == 3 ? 1.0 : 0.0;
    CHECK(std::abs(c.values(w) - expect) < 1e-12);
  }

  const ModelProblem p1 = ModelProblem::oh1d(1.0);
  const SpectralCoeffs c1 = forward_l(
      sample(p1, M, [](const std::array<double, 3>&) { return Complex(1, 0); }), 4);
  CHECK(std::abs(c1.at(EigenIndex::make1(0)) - 1.0) < 1e-14);
  CHECK(c1.values.cwiseAbs().sum() - std::abs(c1.at(EigenIndex::make1(0))) < 1e-13);
}

TEST_CASE("weighted cosine sample against a quadrature oracle") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 256, N = 4;
  const GridFunction f = sample(p, M, [](const std::array<double, 3>& x) {
    return std::pow(2.0, x[0]) * std::cos(2 * kPi * x[0]);
  });
  const SpectralCoeffs c = forward_l(f, N);
  CHECK(std::abs(c.at(EigenIndex::make1(1)) - 0.5) < 1e-12);
  CHECK(std::abs(c.at(EigenIndex::make1(-1)) - 0.5) < 1e-12);
  CHECK(std::abs(c.at(EigenIndex::make1(0))) < 1e-12);

  for (int k : {-1, 0, 1, 2}) {
    const Complex oracle = oracles::simpson(
        [&](double x) {
          return std::pow(2.0, x) * std::cos(2 * kPi * x) *
                 std::conj(eval_v(p, EigenIndex::make1(k), {x, 0, 0}));
        },
        0.0, 1.0, 100000);
    CHECK(std::abs(c.at(EigenIndex::make1(k)) - oracle) < 1e-10);
  }
}

TEST_CASE("round trips on the band") {
  std::mt19937_64 rng(11);
  for (double h : {0.5, 1.0, 2.0}) {
    const ModelProblem p = ModelProblem::oh1d(h);
    const int M = 256, N = 16;
    SpectralCoeffs c = make_coeffs(p, N, Flavor::L);
    c.values = random_normal_vector(c.size(), rng);
    const SpectralCoeffs c2 = forward_l(inverse_l(c, M), N);
    CHECK((c2.values - c.values).cwiseAbs().maxCoeff() < 1e-12);

    const GridFunction f = random_band(p, M, N, rng);
    const GridFunction f2 = inverse_l(forward_l(f, N), M);
    CHECK((f2.values - f.values).cwiseAbs().maxCoeff() < 1e-12 * f.values.cwiseAbs().maxCoeff());

    SpectralCoeffs cs = make_coeffs(p, N, Flavor::Lstar);
    cs.values = random_normal_vector(cs.size(), rng);
    const SpectralCoeffs cs2 = forward_lstar(inverse_lstar(cs, M), N);
    CHECK((cs2.values - cs.values).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("single basis function expansion") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  SpectralCoeffs c = make_coeffs(p, 4, Flavor::L);
  c.at(EigenIndex::make1(0)) = 1.0;
  const GridFunction f = inverse_l(c, 64);
  for (long g = 0; g < f.size(); ++g)
    CHECK(std::abs(f.values(g) - std::pow(2.0, grid_point(g, 64, 1)[0])) < 1e-13);
}

TEST_CASE("inverse transform against direct summation") {
  const ModelProblem p = ModelProblem::oh1d(1.0);
  const int M = 128, N = 16;
  SpectralCoeffs c = make_coeffs(p, N, Flavor::L);
  for (long w = 0; w < c.size(); ++w)
    c.values(w) = std::pow(angle_weight(p, box_index(w, N, 1)), -2.0);
  const GridFunction f = inverse_l(c, M);
  for (long g = 0; g < f.size(); g += 17) {
    Complex s = 0.0;
    for (long w = 0; w < c.size(); ++w)
      s += c.values(w) * eval_u(p, box_index(w, N, 1), grid_point(g, M, 1));
    CHECK(std::abs(f.values(g) - s) < 1e-12);
  }
}

TEST_CASE("conjugate-flavor transform") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 512, N = 8;
  const SpectralCoeffs c = forward_lstar(sample_v(p, M, EigenIndex::make1(2)), N);
  for (long w = 0; w < c.size(); ++w) {
    const double expect = box_index(w, N, 1).k[0] == 2 ? 1.0 : 0.0;
    CHECK(std::abs(c.values(w) - expect) < 1e-12);
  }

  // self-adjoint case: both flavors coincide
  std::mt19937_64 rng(5);
  const ModelProblem p1 = ModelProblem::oh1d(1.0);
  const GridFunction f = random_band(p1, M, N, rng);
  CHECK((forward_lstar(f, N).values - forward_l(f, N).values).cwiseAbs().maxCoeff() < 1e-12);

  // closed form at xi = 0 for the weighted integral of u_0; the grid mean of
  // the non-periodic integrand h^{2x} carries a trapezoid endpoint error of
  // (h^2 - 1) / (2 M) = 3/1024 relative to the true integral
  const SpectralCoeffs cs = forward_lstar(sample_u(p, M, EigenIndex::make1(0)), N);
  const double endpoint = (p.h[0] * p.h[0] - 1.0) / (2.0 * M);
  CHECK(std::abs(cs.at(EigenIndex::make1(0)) - 3.0 / (2.0 * std::log(2.0))) < 1.5 * endpoint);
  const Complex oracle = oracles::simpson(
      [&](double x) {
        return std::pow(2.0, x) * std::conj(eval_u(p, EigenIndex::make1(0), {x, 0, 0}));
      },
      0.0, 1.0, 100000);
  CHECK(std::abs(cs.at(EigenIndex::make1(0)) - oracle) < 1.5 * endpoint);
}

TEST_CASE("duality pairing of coefficient tables") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 1024, N = 8;
  const GridFunction u0 = sample_u(p, M, EigenIndex::make1(0));
  const Complex pp = plancherel_pair(forward_l(u0, N), forward_lstar(u0, N));
  // reference: quadrature of |u_0|^2 = h^{2x} at this resolution
  CHECK(std::abs(pp - inner_l2(u0, u0)) < 1e-12);
  CHECK(std::abs(pp - 3.0 / (2.0 * std::log(2.0))) < 2e-3);

  const GridFunction u1 = sample_u(p, M, EigenIndex::make1(1));
  const GridFunction u2 = sample_u(p, M, EigenIndex::make1(2));
  const Complex cross = plancherel_pair(forward_l(u1, N), forward_lstar(u2, N));
  CHECK(std::abs(cross - inner_l2(u1, u2)) < 1e-12);

  std::mt19937_64 rng(3);
  const ModelProblem p1 = ModelProblem::oh1d(1.0);
  const GridFunction f = random_band(p1, 256, N, rng);
  const SpectralCoeffs c = forward_l(f, N);
  CHECK(std::abs(plancherel_pair(c, forward_lstar(f, N)) - Complex(c.values.squaredNorm(), 0)) <
        1e-10 * c.values.squaredNorm());
}

TEST_CASE("basis-system norm bounds on random ensembles") {
  std::mt19937_64 rng(17);
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 256, N = 16;
  for (int t = 0; t < 20; ++t) {
    const GridFunction f = random_band(p, M, N, rng);
    const double ratio = forward_l(f, N).values.squaredNorm() / (norm_l2(f) * norm_l2(f));
    CHECK(ratio >= 0.25);
    CHECK(ratio <= 4.0);
  }
}

TEST_CASE("decay transfer through the round trip") {
  std::mt19937_64 rng(23);
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 256, N = 16;
  for (double r : {2.0, 4.0}) {
    SpectralCoeffs c = make_coeffs(p, N, Flavor::L);
    for (long w = 0; w < c.size(); ++w)
      c.values(w) = std::pow(angle_weight(p, box_index(w, N, 1)), -r);
    const SpectralCoeffs c2 = forward_l(inverse_l(c, M), N);
    for (long w = 0; w < c.size(); ++w)
      CHECK(std::abs(c2.values(w) - c.values(w)) < 1e-12);
  }
}

TEST_CASE("boundary-compatibility tag") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  CHECK(bc_compatible(sample_u(p, 128, EigenIndex::make1(2))));
  // a plain (untwisted) exponential violates the h-boundary condition
  const GridFunction g = sample(p, 128, [](const std::array<double, 3>& x) {
    return std::exp(Complex(0, 2 * kPi * x[0])) + 1.0;
  });
  CHECK(!bc_compatible(g));
}
