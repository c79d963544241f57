#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhfc/convolution.hpp"
#include "nhfc/ensemble.hpp"

#include "oracles.hpp"

using namespace nhfc;

namespace {
double sup_diff(const GridFunction& a, const GridFunction& b) {
  return (a.values - b.values).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("spectral convolution on basis functions") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 128, N = 8;
  const GridFunction u1 = sample_u(p, M, EigenIndex::make1(1));
  const GridFunction u2 = sample_u(p, M, EigenIndex::make1(2));
  CHECK(sup_diff(conv_spectral(u1, u1, N), u1) < 1e-12);
  CHECK(conv_spectral(u1, u2, N).values.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coefficient homomorphism") {
  std::mt19937_64 rng(31);
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 256, N = 16;
  const GridFunction f = random_band(p, M, N, rng);
  const GridFunction g = random_band(p, M, N, rng);
  const SpectralCoeffs cf = forward_l(f, N);
  const SpectralCoeffs cg = forward_l(g, N);
  const SpectralCoeffs ch = forward_l(conv_spectral(f, g, N), N);
  const double scale = cf.values.cwiseAbs().maxCoeff() * cg.values.cwiseAbs().maxCoeff();
  CHECK((ch.values - cf.values.cwiseProduct(cg.values)).cwiseAbs().maxCoeff() < 1e-12 * scale);
}

TEST_CASE("commutativity and associativity") {
  std::mt19937_64 rng(37);
  const ModelProblem p = ModelProblem::oh1d(0.5);
  const int M = 256, N = 12;
  const GridFunction f = random_band(p, M, N, rng);
  const GridFunction g = random_band(p, M, N, rng);
  const GridFunction k = random_band(p, M, N, rng);
  CHECK(sup_diff(conv_spectral(f, g, N), conv_spectral(g, f, N)) < 1e-10);
  CHECK(sup_diff(conv_spectral(conv_spectral(f, g, N), k, N),
                 conv_spectral(f, conv_spectral(g, k, N), N)) < 1e-10);
}

TEST_CASE("integral path equals the spectral path") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 1024, N = 8;
  const GridFunction u0 = sample_u(p, M, EigenIndex::make1(0));
  const GridFunction u1 = sample_u(p, M, EigenIndex::make1(1));
  CHECK(sup_diff(conv_integral_oh1(u0, u0), conv_spectral(u0, u0, N)) < 1e-8);
  CHECK(sup_diff(conv_integral_oh1(u1, u1), u1) < 1e-8);

  std::mt19937_64 rng(41);
  const GridFunction f = random_band(p, M, N, rng);
  const GridFunction g = random_band(p, M, N, rng);
  CHECK(sup_diff(conv_integral_oh1(f, g), conv_spectral(f, g, N)) < 1e-8);
}

TEST_CASE("periodic case reduces to cyclic convolution") {
  const ModelProblem p = ModelProblem::oh1d(1.0);
  const int M = 256, N = 8;
  const GridFunction e1 =
      sample(p, M, [](const std::array<double, 3>& x) { return std::exp(2.0 * kPi * kI * x[0]); });
  CHECK(sup_diff(conv_integral_oh1(e1, e1), conv_spectral(e1, e1, N)) < 1e-10);

  // independent oracle at one point: cyclic convolution of e^{2 pi i x} with
  // itself is x-translation-covariant, (e1 * e1)(x) = e^{2 pi i x} * const
  const GridFunction c = conv_spectral(e1, e1, N);
  for (long g = 0; g < c.size(); g += 31) {
    const double x = grid_point(g, M, 1)[0];
    CHECK(std::abs(c.values(g) - std::exp(2.0 * kPi * kI * x) * c.values(0)) < 1e-12);
  }
}

TEST_CASE("integral formula against raw Simpson quadrature") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 512;
  const double h = 2.0;
  const auto fb = [&](double x) { return eval_u(p, EigenIndex::make1(1), {x, 0, 0}); };
  const auto gb = [&](double x) {
    return eval_u(p, EigenIndex::make1(0), {x, 0, 0}) -
           2.0 * eval_u(p, EigenIndex::make1(-1), {x, 0, 0});
  };
  GridFunction f = sample(p, M, [&](const std::array<double, 3>& x) { return fb(x[0]); });
  GridFunction g = sample(p, M, [&](const std::array<double, 3>& x) { return gb(x[0]); });
  const GridFunction c = conv_integral_oh1(f, g);
  for (double x : {0.0, 0.25, 0.5}) {
    const Complex piece1 =
        oracles::simpson([&](double t) { return fb(x - t) * gb(t); }, 0.0, x, 20000);
    const Complex piece2 =
        oracles::simpson([&](double t) { return fb(1.0 + x - t) * gb(t); }, x, 1.0, 20000) / h;
    const long gpos = static_cast<long>(std::lround(x * M));
    CHECK(std::abs(c.values(gpos) - (piece1 + piece2)) < 1e-9);
  }
}

TEST_CASE("conjugate-flavor convolution") {
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int M = 256, N = 12;
  const GridFunction v1 = sample_v(p, M, EigenIndex::make1(1));
  CHECK(sup_diff(conv_star_spectral(v1, v1, N), v1) < 1e-12);

  std::mt19937_64 rng(43);
  const GridFunction f = random_band(p, M, N, rng);
  const GridFunction g = random_band(p, M, N, rng);
  const SpectralCoeffs cf = forward_lstar(f, N);
  const SpectralCoeffs cg = forward_lstar(g, N);
  const SpectralCoeffs ch = forward_lstar(conv_star_spectral(f, g, N), N);
  const double scale = std::max(1.0, cf.values.cwiseAbs().maxCoeff() * cg.values.cwiseAbs().maxCoeff());
  CHECK((ch.values - cf.values.cwiseProduct(cg.values)).cwiseAbs().maxCoeff() < 1e-12 * scale);

  // h = 1: both flavors coincide on all inputs
  const ModelProblem p1 = ModelProblem::oh1d(1.0);
  const GridFunction f1 = random_band(p1, M, N, rng);
  const GridFunction g1 = random_band(p1, M, N, rng);
  CHECK(sup_diff(conv_star_spectral(f1, g1, N), conv_spectral(f1, g1, N)) < 1e-10);
}

TEST_CASE("quadrature L1 bound with a fitted constant") {
  std::mt19937_64 rng(47);
  const ModelProblem p = ModelProblem::oh1d(2.0);
  const int N = 12;
  double cfit = 0.0;
  for (int t = 0; t < 10; ++t) {
    const GridFunction f = random_band(p, 256, N, rng);
    const GridFunction g = random_band(p, 256, N, rng);
    const double l1 = norm_lp_grid(conv_spectral(f, g, N), 1.0);
    cfit = std::max(cfit, l1 / (norm_l2(f) * norm_l2(g)));
  }
  CHECK(cfit > 0.0);
  CHECK(cfit < 10.0);
  // stability under grid refinement on a fixed pair
  std::mt19937_64 rng2(47);
  SpectralCoeffs c = make_coeffs(p, N, Flavor::L);
  c.values = random_normal_vector(c.size(), rng2);
  SpectralCoeffs c2 = make_coeffs(p, N, Flavor::L);
  c2.values = random_normal_vector(c2.size(), rng2);
  double prev = -1.0;
  for (int M : {256, 512, 1024}) {
    const GridFunction f = inverse_l(c, M);
    const GridFunction g = inverse_l(c2, M);
    const double r =
        norm_lp_grid(conv_spectral(f, g, N), 1.0) / (norm_l2(f) * norm_l2(g));
    if (prev >= 0.0) CHECK(std::abs(r - prev) < 0.02 * prev);
    prev = r;
  }
}
