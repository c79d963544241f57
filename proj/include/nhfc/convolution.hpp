#ifndef NHFC_CONVOLUTION_HPP
#define NHFC_CONVOLUTION_HPP

#include "nhfc/transform.hpp"

namespace nhfc {

// Spectral convolution: coefficients multiply, then expand in u_xi.
inline GridFunction conv_spectral(const GridFunction& f, const GridFunction& g, int N) {
  if (!(f.p == g.p) || f.M != g.M) throw std::invalid_argument("conv_spectral: mismatch");
  SpectralCoeffs a = forward_l(f, N);
  const SpectralCoeffs b = forward_l(g, N);
  a.values = a.values.cwiseProduct(b.values);
  return inverse_l(a, f.M);
}

// Conjugate-flavor convolution: L*-coefficients multiply, expansion in v_xi.
inline GridFunction conv_star_spectral(const GridFunction& f, const GridFunction& g, int N) {
  if (!(f.p == g.p) || f.M != g.M) throw std::invalid_argument("conv_star_spectral: mismatch");
  SpectralCoeffs a = forward_lstar(f, N);
  const SpectralCoeffs b = forward_lstar(g, N);
  a.values = a.values.cwiseProduct(b.values);
  return inverse_lstar(a, f.M);
}

// Direct integral formula on (0,1) for the first-order model problem:
//   (f * g)(x) = int_0^x f(x-t) g(t) dt + (1/h) int_x^1 f(1+x-t) g(t) dt.
// Composite trapezoid split at t = x; the single off-grid sample at the
// endpoint t = 1 is filled by band-limited evaluation, which for this system
// reduces to the twisted periodicity value f(1) = h f(0).
inline GridFunction conv_integral_oh1(const GridFunction& f, const GridFunction& g) {
  if (f.p.kind != ProblemKind::Oh1D) throw std::invalid_argument("conv_integral_oh1: needs Oh1D");
  if (!(f.p == g.p) || f.M != g.M) throw std::invalid_argument("conv_integral_oh1: mismatch");
  const int M = f.M;
  const double h = f.p.h[0];
  const double dt = 1.0 / M;

  VectorXcd fe(M + 1), ge(M + 1);
  fe.head(M) = f.values;
  ge.head(M) = g.values;
  fe(M) = h * f.values(0);
  ge(M) = h * g.values(0);

  GridFunction out = make_grid_function(f.p, M);
  for (int k = 0; k < M; ++k) {
    Complex s1 = 0.0;
    if (k >= 1) {
      s1 += 0.5 * (fe(k) * ge(0) + fe(0) * ge(k));
      for (int l = 1; l < k; ++l) s1 += fe(k - l) * ge(l);
      s1 *= dt;
    }
    Complex s2 = 0.5 * (fe(M) * ge(k) + fe(k) * ge(M));
    for (int l = k + 1; l < M; ++l) s2 += fe(M + k - l) * ge(l);
    s2 *= dt / h;
    out.values(k) = s1 + s2;
  }
  return out;
}

}  // namespace nhfc

#endif  // NHFC_CONVOLUTION_HPP
