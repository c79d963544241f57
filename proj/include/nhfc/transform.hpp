#ifndef NHFC_TRANSFORM_HPP
#define NHFC_TRANSFORM_HPP

#include "nhfc/grid.hpp"

#include <iostream>

namespace nhfc {

inline void warn_aliasing(int M, int N, const char* who) {
  if (M < 2 * (N + 1))
    std::cerr << "warning: " << who << ": M=" << M << " < 2(N+1)=" << 2 * (N + 1)
              << " risks aliasing\n";
}

// Coefficient map against the conjugate family: fhat(xi) = mean_k f(x_k) conj(v_xi(x_k)).
// Exact (to roundoff) whenever f lies in span{u_xi : |xi|_inf <= N}.
inline SpectralCoeffs forward_l(const GridFunction& f, int N) {
  warn_aliasing(f.M, N, "forward_l");
  const Basis& b = basis(f.p, f.M, N);
  SpectralCoeffs c = make_coeffs(f.p, N, Flavor::L);
  c.values = (b.V.adjoint() * f.values) / static_cast<double>(b.G);
  return c;
}

inline GridFunction inverse_l(const SpectralCoeffs& c, int M) {
  warn_aliasing(M, c.N, "inverse_l");
  const Basis& b = basis(c.p, M, c.N);
  GridFunction f = make_grid_function(c.p, M);
  f.values = b.U * c.values;
  return f;
}

inline SpectralCoeffs forward_lstar(const GridFunction& f, int N) {
  warn_aliasing(f.M, N, "forward_lstar");
  const Basis& b = basis(f.p, f.M, N);
  SpectralCoeffs c = make_coeffs(f.p, N, Flavor::Lstar);
  c.values = (b.U.adjoint() * f.values) / static_cast<double>(b.G);
  return c;
}

inline GridFunction inverse_lstar(const SpectralCoeffs& c, int M) {
  warn_aliasing(M, c.N, "inverse_lstar");
  const Basis& b = basis(c.p, M, c.N);
  GridFunction f = make_grid_function(c.p, M);
  f.values = b.V * c.values;
  return f;
}

// Sum over the window of a(xi) conj(b_star(xi)); equals the L^2 inner product
// of the underlying band-limited functions.
inline Complex plancherel_pair(const SpectralCoeffs& a, const SpectralCoeffs& b_star) {
  if (a.N != b_star.N || !(a.p == b_star.p))
    throw std::invalid_argument("plancherel_pair: window mismatch");
  return a.values.cwiseProduct(b_star.values.conjugate()).sum();
}

// Band-limited evaluation at an arbitrary point.
inline Complex eval_band(const SpectralCoeffs& c, const std::array<double, 3>& x) {
  Complex s = 0.0;
  const long W = c.size();
  for (long col = 0; col < W; ++col) s += c.values(col) * eval_u(c.p, box_index(col, c.N, c.p.d), x);
  return s;
}

// A grid function is boundary-compatible when it is (numerically) band-limited
// with respect to the weighted exponential system, i.e. the h^{-x}-weighted
// samples extend 1-periodically.
inline bool bc_compatible(const GridFunction& f, double tol = 1e-8) {
  const int N = f.M / 2 - 1;
  GridFunction r = inverse_l(forward_l(f, N), f.M);
  const double scale = std::max(1.0, f.values.cwiseAbs().maxCoeff());
  return (r.values - f.values).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace nhfc

#endif  // NHFC_TRANSFORM_HPP
