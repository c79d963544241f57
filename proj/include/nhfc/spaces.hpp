#ifndef NHFC_SPACES_HPP
#define NHFC_SPACES_HPP

#include "nhfc/transform.hpp"

#include <limits>

namespace nhfc {

struct SobolevParams {
  double s = 0.0;
};

// Weighted sequence pairing behind the H^s norms: for L-coefficients a, the
// squared norm is sum_xi a(xi) conj(b(xi)) where b are the L*-coefficients of
// the band-limited function with L-coefficients a.  This form is real and
// nonnegative for every coefficient vector, and weight shifts act on it as
// exact isometries.
inline Complex weighted_pairing_radicand(const SpectralCoeffs& a, int M) {
  const SpectralCoeffs b = forward_lstar(inverse_l(a, M), a.N);
  return a.values.cwiseProduct(b.values.conjugate()).sum();
}

inline SpectralCoeffs weight_scaled(const SpectralCoeffs& c, double s) {
  SpectralCoeffs out = c;
  for (long w = 0; w < out.size(); ++w)
    out.values(w) *= std::pow(angle_weight(c.p, box_index(w, c.N, c.p.d)), s);
  return out;
}

inline double sobolev_norm_coeffs(const SpectralCoeffs& c, double s, int M, double* imag_part = nullptr) {
  const SpectralCoeffs a = weight_scaled(c, s);
  const Complex rad = weighted_pairing_radicand(a, M);
  if (imag_part) *imag_part = rad.imag();
  const double scale = std::max(1.0, a.values.squaredNorm());
  if (rad.real() < -1e-8 * scale)
    throw std::runtime_error("sobolev_norm: negative radicand (aliasing or incompatible input)");
  return std::sqrt(std::max(0.0, rad.real()));
}

inline double sobolev_norm(const GridFunction& f, double s, int N, double* imag_part = nullptr) {
  warn_aliasing(f.M, N, "sobolev_norm");
  return sobolev_norm_coeffs(forward_l(f, N), s, f.M, imag_part);
}

inline Complex sobolev_inner(const GridFunction& f, const GridFunction& g, double s, int N) {
  const SpectralCoeffs af = weight_scaled(forward_l(f, N), s);
  const SpectralCoeffs ag = weight_scaled(forward_l(g, N), s);
  const SpectralCoeffs bg = forward_lstar(inverse_l(ag, f.M), N);
  return af.values.cwiseProduct(bg.values.conjugate()).sum();
}

// Sequence-space norms with sup-norm weights of the eigenfamilies.
inline double lp_norm(const SpectralCoeffs& c, double pexp, Flavor flavor) {
  if (pexp < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  const double su = flavor == Flavor::L ? sup_norm_u(c.p) : sup_norm_v(c.p);
  const double sv = flavor == Flavor::L ? sup_norm_v(c.p) : sup_norm_u(c.p);
  if (pexp == std::numeric_limits<double>::infinity())
    return c.values.cwiseAbs().maxCoeff() / sv;
  double s = 0.0;
  if (pexp <= 2.0) {
    const double w = std::pow(su, 2.0 - pexp);
    for (long i = 0; i < c.size(); ++i) s += std::pow(std::abs(c.values(i)), pexp) * w;
  } else {
    const double w = std::pow(sv, pexp - 2.0);
    for (long i = 0; i < c.size(); ++i) s += std::pow(std::abs(c.values(i)), pexp) * w;
  }
  return std::pow(s, 1.0 / pexp);
}

struct RatioReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = true;
};

// ||fhat||_{l^{p'}} vs ||f||_{L^p}; for p = 1 the constant is 1 and the
// inequality is asserted, otherwise the ratio is only recorded.
inline RatioReport hausdorff_young_check(const GridFunction& f, double pexp, int N) {
  if (pexp < 1.0 || pexp > 2.0) throw std::invalid_argument("hausdorff_young_check: p in [1,2]");
  const double pprime =
      pexp == 1.0 ? std::numeric_limits<double>::infinity() : pexp / (pexp - 1.0);
  RatioReport r;
  r.lhs = lp_norm(forward_l(f, N), pprime, Flavor::L);
  r.rhs = norm_lp_grid(f, pexp);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  r.pass = pexp > 1.0 || r.ratio <= 1.0 + 1e-8;
  return r;
}

inline RatioReport duality_pair_check(const SpectralCoeffs& s1, const SpectralCoeffs& s2,
                                      double pexp) {
  if (s1.N != s2.N || !(s1.p == s2.p)) throw std::invalid_argument("duality_pair_check: mismatch");
  const double pprime =
      pexp == 1.0 ? std::numeric_limits<double>::infinity() : pexp / (pexp - 1.0);
  RatioReport r;
  r.lhs = std::abs(s1.values.cwiseProduct(s2.values).sum());
  r.rhs = lp_norm(s1, pexp, Flavor::L) * lp_norm(s2, pprime, Flavor::Lstar);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  r.pass = r.lhs <= r.rhs + 1e-10;
  return r;
}

// sup |f| / ||f||_{H^s}; diagnostic for the continuous-embedding order s > d/2.
inline double embedding_ratio(const GridFunction& f, double s, int N) {
  const double den = sobolev_norm(f, s, N);
  if (den == 0.0) throw std::invalid_argument("embedding_ratio: zero norm");
  return f.values.cwiseAbs().maxCoeff() / den;
}

}  // namespace nhfc

#endif  // NHFC_SPACES_HPP
