#ifndef NHFC_QUANTIZATION_HPP
#define NHFC_QUANTIZATION_HPP

#include "nhfc/symbol.hpp"
#include "nhfc/transform.hpp"

namespace nhfc {

// Op(a) f (x) = sum_xi u_xi(x) a(x,xi) fhat(xi).
inline GridFunction op_apply(const SymbolTable& a, const GridFunction& f) {
  if (!(a.p == f.p) || a.M != f.M) throw std::invalid_argument("op_apply: mismatch");
  const Basis& b = basis(a.p, a.M, a.N);
  const SpectralCoeffs c = forward_l(f, a.N);
  GridFunction out = make_grid_function(a.p, a.M);
  out.values = b.U.cwiseProduct(a.values) * c.values;
  return out;
}

// Conjugate-flavor quantization: sum_xi v_xi(x) a(x,xi) fhat_*(xi).
inline GridFunction op_apply_star(const SymbolTable& a, const GridFunction& f) {
  if (!(a.p == f.p) || a.M != f.M) throw std::invalid_argument("op_apply_star: mismatch");
  const Basis& b = basis(a.p, a.M, a.N);
  const SpectralCoeffs c = forward_lstar(f, a.N);
  GridFunction out = make_grid_function(a.p, a.M);
  out.values = b.V.cwiseProduct(a.values) * c.values;
  return out;
}

using OperatorFn = std::function<GridFunction(const GridFunction&)>;

// sigma(x,xi) = (A e_xi)(x) / e_xi(x) with e = u (L flavor) or v (L* flavor).
inline SymbolTable symbol_extract(const OperatorFn& A, const ModelProblem& p, int M, int N,
                                  Flavor flavor = Flavor::L) {
  if (!(wz_bound(p) > 0.0)) throw std::runtime_error("symbol_extract: vanishing eigenfunction");
  const Basis& b = basis(p, M, N);
  SymbolTable s = make_symbol(p, M, N, flavor);
  for (long c = 0; c < s.cols(); ++c) {
    const EigenIndex xi = box_index(c, N, p.d);
    const GridFunction Ae = A(flavor == Flavor::L ? sample_u(p, M, xi) : sample_v(p, M, xi));
    const auto& e = flavor == Flavor::L ? b.U : b.V;
    s.values.col(c) = Ae.values.cwiseQuotient(e.col(c));
  }
  return s;
}

// K(x,y) = sum_xi u_xi(x) a(x,xi) conj(v_xi(y)).
inline MatrixXcd schwartz_kernel(const SymbolTable& a) {
  const Basis& b = basis(a.p, a.M, a.N);
  return b.U.cwiseProduct(a.values) * b.V.adjoint();
}

// k_A(x,y) = sum_xi a(x,xi) u_xi(y).
inline MatrixXcd conv_kernel(const SymbolTable& a) {
  const Basis& b = basis(a.p, a.M, a.N);
  return a.values * b.U.transpose();
}

inline GridFunction multiplier_apply(const std::function<Complex(const EigenIndex&)>& sigma,
                                     const GridFunction& f, int N) {
  SpectralCoeffs c = forward_l(f, N);
  for (long w = 0; w < c.size(); ++w) c.values(w) *= sigma(box_index(w, N, f.p.d));
  return inverse_l(c, f.M);
}

inline std::function<Complex(const EigenIndex&)> adjoint_multiplier(
    const std::function<Complex(const EigenIndex&)>& sigma) {
  return [sigma](const EigenIndex& xi) { return std::conj(sigma(xi)); };
}

struct KernelDecayReport {
  double diag_peak = 0.0;
  double offdiag_sup = 0.0;    // sup over torus distance > 1/4
  double offdiag_frac = 0.0;   // offdiag_sup / diag_peak
  double fitted_exponent = 0.0;
  int shells = 0;
};

// Dyadic-shell decay of |K(x,y)| in the torus distance |x-y|.
inline KernelDecayReport kernel_decay_report(const SymbolTable& a) {
  if (a.p.d != 1) throw std::invalid_argument("kernel_decay_report: d = 1 only");
  const MatrixXcd K = schwartz_kernel(a);
  const int M = a.M;
  KernelDecayReport r;
  r.diag_peak = K.diagonal().cwiseAbs().maxCoeff();
  std::vector<double> shell_sup;
  int maxj = 1;
  while ((1 << (maxj + 1)) < M) ++maxj;
  shell_sup.assign(static_cast<size_t>(maxj), 0.0);
  for (int i = 0; i < M; ++i)
    for (int l = 0; l < M; ++l) {
      const int dk = std::min(std::abs(i - l), M - std::abs(i - l));
      const double dist = static_cast<double>(dk) / M;
      if (dist > 0.25) r.offdiag_sup = std::max(r.offdiag_sup, std::abs(K(i, l)));
      for (int j = 0; j < maxj; ++j) {
        const double hi = std::pow(2.0, -j - 1);
        if (dist <= 2.0 * hi && dist > hi)
          shell_sup[static_cast<size_t>(j)] = std::max(shell_sup[static_cast<size_t>(j)], std::abs(K(i, l)));
      }
    }
  std::vector<double> xs, ys;
  for (int j = 0; j < maxj; ++j)
    if (shell_sup[static_cast<size_t>(j)] > 0.0) {
      xs.push_back(std::log(std::pow(2.0, -j - 0.5)));
      ys.push_back(std::log(shell_sup[static_cast<size_t>(j)]));
    }
  r.shells = static_cast<int>(xs.size());
  if (r.shells < 2) throw std::runtime_error("kernel_decay_report: insufficient shells");
  r.fitted_exponent = fit_slope(xs, ys);
  r.offdiag_frac = r.diag_peak > 0.0 ? r.offdiag_sup / r.diag_peak : 0.0;
  return r;
}

struct L2BoundReport {
  double op_norm = 0.0;
  double symbol_bound = 0.0;  // max_{|alpha| <= k} sup |d^alpha_x a|
  double c_geom = 0.0;
  double ratio = 0.0;
  bool converged = false;
  bool pass = false;
};

inline double symbol_derivative_bound(const SymbolTable& a, int k);

// Power-iteration estimate of ||Op(a)||_{L^2 -> L^2} against the derivative
// bound on the symbol; c_geom is a fixed per-problem geometric constant.
inline L2BoundReport l2_bound_check(const SymbolTable& a, int k) {
  if (k < 1) throw std::invalid_argument("l2_bound_check: k >= 1");
  const Basis& b = basis(a.p, a.M, a.N);
  const MatrixXcd Agrid =
      (b.U.cwiseProduct(a.values) * b.V.adjoint()) / static_cast<double>(b.G);
  L2BoundReport r;
  r.op_norm = operator_norm_power(Agrid, 20, &r.converged);
  r.symbol_bound = symbol_derivative_bound(a, k);
  double cg = 2.0;
  for (int j = 0; j < a.p.d; ++j) {
    const double hj = a.p.h[static_cast<size_t>(j)];
    cg *= std::pow(std::max(hj, 1.0 / hj), 2.0);
  }
  r.c_geom = cg;
  r.ratio = r.symbol_bound > 0.0 ? r.op_norm / (r.c_geom * r.symbol_bound) : 0.0;
  r.pass = r.op_norm <= r.c_geom * r.symbol_bound + 1e-12;
  return r;
}

inline double symbol_derivative_bound(const SymbolTable& a, int k) {
  double best = a.values.cwiseAbs().maxCoeff();
  if (a.xIndependent) return best;
  // enumerate multi-orders (b_0..b_{d-1}) with 1 <= total <= k
  std::array<int, 3> ord{0, 0, 0};
  std::function<void(int, int)> rec = [&](int axis, int remaining) {
    if (axis == a.p.d) {
      int tot = ord[0] + ord[1] + ord[2];
      if (tot == 0) return;
      SymbolTable t = a;
      for (int j = 0; j < a.p.d; ++j)
        if (ord[static_cast<size_t>(j)] > 0)
          apply_along_axis(derivative_matrix(a.M, ord[static_cast<size_t>(j)]), t, j);
      best = std::max(best, t.values.cwiseAbs().maxCoeff());
      return;
    }
    for (int b = 0; b <= remaining; ++b) {
      ord[static_cast<size_t>(axis)] = b;
      rec(axis + 1, remaining - b);
    }
    ord[static_cast<size_t>(axis)] = 0;
  };
  rec(0, k);
  return best;
}

}  // namespace nhfc

#endif  // NHFC_QUANTIZATION_HPP
