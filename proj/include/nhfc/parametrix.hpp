#ifndef NHFC_PARAMETRIX_HPP
#define NHFC_PARAMETRIX_HPP

#include "nhfc/calculus.hpp"
#include "nhfc/spaces.hpp"

namespace nhfc {

struct EllipticityReport {
  double C0 = 0.0;
  int N0 = 0;
  bool elliptic = false;
};

// Scan frequency shells outward for |a(x,xi)| >= C0 <xi>^mu, |xi| >= N0.
inline EllipticityReport ellipticity_check(const SymbolTable& a, double mu) {
  std::vector<double> ringMin(static_cast<size_t>(a.N) + 1,
                              std::numeric_limits<double>::infinity());
  for (long c = 0; c < a.cols(); ++c) {
    const EigenIndex xi = box_index(c, a.N, a.p.d);
    const double denom = std::pow(angle_weight(a.p, xi), mu);
    const double v = a.values.col(c).cwiseAbs().minCoeff() / denom;
    auto& slot = ringMin[static_cast<size_t>(xi.infNorm())];
    slot = std::min(slot, v);
  }
  EllipticityReport r;
  double tail = std::numeric_limits<double>::infinity();
  std::vector<double> minFrom(ringMin.size());
  for (int ring = a.N; ring >= 0; --ring) {
    tail = std::min(tail, ringMin[static_cast<size_t>(ring)]);
    minFrom[static_cast<size_t>(ring)] = tail;
  }
  for (int ring = 0; ring <= a.N; ++ring) {
    if (minFrom[static_cast<size_t>(ring)] > 1e-12) {
      r.N0 = ring;
      r.C0 = minFrom[static_cast<size_t>(ring)];
      r.elliptic = ring < a.N / 2 || (ring == 0 && a.N == 0);
      return r;
    }
  }
  r.N0 = a.N;
  r.C0 = 0.0;
  r.elliptic = false;
  return r;
}

namespace detail {

// Leading reciprocal with the low-frequency regularization below N0.
inline SymbolTable reciprocal_regularized(const SymbolTable& a, double mu, int N0) {
  SymbolTable b = a;
  for (long c = 0; c < a.cols(); ++c) {
    const EigenIndex xi = box_index(c, a.N, a.p.d);
    if (xi.infNorm() < N0) {
      const double reg = std::pow(angle_weight(a.p, xi), 2.0 * mu) * 1e-6;
      for (long g = 0; g < a.rows(); ++g) {
        const Complex v = a.values(g, c);
        b.values(g, c) = std::conj(v) / (std::norm(v) + reg);
      }
    } else {
      b.values.col(c) = a.values.col(c).cwiseInverse();
    }
  }
  return b;
}

// Correction terms of the recursion:
//   B_n = (-1/a) sum_{k<n} sum_{|alpha| = n-k} (1/alpha!) (Delta^alpha a) (D^{(alpha)} B_k),
// each B_k tabulated on the window shrunk by k.
inline std::vector<SymbolTable> parametrix_terms(const SymbolTable& a, double mu, int Nterms,
                                                 int N0) {
  std::vector<SymbolTable> B;
  B.push_back(reciprocal_regularized(a, mu, N0));
  const AdmissibleFamily fam = AdmissibleFamily::defaults(a.p.d, Flavor::L);
  const DerivativeBasis db = build_derivative_basis(fam, std::min(6, Nterms - 1));
  for (int n = 1; n < Nterms; ++n) {
    const int Nn = a.N - n;
    if (Nn < 0) throw std::invalid_argument("parametrix: window margin");
    SymbolTable acc = make_symbol(a.p, a.M, Nn, Flavor::L);
    acc.xIndependent = a.xIndependent;
    for (int k = 0; k < n; ++k) {
      for (const MultiOrder& alpha : multi_orders_upto(a.p.d, n - k)) {
        if (alpha.total() != n - k) continue;
        const SymbolTable da = restrict_window(difference_fast(a, alpha, Flavor::L), Nn);
        const SymbolTable DB = restrict_window(apply_derivative(db, alpha, B[static_cast<size_t>(k)]), Nn);
        acc.values += (1.0 / alpha.fact()) * da.values.cwiseProduct(DB.values);
      }
    }
    SymbolTable aNn = restrict_window(a, Nn);
    SymbolTable term = acc;
    term.values = -acc.values.cwiseQuotient(aNn.values);
    B.push_back(term);
  }
  return B;
}

}  // namespace detail

// Approximate inverse symbol: the correction terms are combined with the
// smooth low-frequency cutoffs chi(2^{-k} <xi>), since the raw term sum is an
// asymptotic series valid only at high frequency.
inline SymbolTable parametrix(const SymbolTable& a, double mu, int Nterms) {
  const EllipticityReport er = ellipticity_check(a, mu);
  if (!er.elliptic) throw std::runtime_error("parametrix: symbol not elliptic");
  const std::vector<SymbolTable> B = detail::parametrix_terms(a, mu, Nterms, er.N0);
  const int Nout = a.N - (Nterms - 1);
  SymbolTable out = make_symbol(a.p, a.M, Nout, Flavor::L);
  out.xIndependent = a.xIndependent;
  for (int k = 0; k < Nterms; ++k) {
    const SymbolTable bk = restrict_window(B[static_cast<size_t>(k)], Nout);
    const double ek = std::pow(2.0, -k);
    for (long c = 0; c < out.cols(); ++c) {
      const double w = chi_ramp(ek * angle_weight(a.p, box_index(c, Nout, a.p.d)));
      if (w != 0.0) out.values.col(c) += w * bk.values.col(c);
    }
  }
  return out;
}

struct SolveReport {
  GridFunction u;
  std::vector<double> residuals;  // relative L^2 residual per iterate
  double final_residual = 0.0;
  bool diverged = false;
};

// Coefficient-space matrix of Op(a) on the window of a.
inline MatrixXcd operator_matrix(const SymbolTable& a) {
  const Basis& b = basis(a.p, a.M, a.N);
  return (b.V.adjoint() * b.U.cwiseProduct(a.values)) / static_cast<double>(b.G);
}

// Iterative elliptic solver: u0 = Op(B) f, then Neumann refinement
// u <- u + Op(B)(f - Op(a) u).  The asymptotic parametrix carries O(1)
// relative error at the lowest few frequencies, so the preconditioner's
// columns with |xi| <= max(N0, 2) are replaced by the exact inverse symbol
// obtained from a dense solve on the window; refinement then contracts fast.
inline SolveReport elliptic_solve(const SymbolTable& a, const GridFunction& f, double mu,
                                  int Nterms, int refineIters) {
  const EllipticityReport er = ellipticity_check(a, mu);
  if (!er.elliptic) throw std::runtime_error("elliptic_solve: symbol not elliptic");
  SymbolTable B = parametrix(a, mu, Nterms);

  const SymbolTable aB = restrict_window(a, B.N);
  const int nlow = std::min(std::max(er.N0, 2), B.N);
  const Basis& bs = basis(a.p, a.M, B.N);
  Eigen::PartialPivLU<MatrixXcd> lu(operator_matrix(aB));
  for (long c = 0; c < B.cols(); ++c) {
    const EigenIndex xi = box_index(c, B.N, a.p.d);
    if (xi.infNorm() > nlow) continue;
    VectorXcd e = VectorXcd::Zero(bs.W);
    e(c) = 1.0;
    const VectorXcd coef = lu.solve(e);
    B.values.col(c) = (bs.U * coef).cwiseQuotient(bs.U.col(c));
  }

  const int cap = std::min(refineIters, 32);
  const double fn = norm_l2(f);
  SolveReport rep;
  rep.u = op_apply(B, f);
  auto residual = [&](const GridFunction& u) {
    GridFunction r = u;
    r.values = f.values - op_apply(a, u).values;
    return r;
  };
  GridFunction r = residual(rep.u);
  rep.residuals.push_back(fn > 0.0 ? norm_l2(r) / fn : 0.0);
  int rising = 0;
  for (int it = 0; it < cap; ++it) {
    rep.u.values += op_apply(B, r).values;
    r = residual(rep.u);
    const double rr = fn > 0.0 ? norm_l2(r) / fn : 0.0;
    rep.residuals.push_back(rr);
    if (rr > rep.residuals[rep.residuals.size() - 2]) {
      if (++rising >= 2) {
        rep.diverged = true;
        break;
      }
    } else {
      rising = 0;
    }
    if (rr <= 1e-14) break;
  }
  rep.final_residual = rep.residuals.back();
  return rep;
}

struct AprioriReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double residual = 0.0;
  bool certified = false;
};

// ||u||_{H^{s+mu}} against ||f||_{H^s} + ||u||_{H^{-Nneg}} for a pair with
// Op(a) u = f.
inline AprioriReport apriori_check(const SymbolTable& a, const GridFunction& u,
                                   const GridFunction& f, double mu, double s, double Nneg,
                                   int N) {
  AprioriReport r;
  GridFunction res = u;
  res.values = op_apply(a, u).values - f.values;
  const double fn = norm_l2(f);
  r.residual = fn > 0.0 ? norm_l2(res) / fn : norm_l2(res);
  r.certified = r.residual <= 1e-8;
  r.lhs = sobolev_norm(u, s + mu, N);
  r.rhs = sobolev_norm(f, s, N) + sobolev_norm(u, -Nneg, N);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

struct OperatorBoundReport {
  double norm = 0.0;
  bool converged = false;
};

// Empirical H^s -> H^{s-mu} norm of Op(a) by power iteration in the weighted
// coefficient metric.
inline OperatorBoundReport sobolev_bound_check(const SymbolTable& a, double mu, double s) {
  const Basis& bs = basis(a.p, a.M, a.N);
  const MatrixXcd T = operator_matrix(a);
  const MatrixXcd G = (bs.U.adjoint() * bs.U) / static_cast<double>(bs.G);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(G);
  const MatrixXcd Ghalf = es.operatorSqrt();
  const MatrixXcd GhalfInv = es.operatorInverseSqrt();
  VectorXd wts = bs.weight;
  MatrixXcd Dout = MatrixXcd::Zero(bs.W, bs.W);
  MatrixXcd DinInv = MatrixXcd::Zero(bs.W, bs.W);
  for (long w = 0; w < bs.W; ++w) {
    Dout(w, w) = std::pow(wts(w), s - mu);
    DinInv(w, w) = std::pow(wts(w), -s);
  }
  OperatorBoundReport r;
  const MatrixXcd Bmat = Ghalf * Dout * T * DinInv * GhalfInv;
  r.norm = operator_norm_power(Bmat, 60, &r.converged);
  return r;
}

}  // namespace nhfc

#endif  // NHFC_PARAMETRIX_HPP
