#ifndef NHFC_CALCULUS_HPP
#define NHFC_CALCULUS_HPP

#include "nhfc/quantization.hpp"

namespace nhfc {

// ---- multi-index enumeration over d axes ----

struct MultiOrder {
  std::array<int, 3> a{0, 0, 0};
  int d = 1;
  int total() const { return a[0] + a[1] + a[2]; }
  double fact() const { return factorial(a[0]) * factorial(a[1]) * factorial(a[2]); }
};

inline std::vector<MultiOrder> multi_orders_upto(int d, int maxTotal) {
  std::vector<MultiOrder> out;
  MultiOrder mo;
  mo.d = d;
  std::function<void(int, int)> rec = [&](int axis, int remaining) {
    if (axis == d) {
      out.push_back(mo);
      return;
    }
    for (int b = 0; b <= remaining; ++b) {
      mo.a[static_cast<size_t>(axis)] = b;
      rec(axis + 1, remaining - b);
    }
    mo.a[static_cast<size_t>(axis)] = 0;
  };
  rec(0, maxTotal);
  return out;
}

// ---- admissible families ----
// Per-axis generators q_j(x,y) vanishing exactly on the diagonal with
// nonsingular diagonal gradient.  Default: q_j = e^{2 pi i (y_j - x_j)} - 1
// (L flavor) and its complex conjugate (L* flavor).

struct AdmissibleFamily {
  Flavor flavor = Flavor::L;
  int d = 1;
  bool isDefault = true;
  // custom per-axis scalar generators q_j(xj, yj), assumed 1-periodic in yj-xj
  std::vector<std::function<Complex(double, double)>> q;

  static AdmissibleFamily defaults(int d, Flavor flavor = Flavor::L) {
    AdmissibleFamily f;
    f.flavor = flavor;
    f.d = d;
    f.isDefault = true;
    return f;
  }
  static AdmissibleFamily custom(std::vector<std::function<Complex(double, double)>> qs,
                                 Flavor flavor = Flavor::L) {
    AdmissibleFamily f;
    f.flavor = flavor;
    f.d = static_cast<int>(qs.size());
    f.isDefault = false;
    f.q = std::move(qs);
    return f;
  }

  Complex eval_axis(int j, double xj, double yj) const {
    if (isDefault) {
      const double sgn = flavor == Flavor::L ? 1.0 : -1.0;
      return std::exp(Complex(0.0, sgn * 2.0 * kPi * (yj - xj))) - 1.0;
    }
    return q[static_cast<size_t>(j)](xj, yj);
  }

  Complex eval_pow(const MultiOrder& alpha, const std::array<double, 3>& x,
                   const std::array<double, 3>& y) const {
    Complex s = 1.0;
    for (int j = 0; j < d; ++j) {
      const Complex qj = eval_axis(j, x[static_cast<size_t>(j)], y[static_cast<size_t>(j)]);
      for (int t = 0; t < alpha.a[static_cast<size_t>(j)]; ++t) s *= qj;
    }
    return s;
  }
};

// ---- derivative basis ----
// Per axis, the triangular system T(b, a) = (1/a!) d^b_y q^a |_{y=x} relating
// plain partials to the family derivatives; C = T^{-1} expresses the family
// derivative D^{(k)} as sum_b C(k, b) d^b.

struct DerivativeBasis {
  Flavor flavor = Flavor::L;
  int maxOrder = 0;
  std::vector<MatrixXcd> T;  // per axis
  std::vector<MatrixXcd> C;  // per axis
};

inline DerivativeBasis build_derivative_basis(const AdmissibleFamily& fam, int maxOrder) {
  if (maxOrder > 6) throw std::invalid_argument("build_derivative_basis: maxOrder <= 6");
  DerivativeBasis basis;
  basis.flavor = fam.flavor;
  basis.maxOrder = maxOrder;
  const int n = maxOrder + 1;
  for (int j = 0; j < fam.d; ++j) {
    MatrixXcd T = MatrixXcd::Zero(n, n);
    if (fam.isDefault) {
      const Complex w = (fam.flavor == Flavor::L ? 1.0 : -1.0) * 2.0 * kPi * kI;
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) T(b, a) = std::pow(w, b) * stirling2(b, a);
    } else {
      // sample q^a(0, y) on a fine periodic grid and differentiate spectrally
      const int Ms = 256;
      for (int a = 0; a < n; ++a) {
        VectorXcd qa(Ms);
        for (int r = 0; r < Ms; ++r) {
          const double y = static_cast<double>(r) / Ms;
          Complex s = 1.0;
          for (int t = 0; t < a; ++t) s *= fam.eval_axis(j, 0.0, y);
          qa(r) = s;
        }
        for (int b = 0; b < n; ++b)
          T(b, a) = (derivative_matrix(Ms, b).row(0) * qa)(0, 0) / factorial(a);
      }
    }
    Eigen::FullPivLU<MatrixXcd> lu(T);
    if (!lu.isInvertible()) throw std::runtime_error("build_derivative_basis: singular system");
    basis.T.push_back(T);
    basis.C.push_back(lu.inverse());
  }
  return basis;
}

// Apply D^{(alpha)} to the x-slices of a symbol table (spectral partials,
// symbols assumed 1-periodic in x).
inline SymbolTable apply_derivative(const DerivativeBasis& basis, const MultiOrder& alpha,
                                    const SymbolTable& a) {
  if (alpha.total() == 0) return a;
  if (alpha.total() > basis.maxOrder)
    throw std::invalid_argument("apply_derivative: order beyond basis");
  if (a.xIndependent) {
    SymbolTable z = a;
    z.values.setZero();
    return z;
  }
  SymbolTable cur = a;
  for (int j = 0; j < a.p.d; ++j) {
    const int k = alpha.a[static_cast<size_t>(j)];
    if (k == 0) continue;
    SymbolTable acc = cur;
    acc.values *= basis.C[static_cast<size_t>(j)](k, 0);
    for (int b = 1; b <= k; ++b) {
      SymbolTable t = cur;
      apply_along_axis(derivative_matrix(a.M, b), t, j);
      acc.values += basis.C[static_cast<size_t>(j)](k, b) * t.values;
    }
    cur = acc;
  }
  return cur;
}

// ---- difference operators ----

inline SymbolTable difference_fast_axis(const SymbolTable& a, int axis, Flavor flavor) {
  if (a.N < 1) throw std::invalid_argument("difference_apply: window underflow");
  const int Nn = a.N - 1;
  SymbolTable out = make_symbol(a.p, a.M, Nn, a.flavor);
  out.xIndependent = a.xIndependent;
  const int shift = flavor == Flavor::L ? 1 : -1;
  for (long c = 0; c < out.cols(); ++c) {
    EigenIndex xi = box_index(c, Nn, a.p.d);
    EigenIndex xs = xi;
    xs.k[static_cast<size_t>(axis)] += shift;
    out.values.col(c) = a.values.col(box_pos(xs, a.N)) - a.values.col(box_pos(xi, a.N));
  }
  return out;
}

// Fast path for the default family: iterated frequency shifts.
inline SymbolTable difference_fast(const SymbolTable& a, const MultiOrder& alpha, Flavor flavor) {
  SymbolTable cur = a;
  for (int j = 0; j < a.p.d; ++j)
    for (int t = 0; t < alpha.a[static_cast<size_t>(j)]; ++t)
      cur = difference_fast_axis(cur, j, flavor);
  return cur;
}

// General path straight from the definition: transform q^alpha(x,.) e_xi(.)
// and resum against the symbol.  Serves as the oracle for the fast path and
// supports custom families.
inline SymbolTable difference_general(const SymbolTable& a, const MultiOrder& alpha,
                                      const AdmissibleFamily& fam) {
  const int drop = alpha.total();
  if (a.N < drop) throw std::invalid_argument("difference_general: window underflow");
  const int Nn = a.N - drop;
  const Basis& bs = basis(a.p, a.M, a.N);
  SymbolTable out = make_symbol(a.p, a.M, Nn, a.flavor);
  const bool L = fam.flavor == Flavor::L;
  for (long g = 0; g < out.rows(); ++g) {
    const auto x = grid_point(g, a.M, a.p.d);
    VectorXcd qvals(bs.G);
    for (long gy = 0; gy < bs.G; ++gy)
      qvals(gy) = fam.eval_pow(alpha, x, grid_point(gy, a.M, a.p.d));
    for (long c = 0; c < out.cols(); ++c) {
      const long cfull = box_pos(box_index(c, Nn, a.p.d), a.N);
      const VectorXcd w = qvals.cwiseProduct(L ? bs.U.col(cfull) : bs.V.col(cfull));
      const VectorXcd chat =
          ((L ? bs.V : bs.U).adjoint() * w) / static_cast<double>(bs.G);
      Complex s = 0.0;
      for (long e = 0; e < bs.W; ++e)
        s += chat(e) * a.values(g, e) * (L ? bs.U(g, e) : bs.V(g, e));
      out.values(g, c) = s / (L ? bs.U(g, cfull) : bs.V(g, cfull));
    }
  }
  return out;
}

inline SymbolTable difference_apply(const SymbolTable& a, const MultiOrder& alpha,
                                    const AdmissibleFamily& fam) {
  if (fam.isDefault) {
    const int drop = alpha.total();
    if (a.N < drop) throw std::invalid_argument("difference_apply: window underflow");
    SymbolTable out = difference_fast(a, alpha, fam.flavor);
    return restrict_window(out, a.N - drop);
  }
  return difference_general(a, alpha, fam);
}

// ---- pointwise helpers ----

inline SymbolTable symbol_product(const SymbolTable& a, const SymbolTable& b) {
  if (a.N != b.N || a.M != b.M || !(a.p == b.p))
    throw std::invalid_argument("symbol_product: mismatch");
  SymbolTable out = a;
  out.values = a.values.cwiseProduct(b.values);
  out.xIndependent = a.xIndependent && b.xIndependent;
  return out;
}

// ---- asymptotic expansions ----

// sigma_{AB} ~ sum_alpha (1/alpha!) (Delta^alpha sigma_A) (D^{(alpha)} sigma_B).
inline SymbolTable compose(const SymbolTable& a, const SymbolTable& b, int Nterms) {
  if (a.N != b.N || a.M != b.M || !(a.p == b.p)) throw std::invalid_argument("compose: mismatch");
  if (Nterms < 1 || a.N < Nterms - 1) throw std::invalid_argument("compose: window margin");
  const int Nout = a.N - (Nterms - 1);
  const AdmissibleFamily fam = AdmissibleFamily::defaults(a.p.d, Flavor::L);
  const DerivativeBasis db = build_derivative_basis(fam, Nterms - 1);
  SymbolTable out = make_symbol(a.p, a.M, Nout, Flavor::L);
  out.xIndependent = a.xIndependent && b.xIndependent;
  for (const MultiOrder& alpha : multi_orders_upto(a.p.d, Nterms - 1)) {
    const SymbolTable da = restrict_window(difference_fast(a, alpha, Flavor::L), Nout);
    const SymbolTable Db = restrict_window(apply_derivative(db, alpha, b), Nout);
    out.values += (1.0 / alpha.fact()) * da.values.cwiseProduct(Db.values);
  }
  return out;
}

// tau_{A*} ~ sum_alpha (1/alpha!) tilde-Delta^alpha tilde-D^{(alpha)} conj(sigma_A).
inline SymbolTable adjoint_symbol(const SymbolTable& a, int Nterms) {
  if (Nterms < 1 || a.N < Nterms - 1) throw std::invalid_argument("adjoint_symbol: window margin");
  const int Nout = a.N - (Nterms - 1);
  const AdmissibleFamily fam = AdmissibleFamily::defaults(a.p.d, Flavor::Lstar);
  const DerivativeBasis db = build_derivative_basis(fam, Nterms - 1);
  const SymbolTable abar = conj_symbol(a, Flavor::Lstar);
  SymbolTable out = make_symbol(a.p, a.M, Nout, Flavor::Lstar);
  out.xIndependent = a.xIndependent;
  for (const MultiOrder& alpha : multi_orders_upto(a.p.d, Nterms - 1)) {
    const SymbolTable t = apply_derivative(db, alpha, abar);
    const SymbolTable dt = restrict_window(difference_fast(t, alpha, Flavor::Lstar), Nout);
    out.values += (1.0 / alpha.fact()) * dt.values;
  }
  return out;
}

using AmplitudeFn =
    std::function<Complex(const std::array<double, 3>&, const std::array<double, 3>&, const EigenIndex&)>;

// Effective symbol of an amplitude operator:
// sum_alpha (1/alpha!) Delta^alpha [ D_y^{(alpha)} a(x,y,xi) |_{y=x} ].
inline SymbolTable amplitude_reduce(const AmplitudeFn& amp, const ModelProblem& p, int M, int N,
                                    int Nterms) {
  if (Nterms < 1 || N < Nterms - 1) throw std::invalid_argument("amplitude_reduce: window margin");
  const int Nout = N - (Nterms - 1);
  const AdmissibleFamily fam = AdmissibleFamily::defaults(p.d, Flavor::L);
  const DerivativeBasis db = build_derivative_basis(fam, Nterms - 1);
  SymbolTable out = make_symbol(p, M, Nout, Flavor::L);
  const long G = grid_size(M, p.d);
  for (const MultiOrder& alpha : multi_orders_upto(p.d, Nterms - 1)) {
    SymbolTable diag = make_symbol(p, M, N, Flavor::L);
    for (long g = 0; g < G; ++g) {
      const auto x = grid_point(g, M, p.d);
      SymbolTable ySlice = tabulate_symbol(
          p, M, N, [&](const std::array<double, 3>& y, const EigenIndex& xi) { return amp(x, y, xi); });
      const SymbolTable dy = apply_derivative(db, alpha, ySlice);
      diag.values.row(g) = dy.values.row(g);
    }
    const SymbolTable dd = restrict_window(difference_fast(diag, alpha, Flavor::L), Nout);
    out.values += (1.0 / alpha.fact()) * dd.values;
  }
  return out;
}

// sum_j chi(eps_j <xi>) sigma_j for strictly decreasing orders.
inline SymbolTable asymptotic_sum(const std::vector<SymbolTable>& symbols,
                                  const std::vector<double>& orders,
                                  const std::vector<double>& eps = {}) {
  if (symbols.size() != orders.size())
    throw std::invalid_argument("asymptotic_sum: orders size mismatch");
  for (size_t j = 1; j < orders.size(); ++j)
    if (!(orders[j] < orders[j - 1]))
      throw std::invalid_argument("asymptotic_sum: orders must strictly decrease");
  if (symbols.empty()) throw std::invalid_argument("asymptotic_sum: empty list");
  SymbolTable out = symbols[0];
  out.values.setZero();
  for (size_t j = 0; j < symbols.size(); ++j) {
    const double ej = j < eps.size() ? eps[j] : std::pow(2.0, -static_cast<double>(j));
    const SymbolTable& s = symbols[j];
    if (s.N != out.N || s.M != out.M) throw std::invalid_argument("asymptotic_sum: table mismatch");
    for (long c = 0; c < out.cols(); ++c) {
      const double w = chi_ramp(ej * angle_weight(out.p, box_index(c, out.N, out.p.d)));
      if (w != 0.0) out.values.col(c) += w * s.values.col(c);
    }
    out.xIndependent = out.xIndependent && s.xIndependent;
  }
  return out;
}

// Fitted symbol-class constants C(|alpha|, |beta|) =
// max |Delta^alpha D^{(beta)} a| / <xi>^{m - rho |alpha| + delta |beta|}.
inline MatrixXd symbol_class_fit(const SymbolTable& a, double m, double rho, double delta,
                                 int maxAlpha, int maxBeta) {
  if (a.N <= maxAlpha) throw std::invalid_argument("symbol_class_fit: window too small");
  const AdmissibleFamily fam = AdmissibleFamily::defaults(a.p.d, Flavor::L);
  const DerivativeBasis db = build_derivative_basis(fam, maxBeta);
  MatrixXd C = MatrixXd::Zero(maxAlpha + 1, maxBeta + 1);
  const int Nout = a.N - maxAlpha;
  for (const MultiOrder& beta : multi_orders_upto(a.p.d, maxBeta)) {
    const SymbolTable Dba = apply_derivative(db, beta, a);
    for (const MultiOrder& alpha : multi_orders_upto(a.p.d, maxAlpha)) {
      const SymbolTable t = restrict_window(difference_fast(Dba, alpha, Flavor::L), Nout);
      double best = 0.0;
      for (long c = 0; c < t.cols(); ++c) {
        const double w = angle_weight(a.p, box_index(c, Nout, a.p.d));
        const double denom = std::pow(w, m - rho * alpha.total() + delta * beta.total());
        best = std::max(best, t.values.col(c).cwiseAbs().maxCoeff() / denom);
      }
      C(alpha.total(), beta.total()) = std::max(C(alpha.total(), beta.total()), best);
    }
  }
  return C;
}

}  // namespace nhfc

#endif  // NHFC_CALCULUS_HPP
