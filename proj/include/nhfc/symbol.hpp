#ifndef NHFC_SYMBOL_HPP
#define NHFC_SYMBOL_HPP

#include "nhfc/grid.hpp"

namespace nhfc {

// a(x, xi) tabulated over grid x frequency window; rows follow the grid,
// columns the frequency box.
struct SymbolTable {
  ModelProblem p;
  int M = 0;
  int N = 0;
  Flavor flavor = Flavor::L;
  bool xIndependent = false;
  MatrixXcd values;

  long rows() const { return values.rows(); }
  long cols() const { return values.cols(); }
  Complex at(long g, const EigenIndex& xi) const { return values(g, box_pos(xi, N)); }
};

inline SymbolTable make_symbol(const ModelProblem& p, int M, int N, Flavor flavor = Flavor::L) {
  SymbolTable a;
  a.p = p;
  a.M = M;
  a.N = N;
  a.flavor = flavor;
  a.values = MatrixXcd::Zero(grid_size(M, p.d), box_size(N, p.d));
  return a;
}

inline SymbolTable tabulate_symbol(
    const ModelProblem& p, int M, int N,
    const std::function<Complex(const std::array<double, 3>&, const EigenIndex&)>& fn,
    Flavor flavor = Flavor::L) {
  SymbolTable a = make_symbol(p, M, N, flavor);
  for (long c = 0; c < a.cols(); ++c) {
    const EigenIndex xi = box_index(c, N, p.d);
    for (long g = 0; g < a.rows(); ++g) a.values(g, c) = fn(grid_point(g, M, p.d), xi);
  }
  return a;
}

inline SymbolTable make_multiplier(const ModelProblem& p, int M, int N,
                                   const std::function<Complex(const EigenIndex&)>& sigma,
                                   Flavor flavor = Flavor::L) {
  SymbolTable a = make_symbol(p, M, N, flavor);
  for (long c = 0; c < a.cols(); ++c) {
    const Complex s = sigma(box_index(c, N, p.d));
    a.values.col(c).setConstant(s);
  }
  a.xIndependent = true;
  return a;
}

// Restriction to a smaller frequency window.
inline SymbolTable restrict_window(const SymbolTable& a, int Nnew) {
  if (Nnew > a.N) throw std::invalid_argument("restrict_window: cannot grow window");
  if (Nnew == a.N) return a;
  SymbolTable out = make_symbol(a.p, a.M, Nnew, a.flavor);
  out.xIndependent = a.xIndependent;
  for (long c = 0; c < out.cols(); ++c)
    out.values.col(c) = a.values.col(box_pos(box_index(c, Nnew, a.p.d), a.N));
  return out;
}

inline SymbolTable conj_symbol(const SymbolTable& a, Flavor flavor) {
  SymbolTable out = a;
  out.values = a.values.conjugate();
  out.flavor = flavor;
  return out;
}

// ---- spectral differentiation in x along one axis ----
// Matrices D_b realize (d/dx)^b on 1-periodic grid samples via the discrete
// Fourier basis; the Nyquist mode is dropped so real data stays real.

inline const MatrixXcd& derivative_matrix(int M, int order) {
  static std::map<std::pair<int, int>, std::unique_ptr<MatrixXcd>> cache;
  const auto key = std::make_pair(M, order);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  MatrixXcd F(M, M), Fi(M, M);
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < M; ++c) {
      const double ph = 2.0 * kPi * r * c / M;
      F(r, c) = std::exp(Complex(0.0, -ph)) / static_cast<double>(M);
      Fi(r, c) = std::exp(Complex(0.0, ph));
    }
  VectorXcd mult(M);
  for (int r = 0; r < M; ++r) {
    int k = r <= M / 2 ? r : r - M;
    if (2 * std::abs(k) == M) k = 0;  // drop Nyquist
    mult(r) = std::pow(Complex(0.0, 2.0 * kPi * k), order);
  }
  auto D = std::make_unique<MatrixXcd>(Fi * mult.asDiagonal() * F);
  it = cache.emplace(key, std::move(D)).first;
  return *it->second;
}

// Apply a grid-axis matrix T (M x M) along axis `axis` of every column.
inline void apply_along_axis(const MatrixXcd& T, SymbolTable& a, int axis) {
  const int M = a.M, d = a.p.d;
  if (d == 1) {
    a.values = T * a.values;
    return;
  }
  long stride = 1;
  for (int j = d - 1; j > axis; --j) stride *= M;
  const long G = a.rows();
  VectorXcd line(M), res(M);
  for (long c = 0; c < a.cols(); ++c) {
    for (long base = 0; base < G; ++base) {
      const long coord = (base / stride) % M;
      if (coord != 0) continue;
      for (int i = 0; i < M; ++i) line(i) = a.values(base + i * stride, c);
      res = T * line;
      for (int i = 0; i < M; ++i) a.values(base + i * stride, c) = res(i);
    }
  }
}

}  // namespace nhfc

#endif  // NHFC_SYMBOL_HPP
