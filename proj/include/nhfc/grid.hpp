#ifndef NHFC_GRID_HPP
#define NHFC_GRID_HPP

#include "nhfc/model_problem.hpp"

#include <functional>
#include <map>
#include <memory>

namespace nhfc {

enum class Flavor { L, Lstar };

inline const char* flavor_name(Flavor f) { return f == Flavor::L ? "L" : "Lstar"; }

// Complex samples on the uniform grid {k/M}^d, lexicographic order.
struct GridFunction {
  ModelProblem p;
  int M = 0;
  VectorXcd values;

  long size() const { return values.size(); }
};

// Truncated coefficient table over the frequency box |xi|_inf <= N.
struct SpectralCoeffs {
  ModelProblem p;
  int N = 0;
  Flavor flavor = Flavor::L;
  VectorXcd values;  // box order

  long size() const { return values.size(); }
  Complex at(const EigenIndex& xi) const { return values(box_pos(xi, N)); }
  Complex& at(const EigenIndex& xi) { return values(box_pos(xi, N)); }
};

inline GridFunction make_grid_function(const ModelProblem& p, int M) {
  GridFunction f;
  f.p = p;
  f.M = M;
  f.values = VectorXcd::Zero(grid_size(M, p.d));
  return f;
}

inline SpectralCoeffs make_coeffs(const ModelProblem& p, int N, Flavor flavor) {
  SpectralCoeffs c;
  c.p = p;
  c.N = N;
  c.flavor = flavor;
  c.values = VectorXcd::Zero(box_size(N, p.d));
  return c;
}

inline GridFunction sample(const ModelProblem& p, int M,
                           const std::function<Complex(const std::array<double, 3>&)>& fn) {
  GridFunction f = make_grid_function(p, M);
  const long G = f.size();
  for (long g = 0; g < G; ++g) f.values(g) = fn(grid_point(g, M, p.d));
  return f;
}

inline GridFunction sample_u(const ModelProblem& p, int M, const EigenIndex& xi) {
  return sample(p, M, [&](const std::array<double, 3>& x) { return eval_u(p, xi, x); });
}

inline GridFunction sample_v(const ModelProblem& p, int M, const EigenIndex& xi) {
  return sample(p, M, [&](const std::array<double, 3>& x) { return eval_v(p, xi, x); });
}

// Cached eigen-sample matrices for one (problem, M, N) triple:
// column c of U holds u_{xi(c)} on the grid, V likewise for v.
struct Basis {
  ModelProblem p;
  int M = 0;
  int N = 0;
  long G = 0;  // grid size M^d
  long W = 0;  // window size (2N+1)^d
  MatrixXcd U;
  MatrixXcd V;
  VectorXcd lambda;  // box order
  VectorXd weight;   // box order

  Basis(const ModelProblem& prob, int Mv, int Nv) : p(prob), M(Mv), N(Nv) {
    G = grid_size(M, p.d);
    W = box_size(N, p.d);
    U.resize(G, W);
    V.resize(G, W);
    lambda.resize(W);
    weight.resize(W);
    for (long c = 0; c < W; ++c) {
      const EigenIndex xi = box_index(c, N, p.d);
      lambda(c) = eigenvalue(p, xi);
      weight(c) = angle_weight(p, xi);
      for (long g = 0; g < G; ++g) {
        const auto x = grid_point(g, M, p.d);
        U(g, c) = eval_u(p, xi, x);
        V(g, c) = eval_v(p, xi, x);
      }
    }
  }
};

inline const Basis& basis(const ModelProblem& p, int M, int N) {
  static std::map<std::string, std::unique_ptr<Basis>> cache;
  std::ostringstream os;
  os << p.key() << "|" << M << "|" << N;
  const std::string key = os.str();
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<Basis>(p, M, N)).first;
  return *it->second;
}

// Grid quadrature: the mean of samples (trapezoid rule for 1-periodic data).
inline Complex quad_mean(const VectorXcd& v) { return v.sum() / static_cast<double>(v.size()); }

inline Complex inner_l2(const GridFunction& f, const GridFunction& g) {
  if (f.M != g.M || !(f.p == g.p)) throw std::invalid_argument("inner_l2: grid mismatch");
  return f.values.cwiseProduct(g.values.conjugate()).sum() / static_cast<double>(f.size());
}

inline double norm_l2(const GridFunction& f) {
  return std::sqrt(f.values.squaredNorm() / static_cast<double>(f.size()));
}

inline double norm_lp_grid(const GridFunction& f, double pexp) {
  if (pexp == std::numeric_limits<double>::infinity())
    return f.values.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (long g = 0; g < f.size(); ++g) s += std::pow(std::abs(f.values(g)), pexp);
  return std::pow(s / static_cast<double>(f.size()), 1.0 / pexp);
}

}  // namespace nhfc

#endif  // NHFC_GRID_HPP
