#ifndef NHFC_MODEL_PROBLEM_HPP
#define NHFC_MODEL_PROBLEM_HPP

#include "nhfc/core.hpp"

#include <algorithm>
#include <sstream>

namespace nhfc {

enum class ProblemKind { Oh1D, OhND };

// A model boundary value problem generating the biorthogonal calculus:
//   Oh1D: L = -i d/dx on (0,1) with h y(0) = y(1), order m = 1;
//   OhND: Laplacian on (0,1)^d with h_j-twisted periodicity per axis, m = 2.
struct ModelProblem {
  ProblemKind kind = ProblemKind::Oh1D;
  int d = 1;
  int m = 1;
  std::array<double, 3> h{1.0, 1.0, 1.0};

  static ModelProblem oh1d(double hval) {
    if (!(hval > 0.0)) throw std::invalid_argument("ModelProblem: h must be > 0");
    ModelProblem p;
    p.kind = ProblemKind::Oh1D;
    p.d = 1;
    p.m = 1;
    p.h = {hval, 1.0, 1.0};
    return p;
  }
  static ModelProblem ohnd(const std::vector<double>& hvec) {
    ModelProblem p;
    p.kind = ProblemKind::OhND;
    p.d = static_cast<int>(hvec.size());
    if (p.d < 1 || p.d > 3) throw std::invalid_argument("ModelProblem: d must be 1..3");
    p.m = 2;
    for (int j = 0; j < p.d; ++j) {
      if (!(hvec[static_cast<size_t>(j)] > 0.0))
        throw std::invalid_argument("ModelProblem: h must be > 0");
      p.h[static_cast<size_t>(j)] = hvec[static_cast<size_t>(j)];
    }
    return p;
  }

  bool operator==(const ModelProblem& o) const {
    return kind == o.kind && d == o.d && m == o.m && h == o.h;
  }

  std::string key() const {
    std::ostringstream os;
    os << (kind == ProblemKind::Oh1D ? "Oh1D" : "OhND") << ":" << d;
    for (int j = 0; j < d; ++j) os << ":" << h[static_cast<size_t>(j)];
    return os.str();
  }
};

inline Complex eigenvalue(const ModelProblem& p, const EigenIndex& xi) {
  if (p.kind == ProblemKind::Oh1D) {
    return Complex(2.0 * kPi * xi.k[0], -std::log(p.h[0]));
  }
  Complex s = 0.0;
  for (int j = 0; j < p.d; ++j) {
    const Complex z(std::log(p.h[static_cast<size_t>(j)]), 2.0 * kPi * xi.k[static_cast<size_t>(j)]);
    s += z * z;
  }
  return s;
}

inline double angle_weight(const ModelProblem& p, const EigenIndex& xi) {
  const Complex lam = eigenvalue(p, xi);
  return std::pow(1.0 + std::norm(lam), 1.0 / (2.0 * p.m));
}

inline Complex eval_u(const ModelProblem& p, const EigenIndex& xi, const std::array<double, 3>& x) {
  double mag = 1.0;
  double phase = 0.0;
  for (int j = 0; j < p.d; ++j) {
    mag *= std::pow(p.h[static_cast<size_t>(j)], x[static_cast<size_t>(j)]);
    phase += x[static_cast<size_t>(j)] * xi.k[static_cast<size_t>(j)];
  }
  return mag * std::exp(Complex(0.0, 2.0 * kPi * phase));
}

inline Complex eval_v(const ModelProblem& p, const EigenIndex& xi, const std::array<double, 3>& x) {
  double mag = 1.0;
  double phase = 0.0;
  for (int j = 0; j < p.d; ++j) {
    mag *= std::pow(p.h[static_cast<size_t>(j)], -x[static_cast<size_t>(j)]);
    phase += x[static_cast<size_t>(j)] * xi.k[static_cast<size_t>(j)];
  }
  return mag * std::exp(Complex(0.0, 2.0 * kPi * phase));
}

// inf over x and xi of |u_xi(x)|; strictly positive.
inline double wz_bound(const ModelProblem& p) {
  double b = 1.0;
  for (int j = 0; j < p.d; ++j) b *= std::min(1.0, p.h[static_cast<size_t>(j)]);
  return b;
}

inline double sup_norm_u(const ModelProblem& p) {
  double b = 1.0;
  for (int j = 0; j < p.d; ++j) b *= std::max(1.0, p.h[static_cast<size_t>(j)]);
  return b;
}

inline double sup_norm_v(const ModelProblem& p) {
  double b = 1.0;
  for (int j = 0; j < p.d; ++j) b *= std::max(1.0, 1.0 / p.h[static_cast<size_t>(j)]);
  return b;
}

inline double s0_default(const ModelProblem& p) { return p.d == 1 ? 2.0 : p.d + 1.0; }

struct EigenData {
  Complex lambda;
  double weight;
  double wz_lower;
  double mu0;
  double s0;
};

inline EigenData eigen_data(const ModelProblem& p, const EigenIndex& xi) {
  EigenData e;
  e.lambda = eigenvalue(p, xi);
  e.weight = angle_weight(p, xi);
  e.wz_lower = wz_bound(p);
  e.mu0 = 0.0;
  e.s0 = s0_default(p);
  return e;
}

// All indices with |xi|_inf <= N sorted by (|lambda|, lexicographic components).
inline std::vector<EigenIndex> index_window(const ModelProblem& p, int N) {
  const long W = box_size(N, p.d);
  std::vector<EigenIndex> out;
  out.reserve(static_cast<size_t>(W));
  for (long c = 0; c < W; ++c) out.push_back(box_index(c, N, p.d));
  std::stable_sort(out.begin(), out.end(), [&](const EigenIndex& a, const EigenIndex& b) {
    const double la = std::abs(eigenvalue(p, a));
    const double lb = std::abs(eigenvalue(p, b));
    if (la != lb) return la < lb;
    for (int j = 0; j < p.d; ++j)
      if (a.k[static_cast<size_t>(j)] != b.k[static_cast<size_t>(j)])
        return a.k[static_cast<size_t>(j)] < b.k[static_cast<size_t>(j)];
    return false;
  });
  return out;
}

}  // namespace nhfc

#endif  // NHFC_MODEL_PROBLEM_HPP
