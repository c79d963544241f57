#ifndef NHFC_CORE_HPP
#define NHFC_CORE_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhfc {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Complex kI{0.0, 1.0};

// Frequency label: integer components, first d entries meaningful.
struct EigenIndex {
  std::array<int, 3> k{0, 0, 0};
  int d = 1;

  static EigenIndex make1(int k0) { return EigenIndex{{k0, 0, 0}, 1}; }
  static EigenIndex make(std::vector<int> comps) {
    EigenIndex xi;
    xi.d = static_cast<int>(comps.size());
    if (xi.d < 1 || xi.d > 3) throw std::invalid_argument("EigenIndex: d must be 1..3");
    for (int j = 0; j < xi.d; ++j) xi.k[j] = comps[static_cast<size_t>(j)];
    return xi;
  }
  int infNorm() const {
    int m = 0;
    for (int j = 0; j < d; ++j) m = std::max(m, std::abs(k[j]));
    return m;
  }
  bool operator==(const EigenIndex& o) const { return d == o.d && k == o.k; }
};

// ---- dense frequency boxes {|xi|_inf <= N}^d, lexicographic storage order ----
// Axis 0 is the outermost digit; this fixed order is the deterministic
// summation order used by all transforms and reductions.

inline long box_size(int N, int d) {
  long s = 1;
  for (int j = 0; j < d; ++j) s *= 2L * N + 1;
  return s;
}

inline EigenIndex box_index(long pos, int N, int d) {
  EigenIndex xi;
  xi.d = d;
  const long base = 2L * N + 1;
  for (int j = d - 1; j >= 0; --j) {
    xi.k[j] = static_cast<int>(pos % base) - N;
    pos /= base;
  }
  return xi;
}

inline bool in_box(const EigenIndex& xi, int N) { return xi.infNorm() <= N; }

inline long box_pos(const EigenIndex& xi, int N) {
  const long base = 2L * N + 1;
  long pos = 0;
  for (int j = 0; j < xi.d; ++j) {
    if (std::abs(xi.k[j]) > N) throw std::out_of_range("box_pos: index outside window");
    pos = pos * base + (xi.k[j] + N);
  }
  return pos;
}

// ---- uniform grids {k/M}^d, lexicographic storage order ----

inline long grid_size(int M, int d) {
  long s = 1;
  for (int j = 0; j < d; ++j) s *= M;
  return s;
}

inline std::array<int, 3> grid_coords(long pos, int M, int d) {
  std::array<int, 3> c{0, 0, 0};
  for (int j = d - 1; j >= 0; --j) {
    c[j] = static_cast<int>(pos % M);
    pos /= M;
  }
  return c;
}

inline std::array<double, 3> grid_point(long pos, int M, int d) {
  auto c = grid_coords(pos, M, d);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int j = 0; j < d; ++j) x[j] = static_cast<double>(c[j]) / M;
  return x;
}

inline long grid_pos(const std::array<int, 3>& c, int M, int d) {
  long pos = 0;
  for (int j = 0; j < d; ++j) pos = pos * M + c[j];
  return pos;
}

// ---- small combinatorics ----

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Stirling numbers of the second kind S(n,k).
inline double stirling2(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n == 0 && k == 0) return 1.0;
  if (k == 0) return 0.0;
  std::vector<std::vector<double>> S(static_cast<size_t>(n) + 1,
                                     std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
  S[0][0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j)
      S[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          j * S[static_cast<size_t>(i) - 1][static_cast<size_t>(j)] +
          S[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1];
  return S[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

// Smooth ramp: 0 for t <= 1/2, 1 for t >= 1, C^infinity in between.
inline double chi_ramp(double t) {
  if (t <= 0.5) return 0.0;
  if (t >= 1.0) return 1.0;
  const double s = 2.0 * t - 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Deterministic complex Gaussian vectors for ensembles.
inline VectorXcd random_normal_vector(long n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  VectorXcd v(n);
  for (long i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

// Largest singular value of A by power iteration on A^H A.
inline double operator_norm_power(const MatrixXcd& A, int iters, bool* converged = nullptr) {
  const long n = A.cols();
  if (n == 0 || A.rows() == 0) return 0.0;
  std::mt19937_64 rng(12345);
  VectorXcd v = random_normal_vector(n, rng);
  v.normalize();
  double prev = 0.0, cur = 0.0;
  for (int it = 0; it < iters; ++it) {
    VectorXcd w = A.adjoint() * (A * v);
    const double nw = w.norm();
    if (nw == 0.0) {
      if (converged) *converged = true;
      return 0.0;
    }
    cur = std::sqrt(nw);
    v = w / nw;
    if (it > 2 && std::abs(cur - prev) <= 1e-9 * std::max(1.0, cur)) {
      if (converged) *converged = true;
      return cur;
    }
    prev = cur;
  }
  if (converged) *converged = std::abs(cur - prev) <= 1e-6 * std::max(1.0, cur);
  return cur;
}

}  // namespace nhfc

#endif  // NHFC_CORE_HPP
