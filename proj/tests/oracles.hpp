// Independent numerical oracles used only by the tests: quadrature and
// finite-difference rules that share no code with the library paths they
// check.
#ifndef NHFC_TESTS_ORACLES_HPP
#define NHFC_TESTS_ORACLES_HPP

#include "nhfc/core.hpp"

#include <functional>

namespace oracles {

using nhfc::Complex;

// Composite Simpson quadrature on [a, b] with n subintervals (n even).
inline Complex simpson(const std::function<Complex(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  Complex s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * (h / 3.0);
}

// Eighth-order central first derivative.
inline Complex diff1(const std::function<Complex(double)>& f, double x, double h = 1e-2) {
  static const double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  Complex s = 0.0;
  for (int k = 1; k <= 4; ++k) s += c[k - 1] * (f(x + k * h) - f(x - k * h));
  return s / h;
}

// Eighth-order central second derivative.
inline Complex diff2(const std::function<Complex(double)>& f, double x, double h = 1e-2) {
  static const double c0 = -205.0 / 72.0;
  static const double c[4] = {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  Complex s = c0 * f(x);
  for (int k = 1; k <= 4; ++k) s += c[k - 1] * (f(x + k * h) + f(x - k * h));
  return s / (h * h);
}

}  // namespace oracles

#endif  // NHFC_TESTS_ORACLES_HPP
