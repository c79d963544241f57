#ifndef NHFC_ENSEMBLE_HPP
#define NHFC_ENSEMBLE_HPP

#include "nhfc/symbol.hpp"
#include "nhfc/transform.hpp"

namespace nhfc {

// Band-limited function with Gaussian coefficients scaled by <xi>^{-decay}.
inline GridFunction random_band(const ModelProblem& p, int M, int N, std::mt19937_64& rng,
                                double decay = 0.0) {
  SpectralCoeffs c = make_coeffs(p, N, Flavor::L);
  c.values = random_normal_vector(c.size(), rng);
  if (decay != 0.0)
    for (long w = 0; w < c.size(); ++w)
      c.values(w) *= std::pow(angle_weight(p, box_index(w, N, p.d)), -decay);
  return inverse_l(c, M);
}

// Smooth random symbol: a few x-harmonics times decaying random frequency
// profiles; 1-periodic in x and smooth in the window.
inline SymbolTable random_symbol(const ModelProblem& p, int M, int N, std::mt19937_64& rng,
                                 double decay = 1.0, int xHarmonics = 2) {
  std::normal_distribution<double> g(0.0, 1.0);
  const long W = box_size(N, p.d);
  std::vector<VectorXcd> prof;
  std::vector<int> harm;
  for (int j = -xHarmonics; j <= xHarmonics; ++j) {
    harm.push_back(j);
    VectorXcd ps(W);
    for (long w = 0; w < W; ++w)
      ps(w) = Complex(g(rng), g(rng)) *
              std::pow(angle_weight(p, box_index(w, N, p.d)), -decay);
    prof.push_back(ps);
  }
  SymbolTable a = make_symbol(p, M, N, Flavor::L);
  for (long gp = 0; gp < a.rows(); ++gp) {
    const auto x = grid_point(gp, M, p.d);
    for (size_t t = 0; t < harm.size(); ++t) {
      const Complex e = std::exp(Complex(0.0, 2.0 * kPi * harm[t] * x[0]));
      a.values.row(gp) += e * prof[t].transpose();
    }
  }
  return a;
}

}  // namespace nhfc

#endif  // NHFC_ENSEMBLE_HPP
