#include "qta/states.hpp"

#include <cmath>

namespace qta::states {

using linalg::ComplexMatrix;
using linalg::DensityMatrix;
using linalg::StateVector;

namespace {

// Basis ordering |ij> with i (Alice) major, j (Bob) minor: index = 3i + j.
int pair_index(int i, int j) { return 3 * i + j; }

ComplexMatrix psi_plus_projector() {
  return linalg::projector(max_entangled(3));
}

// (1/3) sum_i |i, i+shift mod 3><i, i+shift mod 3|
ComplexMatrix cyclic_shift_mixture(int shift) {
  ComplexMatrix m(9);
  for (int i = 0; i < 3; ++i) {
    const int idx = pair_index(i, (i + shift) % 3);
    m(idx, idx) = 1.0 / 3.0;
  }
  return m;
}

}  // namespace

FidelityParam::FidelityParam(double f) : value_(f) {
  if (!(f > 0.0 && f < 1.0)) {
    throw std::invalid_argument("fidelity must lie strictly between 0 and 1");
  }
}

AlphaParam::AlphaParam(double a) : value_(a) {
  if (!(a >= 2.0 && a <= 5.0)) {
    throw std::invalid_argument("alpha must lie in [2,5]");
  }
}

StateVector max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  std::vector<Complex> amps(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0});
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) amps[i * d + i] = amp;
  return StateVector(std::move(amps), {d, d});
}

DensityMatrix sigma_plus() {
  return DensityMatrix(cyclic_shift_mixture(1), {3, 3});
}

DensityMatrix sigma_minus() {
  return DensityMatrix(cyclic_shift_mixture(2), {3, 3});
}

DensityMatrix rho_free(FidelityParam f) {
  const double v = f.value();
  ComplexMatrix m = Complex{v, 0.0} * psi_plus_projector() +
                    Complex{1.0 - v, 0.0} * cyclic_shift_mixture(1);
  return DensityMatrix(std::move(m), {3, 3});
}

DensityMatrix sigma_alpha(AlphaParam alpha) {
  const double a = alpha.value();
  ComplexMatrix m = Complex{2.0 / 7.0, 0.0} * psi_plus_projector() +
                    Complex{a / 7.0, 0.0} * cyclic_shift_mixture(1) +
                    Complex{(5.0 - a) / 7.0, 0.0} * cyclic_shift_mixture(2);
  return DensityMatrix(std::move(m), {3, 3});
}

DensityMatrix rho_one() {
  const Complex third{1.0 / 3.0, 0.0};
  ComplexMatrix m = third * psi_plus_projector() +
                    third * cyclic_shift_mixture(1) +
                    third * cyclic_shift_mixture(2);
  return DensityMatrix(std::move(m), {3, 3});
}

}  // namespace qta::states
