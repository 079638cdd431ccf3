#pragma once

#include "qta/linalg.hpp"

namespace qta::states {

/// Source-state fidelity parameter, restricted to the open interval (0,1).
class FidelityParam {
 public:
  explicit FidelityParam(double f);
  double value() const { return value_; }

 private:
  double value_;
};

/// Mixing parameter of the two-qutrit family sigma_alpha, in [2,5].
class AlphaParam {
 public:
  explicit AlphaParam(double a);
  double value() const { return value_; }

 private:
  double value_;
};

/// Maximally entangled pair (1/sqrt(d)) * sum_i |i>|i>, factorization [d,d].
linalg::StateVector max_entangled(int d);

/// Separable qutrit-pair mixtures, diagonal in the product basis:
///   sigma_plus  = (1/3)(|01><01| + |12><12| + |20><20|)
///   sigma_minus = (1/3)(|10><10| + |21><21| + |02><02|)
linalg::DensityMatrix sigma_plus();
linalg::DensityMatrix sigma_minus();

/// F |Psi+><Psi+| + (1-F) sigma_plus on [3,3]. Its overlap with the
/// maximally entangled pair equals F exactly.
linalg::DensityMatrix rho_free(FidelityParam f);

/// (2/7)|Psi+><Psi+| + (alpha/7) sigma_plus + ((5-alpha)/7) sigma_minus.
linalg::DensityMatrix sigma_alpha(AlphaParam alpha);

/// Equal-weight mixture (|Psi+><Psi+| + sigma_plus + sigma_minus) / 3.
/// Satisfies sigma_alpha(a) = (6/7) rho_one + ((a-2)/7) sigma_plus
///                          + ((3-a)/7) sigma_minus for every a.
linalg::DensityMatrix rho_one();

}  // namespace qta::states
