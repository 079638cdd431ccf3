#pragma once

#include <string>
#include <vector>

#include "qta/linalg.hpp"
#include "qta/states.hpp"

namespace qta::analysis {

/// Entanglement regions of the sigma_alpha family:
///   Separable      for 2 <= alpha <= 3
///   BoundEntangled for 3 <  alpha <= 4  (positive partial transpose, yet
///                                        inseparable by the activation effect)
///   FreeEntangled  for 4 <  alpha <= 5  (negative partial transpose)
enum class EntanglementClass { Separable, BoundEntangled, FreeEntangled };

const char* to_string(EntanglementClass c);

struct PptReport {
  double min_eigenvalue = 0.0;
  bool is_ppt = false;                // min_eigenvalue >= -linalg::kPsdTol
  std::vector<double> spectrum;       // partial-transpose spectrum, ascending
};

/// Spectrum of the partial transpose (second subsystem) of a bipartite state.
PptReport ppt_report(const linalg::DensityMatrix& rho);

/// Region lookup for sigma_alpha, cross-checked against the numerical PPT
/// test: FreeEntangled must coincide with a negative partial transpose.
/// The Separable/BoundEntangled split cannot be decided by PPT alone; it is
/// the known boundary of the family.
EntanglementClass classify_sigma_alpha(states::AlphaParam alpha);

/// Projects both qutrits of a [3,3] state onto span{|0>,|1>}, renormalizes,
/// and returns the minimum partial-transpose eigenvalue of the resulting
/// two-qubit state. A negative value certifies free (distillable)
/// entanglement of the input. Throws std::invalid_argument when the
/// projected trace is below 1e-12.
double projection_witness(const linalg::DensityMatrix& rho);

/// Max-entry norm of sigma_alpha(a) - [(6/7) rho_one + ((a-2)/7) sigma_plus
/// + ((3-a)/7) sigma_minus]; the identity holds for every a in [2,5].
double decomposition_residual(states::AlphaParam alpha);

/// Bisection root of a -> min PT eigenvalue of sigma_alpha(a) on [2,5],
/// resolved to the given half-width in alpha.
double sigma_alpha_ppt_boundary(double alpha_tol = 1e-9);

}  // namespace qta::analysis
