#include "qta/protocol.hpp"

#include <cmath>

namespace qta::protocol {

using linalg::ComplexMatrix;
using linalg::DensityMatrix;

namespace {

constexpr double kPostselectionTol = 1e-12;
constexpr double kSimulationTol = 1e-10;

double fidelity_of(const DensityMatrix& rho) {
  return linalg::overlap(states::max_entangled(3), rho);
}

}  // namespace

XorGate xor_gate(int n) {
  if (n < 2) throw std::invalid_argument("XOR modulus must be >= 2");
  ComplexMatrix u(n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      u(a * n + (a + b) % n, a * n + b) = 1.0;
    }
  }
  return XorGate{n, std::move(u)};
}

ComplexMatrix bilateral_xor(int n) {
  if (n < 2) throw std::invalid_argument("XOR modulus must be >= 2");
  const int dim = n * n * n * n;
  ComplexMatrix u(dim);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          const int col = ((a * n + b) * n + c) * n + d;
          const int row = ((a * n + b) * n + (c + a) % n) * n + (d + b) % n;
          u(row, col) = 1.0;
        }
      }
    }
  }
  return u;
}

RoundOutcome activation_round(const linalg::DensityMatrix& source,
                              const linalg::DensityMatrix& target) {
  if (source.dims().size() != 2 || source.dims()[0] != source.dims()[1] ||
      source.dims() != target.dims()) {
    throw std::invalid_argument(
        "activation round requires two [n,n] states of equal dimension");
  }
  const int n = source.dims()[0];
  const std::vector<int> joint_dims{n, n, n, n};

  // Subsystem order (A1, B1, A2, B2); source pair first.
  ComplexMatrix joint = linalg::kron(source.matrix(), target.matrix());
  const ComplexMatrix u = bilateral_xor(n);
  ComplexMatrix evolved = u * joint * u.adjoint();

  // Keep only the branches where the computational-basis outcomes on the
  // target pair (A2, B2) agree: sum_m P_mm rho P_mm. Row and column must
  // both have A2 = B2 = m for the same m.
  const int dim = evolved.dim();
  ComplexMatrix kept(dim);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int a2 = 0; a2 < n; ++a2) {
        for (int b2 = 0; b2 < n; ++b2) {
          for (int m = 0; m < n; ++m) {
            const int row = ((a * n + b) * n + m) * n + m;
            const int col = ((a2 * n + b2) * n + m) * n + m;
            kept(row, col) = evolved(row, col);
          }
        }
      }
    }
  }

  ComplexMatrix reduced = linalg::partial_trace_raw(kept, joint_dims, {0, 1});
  const double p_success = reduced.trace().real();
  if (p_success < kPostselectionTol) {
    throw postselection_error(
        "equal-outcome post-selection has zero probability");
  }
  reduced *= Complex{1.0 / p_success, 0.0};
  return RoundOutcome{p_success, DensityMatrix(std::move(reduced), {n, n})};
}

double predicted_probability(states::FidelityParam f, states::AlphaParam alpha) {
  const double fv = f.value();
  return (2.0 * fv + (1.0 - fv) * (5.0 - alpha.value())) / 7.0;
}

double predicted_fidelity(states::FidelityParam f, states::AlphaParam alpha) {
  const double fv = f.value();
  const double denom = 2.0 * fv + (1.0 - fv) * (5.0 - alpha.value());
  return 2.0 * fv / denom;
}

IterationResult iterate(states::FidelityParam f0, states::AlphaParam alpha,
                        double f_target, int max_rounds, IterationMode mode) {
  if (!(f_target > 0.0 && f_target < 1.0)) {
    throw std::invalid_argument("target fidelity must lie in (0,1)");
  }
  if (max_rounds < 0) throw std::invalid_argument("max_rounds must be >= 0");

  const DensityMatrix target_state = states::sigma_alpha(alpha);

  IterationResult result;
  double fidelity = f0.value();
  double cumulative = 1.0;
  DensityMatrix state = states::rho_free(f0);

  for (int n = 0;; ++n) {
    IterationRow row;
    row.n = n;
    row.fidelity = fidelity;
    row.cumulative_p = cumulative;
    row.p_round = fidelity < 1.0
                      ? predicted_probability(states::FidelityParam(fidelity), alpha)
                      : 2.0 / 7.0;  // alpha = 5 drives the fidelity to exactly 1

    if (fidelity >= f_target) {
      result.rows.push_back(row);
      result.converged = true;
      break;
    }
    if (n == max_rounds) {
      result.rows.push_back(row);
      break;
    }

    double next_fidelity;
    if (mode == IterationMode::full_simulation) {
      RoundOutcome outcome = activation_round(state, target_state);
      next_fidelity = fidelity_of(outcome.post_state);
      row.p_round = outcome.p_success;
      const double p_closed =
          predicted_probability(states::FidelityParam(fidelity), alpha);
      const double f_closed =
          predicted_fidelity(states::FidelityParam(fidelity), alpha);
      if (std::abs(outcome.p_success - p_closed) > kSimulationTol ||
          std::abs(next_fidelity - f_closed) > kSimulationTol) {
        throw invariant_error(
            "simulated round disagrees with the closed-form recursion");
      }
      state = outcome.post_state;
    } else {
      next_fidelity = predicted_fidelity(states::FidelityParam(fidelity), alpha);
    }

    result.rows.push_back(row);
    cumulative *= row.p_round;
    fidelity = next_fidelity;
  }
  return result;
}

int min_rounds(states::FidelityParam f0, states::AlphaParam alpha,
               double f_target) {
  if (alpha.value() <= 3.0) {
    throw no_convergence_error(
        "the recursion does not increase fidelity for alpha <= 3");
  }
  if (!(f_target > 0.0 && f_target < 1.0)) {
    throw std::invalid_argument("target fidelity must lie in (0,1)");
  }
  if (f_target <= f0.value()) return 0;
  if (alpha.value() == 5.0) return 1;

  const double r0 = f0.value() / (1.0 - f0.value());
  const double rt = f_target / (1.0 - f_target);
  const double ratio = 2.0 / (5.0 - alpha.value());
  // Nudge below the exact quotient so boundary cases round to the exact
  // number of rounds despite floating-point noise in the logs.
  const double rounds = std::log(rt / r0) / std::log(ratio);
  return static_cast<int>(std::ceil(rounds - 1e-9));
}

}  // namespace qta::protocol
