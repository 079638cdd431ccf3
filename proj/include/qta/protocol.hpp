#pragma once

#include <vector>

#include "qta/linalg.hpp"
#include "qta/states.hpp"

namespace qta::protocol {

/// Raised when the requested fidelity target cannot be approached (the
/// recursion does not increase fidelity for alpha <= 3).
class no_convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when every post-selected branch of a round has (numerically) zero
/// probability.
class postselection_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Modular-addition gate |a>|b> -> |a>|(b+a) mod N> with |a> the source
/// (control) and |b> the target. A permutation matrix of dimension N^2.
struct XorGate {
  int modulus = 0;
  linalg::ComplexMatrix matrix;
};

XorGate xor_gate(int n);

/// The two-sided XOR on four subsystems ordered (A1, B1, A2, B2):
/// A1 controls A2 and B1 controls B2, i.e.
/// |a,b,c,d> -> |a, b, (c+a) mod n, (d+b) mod n>. Dimension n^4.
linalg::ComplexMatrix bilateral_xor(int n);

struct RoundOutcome {
  double p_success = 0.0;
  linalg::DensityMatrix post_state;
};

/// One post-selection round on source x target pairs of [n,n] states:
///   (i)  both parties apply the XOR gate, source member controlling the
///        target member (subsystem order A1,B1,A2,B2);
///   (ii) the target pair (A2,B2) is measured in the computational basis;
///        the equal-outcome branches are kept, the target pair discarded,
///        and the retained source pair renormalized.
/// p_success is the total probability of equal outcomes. Throws
/// postselection_error when that probability is below 1e-12.
RoundOutcome activation_round(const linalg::DensityMatrix& source,
                              const linalg::DensityMatrix& target);

/// Closed-form success probability (2F + (1-F)(5-alpha)) / 7 of one round
/// with source rho_free(F) and target sigma_alpha(alpha).
double predicted_probability(states::FidelityParam f, states::AlphaParam alpha);

/// Closed-form post-selected fidelity 2F / (2F + (1-F)(5-alpha)). Exceeds F
/// exactly when alpha > 3, equals F at alpha = 3, and equals 1 at alpha = 5.
double predicted_fidelity(states::FidelityParam f, states::AlphaParam alpha);

struct IterationRow {
  int n = 0;               // round index
  double fidelity = 0.0;   // F_n, source fidelity after n successful rounds
  double p_round = 0.0;    // success probability of the round leaving F_n
  double cumulative_p = 1.0;  // probability of reaching F_n (product of
                              // p_round over rounds k < n)
};

enum class IterationMode { closed_form, full_simulation };

struct IterationResult {
  std::vector<IterationRow> rows;
  bool converged = false;
};

/// Repeats the round from rho_free(f0) with a fresh sigma_alpha(alpha)
/// target each time, until the source fidelity reaches f_target or
/// max_rounds rounds have run. In full_simulation mode every round is the
/// exact simulation (activation_round, feeding the post state forward) and
/// is checked against the closed forms to 1e-10; the final row's p_round is
/// the predicted probability of the round that was not taken.
IterationResult iterate(states::FidelityParam f0, states::AlphaParam alpha,
                        double f_target, int max_rounds, IterationMode mode);

/// Smallest number of successful rounds taking fidelity f0 to >= f_target,
/// from the multiplicative recursion of the odds ratio r = F/(1-F):
/// ceil(ln(r_target/r_0) / ln(2/(5-alpha))). Requires alpha > 3; at
/// alpha = 5 a single round reaches fidelity 1.
int min_rounds(states::FidelityParam f0, states::AlphaParam alpha,
               double f_target);

}  // namespace qta::protocol
