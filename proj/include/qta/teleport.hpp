#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qta/linalg.hpp"
#include "qta/protocol.hpp"
#include "qta/states.hpp"

namespace qta::teleport {

/// Generalized Bell basis |Phi_mn> = (1/sqrt(d)) sum_k w^{kn} |k>|k+m mod d>
/// with w = exp(2 pi i / d); vectors are indexed m*d + n and Phi_00 is the
/// maximally entangled pair.
struct BellBasis {
  int d = 0;
  std::vector<linalg::StateVector> vectors;
};

BellBasis bell_basis(int d);

/// Generalized Pauli operators: shift X|k> = |k+1 mod d> and phase
/// Z|k> = w^k |k>.
linalg::ComplexMatrix shift_gate(int d);
linalg::ComplexMatrix phase_gate(int d);

/// The standard teleportation protocol through the bipartite channel state:
/// Alice measures (input x her half) in the generalized Bell basis; for
/// outcome (m,n) Bob applies Z^n X^{-m}, which restores the input exactly
/// when the channel is the maximally entangled pair. Returns the
/// outcome-averaged output state of Bob's particle (trace 1).
linalg::DensityMatrix teleport_channel(const linalg::DensityMatrix& channel,
                                       const linalg::StateVector& psi);

/// Haar-random pure states of one d-level system, drawn by normalizing
/// vectors of independent standard complex Gaussians. The Gaussian stream
/// is mt19937_64 mapped through an explicit Box-Muller transform, so a seed
/// pins the sample sequence bit-for-bit.
class PureStateSampler {
 public:
  PureStateSampler(int d, std::uint64_t seed);
  linalg::StateVector next();

 private:
  double uniform();  // (0,1]
  int d_;
  std::mt19937_64 rng_;
};

struct TransferFidelityEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int n_samples = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo average of <psi|Lambda(psi)|psi> over Haar-random pure
/// inputs, with the standard error of the mean. Deterministic per seed.
TransferFidelityEstimate average_transfer_fidelity(
    const linalg::DensityMatrix& channel, int n_samples, std::uint64_t seed);

struct ConvergenceRow {
  int n = 0;
  double fidelity = 0.0;  // source fidelity F_n after n rounds
  TransferFidelityEstimate estimate;
};

/// Transfer fidelity along the post-selection recursion: row n teleports
/// through the source state of fidelity F_n and estimates with seed + n,
/// so row 0 reproduces average_transfer_fidelity at the base seed.
/// Requires alpha > 3 (the recursion must increase fidelity).
std::vector<ConvergenceRow> fidelity_convergence_table(
    states::AlphaParam alpha, states::FidelityParam f0, int rounds,
    int n_samples, std::uint64_t seed);

}  // namespace qta::teleport
