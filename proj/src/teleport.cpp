#include "qta/teleport.hpp"

#include <cmath>
#include <numbers>

namespace qta::teleport {

using linalg::ComplexMatrix;
using linalg::DensityMatrix;
using linalg::StateVector;

namespace {

Complex root_of_unity(int d, int power) {
  const double angle = 2.0 * std::numbers::pi * power / d;
  return Complex{std::cos(angle), std::sin(angle)};
}

ComplexMatrix matrix_power(const ComplexMatrix& m, int exponent) {
  ComplexMatrix out = ComplexMatrix::identity(m.dim());
  for (int i = 0; i < exponent; ++i) out = out * m;
  return out;
}

// F |Psi+><Psi+| + (1-F) sigma_plus for F in the closed interval [0,1];
// the recursion can land exactly on F = 1, outside rho_free's open domain.
DensityMatrix fidelity_family_state(double fidelity) {
  ComplexMatrix m =
      Complex{fidelity, 0.0} * linalg::projector(states::max_entangled(3)) +
      Complex{1.0 - fidelity, 0.0} * states::sigma_plus().matrix();
  return DensityMatrix(std::move(m), {3, 3});
}

}  // namespace

BellBasis bell_basis(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  BellBasis basis;
  basis.d = d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      std::vector<Complex> amps(static_cast<std::size_t>(d) * d,
                                Complex{0.0, 0.0});
      for (int k = 0; k < d; ++k) {
        amps[k * d + (k + m) % d] = amp * root_of_unity(d, k * n);
      }
      basis.vectors.emplace_back(std::move(amps), std::vector<int>{d, d});
    }
  }
  return basis;
}

ComplexMatrix shift_gate(int d) {
  ComplexMatrix x(d);
  for (int k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
  return x;
}

ComplexMatrix phase_gate(int d) {
  ComplexMatrix z(d);
  for (int k = 0; k < d; ++k) z(k, k) = root_of_unity(d, k);
  return z;
}

DensityMatrix teleport_channel(const linalg::DensityMatrix& channel,
                               const linalg::StateVector& psi) {
  if (channel.dims().size() != 2 || channel.dims()[0] != channel.dims()[1]) {
    throw std::invalid_argument("channel must be a [d,d] state");
  }
  const int d = channel.dims()[0];
  if (psi.dim() != d) {
    throw std::invalid_argument("input state dimension does not match channel");
  }

  const BellBasis basis = bell_basis(d);
  const ComplexMatrix x = shift_gate(d);
  const ComplexMatrix z = phase_gate(d);

  // Joint state on (C, A, B) is |psi><psi| x channel; Bell projections act
  // on (C, A). With x = (c,a) a joint index, the unnormalized branch state
  // on B is M[b][b'] = sum conj(phi[x]) psi_c conj(psi_c')
  //                        channel[(a,b)][(a',b')] phi[x'].
  ComplexMatrix output(d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const StateVector& phi = basis.vectors[m * d + n];
      std::vector<std::pair<int, Complex>> support;
      for (int idx = 0; idx < phi.dim(); ++idx) {
        const Complex a = phi.amplitudes()[idx];
        if (a != Complex{0.0, 0.0}) support.emplace_back(idx, a);
      }

      ComplexMatrix branch(d);
      for (const auto& [x1, a1] : support) {
        const int c = x1 / d;
        const int a = x1 % d;
        const Complex w1 = std::conj(a1) * psi.amplitudes()[c];
        for (const auto& [x2, a2] : support) {
          const int c2 = x2 / d;
          const int a2sub = x2 % d;
          const Complex w = w1 * a2 * std::conj(psi.amplitudes()[c2]);
          for (int b = 0; b < d; ++b) {
            for (int b2 = 0; b2 < d; ++b2) {
              branch(b, b2) +=
                  w * channel.matrix()(a * d + b, a2sub * d + b2);
            }
          }
        }
      }

      const ComplexMatrix correction = matrix_power(z, n) * matrix_power(x, (d - m) % d);
      output += correction * branch * correction.adjoint();
    }
  }
  return DensityMatrix(std::move(output), {d});
}

PureStateSampler::PureStateSampler(int d, std::uint64_t seed)
    : d_(d), rng_(seed) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
}

double PureStateSampler::uniform() {
  // 53-bit mantissa, shifted into (0,1] so the log below is always finite.
  return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
}

StateVector PureStateSampler::next() {
  std::vector<Complex> amps(d_);
  while (true) {
    double norm_sq = 0.0;
    for (int k = 0; k < d_; ++k) {
      // Box-Muller: one uniform pair gives both quadratures.
      const double radius = std::sqrt(-2.0 * std::log(uniform()));
      const double angle = 2.0 * std::numbers::pi * uniform();
      amps[k] = Complex{radius * std::cos(angle), radius * std::sin(angle)};
      norm_sq += std::norm(amps[k]);
    }
    if (norm_sq > 1e-12) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (Complex& a : amps) a *= inv;
      return StateVector(std::move(amps), {d_});
    }
  }
}

TransferFidelityEstimate average_transfer_fidelity(
    const linalg::DensityMatrix& channel, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  const int d = channel.dims()[0];
  PureStateSampler sampler(d, seed);

  // Welford running mean/variance.
  double mean = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const StateVector psi = sampler.next();
    const double f = linalg::overlap(psi, teleport_channel(channel, psi));
    const double delta = f - mean;
    mean += delta / (i + 1);
    m2 += delta * (f - mean);
  }
  const double std_error =
      n_samples > 1 ? std::sqrt(m2 / (n_samples - 1) / n_samples) : 0.0;
  return TransferFidelityEstimate{mean, std_error, n_samples, seed};
}

std::vector<ConvergenceRow> fidelity_convergence_table(
    states::AlphaParam alpha, states::FidelityParam f0, int rounds,
    int n_samples, std::uint64_t seed) {
  if (alpha.value() <= 3.0) {
    throw protocol::no_convergence_error(
        "the recursion does not increase fidelity for alpha <= 3");
  }
  if (rounds < 0) throw std::invalid_argument("rounds must be >= 0");

  std::vector<ConvergenceRow> table;
  double fidelity = f0.value();
  for (int n = 0; n <= rounds; ++n) {
    ConvergenceRow row;
    row.n = n;
    row.fidelity = fidelity;
    row.estimate = average_transfer_fidelity(fidelity_family_state(fidelity),
                                             n_samples, seed + n);
    table.push_back(row);
    if (fidelity < 1.0) {
      fidelity = protocol::predicted_fidelity(states::FidelityParam(fidelity),
                                              alpha);
    }
  }
  return table;
}

}  // namespace qta::teleport
