#include <cmath>
#include <random>

#include "doctest.h"
#include "qta/linalg.hpp"
#include "qta/protocol.hpp"
#include "qta/states.hpp"

using namespace qta;
using linalg::ComplexMatrix;
using linalg::DensityMatrix;
using linalg::StateVector;

namespace {

ComplexMatrix random_matrix(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = Complex{dist(rng), dist(rng)};
    }
  }
  return m;
}

ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  ComplexMatrix m = random_matrix(dim, rng);
  ComplexMatrix h = m;
  h += m.adjoint();
  h *= Complex{0.5, 0.0};
  return h;
}

// Permutation matrix sending basis vector i to perm[i].
ComplexMatrix permutation_matrix(const std::vector<int>& perm) {
  ComplexMatrix p(static_cast<int>(perm.size()));
  for (int i = 0; i < p.dim(); ++i) p(perm[i], i) = 1.0;
  return p;
}

}  // namespace

TEST_CASE("kron of identities and projectors") {
  CHECK(linalg::max_abs_diff(
            linalg::kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
            ComplexMatrix::identity(6)) == 0.0);

  const ComplexMatrix left = ComplexMatrix::diagonal({1.0, 0.0});
  const ComplexMatrix expected = ComplexMatrix::diagonal({1.0, 1.0, 0.0, 0.0});
  CHECK(linalg::max_abs_diff(linalg::kron(left, ComplexMatrix::identity(2)),
                             expected) == 0.0);
}

TEST_CASE("kron of two XOR gates is a unitary of dimension 81") {
  const ComplexMatrix u = protocol::xor_gate(3).matrix;
  const ComplexMatrix big = linalg::kron(u, u);
  REQUIRE(big.dim() == 81);
  CHECK(linalg::max_abs_diff(big.adjoint() * big,
                             ComplexMatrix::identity(81)) <= 1e-12);
}

TEST_CASE("kron is multiplicative and associative on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix a = random_matrix(2, rng);
    const ComplexMatrix b = random_matrix(2, rng);
    const ComplexMatrix c = random_matrix(3, rng);
    const ComplexMatrix d = random_matrix(3, rng);
    CHECK(linalg::max_abs_diff(linalg::kron(a * b, c * d),
                               linalg::kron(a, c) * linalg::kron(b, d)) <=
          1e-12);
    CHECK(linalg::max_abs_diff(linalg::kron(linalg::kron(a, c), b),
                               linalg::kron(a, linalg::kron(c, b))) <= 1e-12);
  }
}

TEST_CASE("partial trace of the maximally entangled pair is maximally mixed") {
  const DensityMatrix pair(
      linalg::projector(states::max_entangled(3)), {3, 3});
  const DensityMatrix reduced = linalg::partial_trace(pair, {0});
  ComplexMatrix expected = ComplexMatrix::identity(3);
  expected *= Complex{1.0 / 3.0, 0.0};
  CHECK(linalg::max_abs_diff(reduced.matrix(), expected) <= 1e-15);
}

TEST_CASE("partial trace splits a product of two pairs") {
  const DensityMatrix rho = states::rho_free(states::FidelityParam(0.37));
  const DensityMatrix tau = states::sigma_alpha(states::AlphaParam(3.3));
  const ComplexMatrix joint = linalg::kron(rho.matrix(), tau.matrix());
  const std::vector<int> dims{3, 3, 3, 3};

  CHECK(linalg::max_abs_diff(linalg::partial_trace_raw(joint, dims, {0, 1}),
                             rho.matrix()) <= 1e-14);
  CHECK(linalg::max_abs_diff(linalg::partial_trace_raw(joint, dims, {2, 3}),
                             tau.matrix()) <= 1e-14);
}

TEST_CASE("partial trace of sigma_plus marginals") {
  ComplexMatrix expected = ComplexMatrix::identity(3);
  expected *= Complex{1.0 / 3.0, 0.0};
  CHECK(linalg::max_abs_diff(
            linalg::partial_trace(states::sigma_plus(), {0}).matrix(),
            expected) <= 1e-15);
  CHECK(linalg::max_abs_diff(
            linalg::partial_trace(states::sigma_plus(), {1}).matrix(),
            expected) <= 1e-15);
}

TEST_CASE("partial trace rejects bad keep sets") {
  const DensityMatrix rho = states::sigma_plus();
  CHECK_THROWS_AS(linalg::partial_trace(rho, {}), std::invalid_argument);
  CHECK_THROWS_AS(linalg::partial_trace(rho, {2}), std::invalid_argument);
  CHECK_THROWS_AS(linalg::partial_trace(rho, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(linalg::partial_trace(rho, {0, 0}), std::invalid_argument);
}

TEST_CASE("partial transpose is an involution and acts locally on products") {
  const DensityMatrix rho = states::sigma_alpha(states::AlphaParam(4.4));
  const ComplexMatrix pt = linalg::partial_transpose(rho, 1);
  CHECK(linalg::max_abs_diff(linalg::partial_transpose_raw(pt, 3, 3, 1),
                             rho.matrix()) == 0.0);

  std::mt19937_64 rng(11);
  const ComplexMatrix a = random_hermitian(2, rng);
  const ComplexMatrix b = random_hermitian(3, rng);
  ComplexMatrix bt(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) bt(i, j) = b(j, i);
  }
  CHECK(linalg::max_abs_diff(
            linalg::partial_transpose_raw(linalg::kron(a, b), 2, 3, 1),
            linalg::kron(a, bt)) == 0.0);
}

TEST_CASE("partial transpose preserves trace and Hermiticity") {
  const DensityMatrix rho = states::rho_free(states::FidelityParam(0.61));
  const ComplexMatrix pt = linalg::partial_transpose(rho, 1);
  CHECK(std::abs(pt.trace() - Complex{1.0, 0.0}) <= 1e-14);
  CHECK(linalg::hermiticity_defect(pt) <= 1e-14);

  // Transposing a factor does not change its reduced trace.
  CHECK(linalg::max_abs_diff(
            linalg::partial_trace_raw(pt, {3, 3}, {0}),
            linalg::partial_trace(rho, {0}).matrix()) <= 1e-14);
}

TEST_CASE("partial transpose of the two-qubit maximally entangled state") {
  const DensityMatrix bell(linalg::projector(states::max_entangled(2)), {2, 2});
  const std::vector<double> spectrum =
      linalg::eig_hermitian(linalg::partial_transpose(bell, 1));
  CHECK(std::abs(spectrum.front() + 0.5) <= 1e-12);
}

TEST_CASE("eig_hermitian on diagonal and symmetric flips") {
  const std::vector<double> diag =
      linalg::eig_hermitian(ComplexMatrix::diagonal({3.0, 1.0, 2.0}));
  CHECK(diag == std::vector<double>{1.0, 2.0, 3.0});

  ComplexMatrix flip(2);
  flip(0, 1) = 1.0;
  flip(1, 0) = 1.0;
  const std::vector<double> eigs = linalg::eig_hermitian(flip);
  CHECK(std::abs(eigs[0] + 1.0) <= 1e-14);
  CHECK(std::abs(eigs[1] - 1.0) <= 1e-14);
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(linalg::eig_hermitian(m), std::invalid_argument);
}

TEST_CASE("eigenvalue sum equals trace on random Hermitian matrices") {
  std::mt19937_64 rng(23);
  for (int dim : {2, 5, 9}) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const std::vector<double> eigs = linalg::eig_hermitian(h);
    double sum = 0.0;
    for (double e : eigs) sum += e;
    CHECK(std::abs(sum - h.trace().real()) <= 1e-10);
  }
}

TEST_CASE("eigenvalues are invariant under basis-permutation conjugation") {
  const ComplexMatrix pt =
      linalg::partial_transpose(states::sigma_alpha(states::AlphaParam(4.2)), 1);
  const ComplexMatrix p =
      linalg::kron(permutation_matrix({1, 2, 0}), permutation_matrix({2, 0, 1}));
  const ComplexMatrix conjugated = p * pt * p.adjoint();

  const std::vector<double> a = linalg::eig_hermitian(pt);
  const std::vector<double> b = linalg::eig_hermitian(conjugated);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i] - b[i]) <= 1e-10);
  }
}

TEST_CASE("overlap examples") {
  const StateVector psi = states::max_entangled(3);
  const DensityMatrix pure(linalg::projector(psi), {3, 3});
  CHECK(std::abs(linalg::overlap(psi, pure) - 1.0) <= 1e-14);
  CHECK(std::abs(linalg::overlap(psi, states::sigma_plus())) <= 1e-15);
  for (double a : {2.0, 3.5, 5.0}) {
    CHECK(std::abs(linalg::overlap(
                       psi, states::sigma_alpha(states::AlphaParam(a))) -
                   2.0 / 7.0) <= 1e-14);
  }
  CHECK_THROWS_AS(linalg::overlap(states::max_entangled(2), pure),
                  std::invalid_argument);
}

TEST_CASE("state vector validation") {
  CHECK_THROWS_AS(StateVector({1.0, 1.0}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector({1.0, 0.0}, {3}), std::invalid_argument);
  const StateVector ok({1.0, 0.0}, {2});
  CHECK(ok.dim() == 2);
}

TEST_CASE("density matrix constructor enforces its invariants") {
  // Trace must be 1.
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(3), {3}),
                  std::invalid_argument);

  // Hermiticity.
  ComplexMatrix skew = ComplexMatrix::diagonal({0.5, 0.5});
  skew(0, 1) = Complex{0.0, 1e-3};
  CHECK_THROWS_AS(DensityMatrix(skew, {2}), std::invalid_argument);

  // Positivity: the partial transpose of an entangled state has a negative
  // eigenvalue but keeps trace 1 and Hermiticity.
  const DensityMatrix bell(linalg::projector(states::max_entangled(2)), {2, 2});
  CHECK_THROWS_AS(DensityMatrix(linalg::partial_transpose(bell, 1), {2, 2}),
                  std::invalid_argument);

  // Dimension bookkeeping.
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal({0.5, 0.5}), {3}),
                  std::invalid_argument);
}
