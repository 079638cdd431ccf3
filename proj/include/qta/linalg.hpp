#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace qta {

using Complex = std::complex<double>;

/// Thrown when an internally computed quantity violates a numerical
/// guarantee of the library. Bad caller input throws std::invalid_argument
/// instead.
class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace linalg {

// Shared numerical tolerances.
inline constexpr double kNormTol = 1e-12;          // state normalization
inline constexpr double kTraceTol = 1e-12;         // density matrix trace
inline constexpr double kHermitianTol = 1e-12;     // density matrix Hermiticity
inline constexpr double kPsdTol = 1e-10;           // min eigenvalue >= -kPsdTol
inline constexpr double kEigInputTol = 1e-10;      // Hermiticity check in eig
inline constexpr double kJacobiOffTol = 1e-14;     // off-diagonal convergence
inline constexpr int kJacobiMaxSweeps = 100;

/// Dense square complex matrix with row-major storage.
///
/// Tensor index convention used everywhere: for subsystem dimensions
/// (d0, d1, ..., dk) the flat index of the multi-index (i0, i1, ..., ik)
/// is i0*d1*...*dk + ... + ik, i.e. the leftmost factor is the most
/// significant digit.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(int dim);

  /// Takes ownership of row-major entries; entries.size() must equal dim^2.
  ComplexMatrix(int dim, std::vector<Complex> entries);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix diagonal(const std::vector<Complex>& values);

  int dim() const { return dim_; }

  Complex& operator()(int row, int col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(int row, int col) const {
    return entries_[row * dim_ + col];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool is_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scalar);

 private:
  int dim_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);

/// Largest entry magnitude of (a - b). Dimensions must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry magnitude.
double max_abs(const ComplexMatrix& m);

/// Largest entry magnitude of (m - m^dagger); 0 for exactly Hermitian input.
double hermiticity_defect(const ComplexMatrix& m);

/// Unit-norm complex vector with a declared tensor factorization.
class StateVector {
 public:
  /// Validates unit norm (within kNormTol), finiteness, and that the
  /// product of the factorization equals the amplitude count.
  StateVector(std::vector<Complex> amplitudes, std::vector<int> factorization);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  const std::vector<int>& factorization() const { return factorization_; }

 private:
  std::vector<Complex> amplitudes_;
  std::vector<int> factorization_;
};

/// Trace-1, Hermitian, positive-semidefinite matrix with declared subsystem
/// dimensions. The constructor checks all three invariants (PSD via the
/// Hermitian eigensolver) and rejects violations.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, std::vector<int> dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<int>& dims() const { return dims_; }

 private:
  ComplexMatrix matrix_;
  std::vector<int> dims_;
};

/// Kronecker product; entry ((i*dB+k),(j*dB+l)) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// |psi><psi|.
ComplexMatrix projector(const StateVector& psi);

/// Partial trace over the subsystems NOT listed in `keep`. `keep` must be a
/// nonempty strictly increasing list of valid subsystem indices. The raw
/// variant makes no trace-1 assumption and is used for unnormalized
/// post-selection branches.
ComplexMatrix partial_trace_raw(const ComplexMatrix& m,
                                const std::vector<int>& dims,
                                const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

/// Partial transpose of a bipartite matrix. subsystem 0 transposes the
/// first factor, subsystem 1 the second. The result is Hermitian and
/// trace-preserving but need not be positive semidefinite.
ComplexMatrix partial_transpose_raw(const ComplexMatrix& m, int dim_a,
                                    int dim_b, int subsystem);
ComplexMatrix partial_transpose(const DensityMatrix& rho, int subsystem);

/// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi rotations;
/// converges to off-diagonal Frobenius norm <= kJacobiOffTol (scaled by the
/// input norm when that exceeds 1), at most kJacobiMaxSweeps sweeps.
/// Input must be Hermitian within kEigInputTol.
std::vector<double> eig_hermitian(const ComplexMatrix& h);

/// <psi|rho|psi>. The value is real for Hermitian rho; the imaginary part
/// must vanish within kNormTol or an invariant_error is raised.
double overlap(const StateVector& psi, const DensityMatrix& rho);

}  // namespace linalg
}  // namespace qta
