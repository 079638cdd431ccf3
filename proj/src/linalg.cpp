#include "qta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qta::linalg {

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

void check_dims(const std::vector<int>& dims, int matrix_dim) {
  if (dims.empty()) throw std::invalid_argument("subsystem list is empty");
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
  }
  if (product(dims) != matrix_dim) {
    throw std::invalid_argument(
        "product of subsystem dimensions does not match matrix dimension");
  }
}

// Decodes a flat index into per-subsystem digits, leftmost most significant.
void decode_index(int index, const std::vector<int>& dims,
                  std::vector<int>& digits) {
  const int k = static_cast<int>(dims.size());
  digits.resize(k);
  for (int s = k - 1; s >= 0; --s) {
    digits[s] = index % dims[s];
    index /= dims[s];
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  entries_.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  if (entries_.size() != static_cast<std::size_t>(dim) * dim) {
    throw std::invalid_argument("entry count does not equal dim^2");
  }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& values) {
  ComplexMatrix m(static_cast<int>(values.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{0.0, 0.0};
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::is_finite() const {
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (Complex& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("dimension mismatch");
  const int n = lhs.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = lhs(i, k);
      if (aik == Complex{0.0, 0.0}) continue;  // permutation operators are sparse
      for (int j = 0; j < n; ++j) {
        out(i, j) += aik * rhs(k, j);
      }
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) {
  m *= scalar;
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

double max_abs(const ComplexMatrix& m) {
  double v = 0.0;
  for (const Complex& z : m.entries()) v = std::max(v, std::abs(z));
  return v;
}

double hermiticity_defect(const ComplexMatrix& m) {
  double v = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      v = std::max(v, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return v;
}

StateVector::StateVector(std::vector<Complex> amplitudes,
                         std::vector<int> factorization)
    : amplitudes_(std::move(amplitudes)), factorization_(std::move(factorization)) {
  if (amplitudes_.empty()) throw std::invalid_argument("empty state vector");
  check_dims(factorization_, static_cast<int>(amplitudes_.size()));
  double norm_sq = 0.0;
  for (const Complex& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("state vector has non-finite amplitude");
    }
    norm_sq += std::norm(a);
  }
  if (std::abs(norm_sq - 1.0) > kNormTol) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<int> dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  check_dims(dims_, matrix_.dim());
  if (!matrix_.is_finite()) {
    throw std::invalid_argument("density matrix has non-finite entries");
  }
  if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > kTraceTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  if (hermiticity_defect(matrix_) > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const std::vector<double> spectrum = eig_hermitian(matrix_);
  if (spectrum.front() < -kPsdTol) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int da = a.dim();
  const int db = b.dim();
  ComplexMatrix out(da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{0.0, 0.0}) continue;
      for (int k = 0; k < db; ++k) {
        for (int l = 0; l < db; ++l) {
          out(i * db + k, j * db + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix projector(const StateVector& psi) {
  const int n = psi.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = psi.amplitudes()[i] * std::conj(psi.amplitudes()[j]);
    }
  }
  return out;
}

ComplexMatrix partial_trace_raw(const ComplexMatrix& m,
                                const std::vector<int>& dims,
                                const std::vector<int>& keep) {
  check_dims(dims, m.dim());
  if (keep.empty()) throw std::invalid_argument("keep set is empty");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= static_cast<int>(dims.size())) {
      throw std::invalid_argument("keep set has invalid subsystem index");
    }
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw std::invalid_argument("keep set must be strictly increasing");
    }
  }

  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) kept[k] = true;

  std::vector<int> kept_dims;
  for (int k : keep) kept_dims.push_back(dims[k]);
  ComplexMatrix out(product(kept_dims));

  const int full = m.dim();
  std::vector<int> ri, ci;
  for (int r = 0; r < full; ++r) {
    decode_index(r, dims, ri);
    for (int c = 0; c < full; ++c) {
      decode_index(c, dims, ci);
      bool diagonal_in_traced = true;
      for (std::size_t s = 0; s < dims.size(); ++s) {
        if (!kept[s] && ri[s] != ci[s]) {
          diagonal_in_traced = false;
          break;
        }
      }
      if (!diagonal_in_traced) continue;
      int kr = 0, kc = 0;
      for (int k : keep) {
        kr = kr * dims[k] + ri[k];
        kc = kc * dims[k] + ci[k];
      }
      out(kr, kc) += m(r, c);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  ComplexMatrix reduced = partial_trace_raw(rho.matrix(), rho.dims(), keep);
  std::vector<int> kept_dims;
  for (int k : keep) kept_dims.push_back(rho.dims()[k]);
  return DensityMatrix(std::move(reduced), std::move(kept_dims));
}

ComplexMatrix partial_transpose_raw(const ComplexMatrix& m, int dim_a,
                                    int dim_b, int subsystem) {
  if (dim_a * dim_b != m.dim()) {
    throw std::invalid_argument("bipartite dimensions do not match matrix");
  }
  if (subsystem != 0 && subsystem != 1) {
    throw std::invalid_argument("subsystem index must be 0 or 1");
  }
  ComplexMatrix out(m.dim());
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_b; ++j) {
      for (int k = 0; k < dim_a; ++k) {
        for (int l = 0; l < dim_b; ++l) {
          if (subsystem == 1) {
            out(i * dim_b + j, k * dim_b + l) = m(i * dim_b + l, k * dim_b + j);
          } else {
            out(i * dim_b + j, k * dim_b + l) = m(k * dim_b + j, i * dim_b + l);
          }
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, int subsystem) {
  if (rho.dims().size() != 2) {
    throw std::invalid_argument("partial transpose requires bipartite dims");
  }
  return partial_transpose_raw(rho.matrix(), rho.dims()[0], rho.dims()[1],
                               subsystem);
}

std::vector<double> eig_hermitian(const ComplexMatrix& h) {
  if (!h.is_finite()) throw std::invalid_argument("non-finite matrix");
  if (hermiticity_defect(h) > kEigInputTol) {
    throw std::invalid_argument("matrix is not Hermitian");
  }

  ComplexMatrix a = h;
  const int n = a.dim();
  const double threshold = kJacobiOffTol * std::max(1.0, h.frobenius_norm());

  auto off_norm = [&a, n]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) s += std::norm(a(i, j));
      }
    }
    return std::sqrt(s);
  };

  bool converged = n == 1;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    if (off_norm() <= threshold) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const Complex phase = a(p, q) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Unitary G differs from identity only in rows/cols p,q:
        //   G(p,p)=c, G(p,q)=s*phase, G(q,p)=-s*conj(phase), G(q,q)=c.
        // A <- G^dagger A G zeroes A(p,q).
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(phase) * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = Complex{0.0, 0.0};
        a(q, p) = Complex{0.0, 0.0};
      }
    }
  }
  if (!converged && off_norm() > threshold) {
    throw invariant_error("Jacobi eigensolver did not converge");
  }

  std::vector<double> eigenvalues(n);
  for (int i = 0; i < n; ++i) eigenvalues[i] = a(i, i).real();
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return eigenvalues;
}

double overlap(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.matrix().dim()) {
    throw std::invalid_argument("state and density matrix dimensions differ");
  }
  Complex value{0.0, 0.0};
  const int n = psi.dim();
  for (int i = 0; i < n; ++i) {
    const Complex ci = std::conj(psi.amplitudes()[i]);
    if (ci == Complex{0.0, 0.0}) continue;
    for (int j = 0; j < n; ++j) {
      value += ci * rho.matrix()(i, j) * psi.amplitudes()[j];
    }
  }
  if (std::abs(value.imag()) > kNormTol) {
    throw invariant_error("overlap has non-negligible imaginary part");
  }
  return value.real();
}

}  // namespace qta::linalg
