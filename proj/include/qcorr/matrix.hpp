#ifndef QCORR_MATRIX_HPP
#define QCORR_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace qcorr {

using complex_t = std::complex<double>;

// Dense square complex matrix, row-major. Dimensions stay tiny here
// (2, 4 or 8), so everything is value-semantic and allocation cost is
// irrelevant next to clarity.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
  Matrix(std::size_t dim, std::initializer_list<complex_t> entries);

  static Matrix zero(std::size_t dim) { return Matrix(dim); }
  static Matrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  complex_t& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const complex_t& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(complex_t s);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(complex_t s, Matrix m) { return m *= s; }
  friend Matrix operator*(Matrix m, complex_t s) { return m *= s; }
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

 private:
  std::size_t dim_ = 0;
  std::vector<complex_t> a_;
};

Matrix adjoint(const Matrix& m);
Matrix conjugate(const Matrix& m);
complex_t trace(const Matrix& m);

// Largest |entry| of m, and of (a - b).
double max_norm(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol);

// Kronecker product: entry ((i*db+k),(j*db+l)) = a(i,j) * b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

// Matrix-vector product helpers for 8-vectors stored as std::vector.
std::vector<complex_t> apply(const Matrix& m, const std::vector<complex_t>& v);

// Outer product |u><v|.
Matrix outer(const std::vector<complex_t>& u, const std::vector<complex_t>& v);

// Pauli matrices and the 2x2 identity, in the |0> = sigma_z = +1 convention.
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();
const Matrix& identity2();

// Reduction of a 3-qubit state (basis |q1 q2 q3>, qubit 1 most significant)
// onto the ordered pair of sites `keep`; sites are 1-based. Throws on
// duplicate or out-of-range site indices or wrong dimension.
Matrix partial_trace(const Matrix& rho, std::pair<int, int> keep);

// Single-qubit marginal of a 2-qubit state; `site` is 0 (first factor)
// or 1 (second factor).
Matrix qubit_marginal(const Matrix& rho, int site);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // orthonormal eigenvectors as columns, same order
};

// Cyclic Jacobi diagonalization of a complex Hermitian matrix. Rejects
// non-Hermitian input (tolerance 1e-10). Eigenvectors inside a degenerate
// cluster (gap < 1e-9) are re-orthonormalized; no particular basis within
// a cluster is promised.
EigenSystem hermitian_eig(const Matrix& m);

// Throws std::invalid_argument unless m is Hermitian (1e-12), unit trace
// (1e-12) and positive semidefinite (min eigenvalue >= -1e-10).
void validate_density_matrix(const Matrix& m);

// Von Neumann entropy in bits. Validates the state; eigenvalues in
// [-1e-10, 0] are clipped to zero before the log.
double entropy_bits(const Matrix& rho);

}  // namespace qcorr

#endif
