#include "qcorr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qcorr {

Matrix::Matrix(std::size_t dim, std::initializer_list<complex_t> entries)
    : dim_(dim), a_(entries) {
  if (a_.size() != dim * dim)
    throw std::invalid_argument("Matrix: initializer list size does not match dim*dim");
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("Matrix::operator+=: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("Matrix::operator-=: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(complex_t s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("Matrix::operator*: dimension mismatch");
  const std::size_t n = lhs.dim_;
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const complex_t lik = lhs(i, k);
      if (lik == complex_t{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lik * rhs(k, j);
    }
  return out;
}

Matrix adjoint(const Matrix& m) {
  Matrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

Matrix conjugate(const Matrix& m) {
  Matrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = std::conj(m(i, j));
  return out;
}

complex_t trace(const Matrix& m) {
  complex_t t = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

double max_norm(const Matrix& m) {
  double out = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out = std::max(out, std::abs(m(i, j)));
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double out = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out = std::max(out, std::abs(a(i, j) - b(i, j)));
  return out;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

bool is_hermitian(const Matrix& m, double tol) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  Matrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const complex_t aij = a(i, j);
      if (aij == complex_t{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

std::vector<complex_t> apply(const Matrix& m, const std::vector<complex_t>& v) {
  if (v.size() != m.dim()) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<complex_t> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    complex_t s = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Matrix outer(const std::vector<complex_t>& u, const std::vector<complex_t>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("outer: dimension mismatch");
  Matrix out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
  return out;
}

const Matrix& pauli_x() {
  static const Matrix m(2, {0.0, 1.0, 1.0, 0.0});
  return m;
}

const Matrix& pauli_y() {
  static const Matrix m(2, {0.0, complex_t(0, -1), complex_t(0, 1), 0.0});
  return m;
}

const Matrix& pauli_z() {
  static const Matrix m(2, {1.0, 0.0, 0.0, -1.0});
  return m;
}

const Matrix& identity2() {
  static const Matrix m = Matrix::identity(2);
  return m;
}

Matrix partial_trace(const Matrix& rho, std::pair<int, int> keep) {
  if (rho.dim() != 8) throw std::invalid_argument("partial_trace: expected an 8x8 matrix");
  const int a = keep.first, b = keep.second;
  if (a < 1 || a > 3 || b < 1 || b > 3)
    throw std::invalid_argument("partial_trace: site indices must be in {1,2,3}");
  if (a == b) throw std::invalid_argument("partial_trace: duplicate site index");
  const int t = 6 - a - b;  // the traced-out site

  // Site n occupies bit (3 - n) of the basis index.
  auto pack = [&](std::size_t qa, std::size_t qb, std::size_t qt) {
    return (qa << (3 - a)) | (qb << (3 - b)) | (qt << (3 - t));
  };

  Matrix out(4);
  for (std::size_t ia = 0; ia < 2; ++ia)
    for (std::size_t ib = 0; ib < 2; ++ib)
      for (std::size_t ja = 0; ja < 2; ++ja)
        for (std::size_t jb = 0; jb < 2; ++jb) {
          complex_t s = 0.0;
          for (std::size_t k = 0; k < 2; ++k) s += rho(pack(ia, ib, k), pack(ja, jb, k));
          out(ia * 2 + ib, ja * 2 + jb) = s;
        }
  return out;
}

Matrix qubit_marginal(const Matrix& rho, int site) {
  if (rho.dim() != 4) throw std::invalid_argument("qubit_marginal: expected a 4x4 matrix");
  if (site != 0 && site != 1) throw std::invalid_argument("qubit_marginal: site must be 0 or 1");
  Matrix out(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        if (site == 0)
          out(i, j) += rho(i * 2 + k, j * 2 + k);
        else
          out(i, j) += rho(k * 2 + i, k * 2 + j);
      }
  return out;
}

namespace {

// One cyclic Jacobi sweep over all (p, q) pairs. Rotations are chosen to
// annihilate a(p,q) exactly; `vecs` accumulates the product of rotations.
void jacobi_sweep(Matrix& a, Matrix& vecs) {
  const std::size_t n = a.dim();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double r = std::abs(a(p, q));
      if (r < 1e-300) {
        a(p, q) = a(q, p) = 0.0;
        continue;
      }
      const complex_t phase = a(p, q) / r;  // e^{i beta}
      const double app = a(p, p).real();
      const double aqq = a(q, q).real();
      const double tau = (aqq - app) / (2.0 * r);
      // smaller-magnitude root of t^2 - 2*tau*t - 1 = 0
      const double sgn = tau >= 0.0 ? 1.0 : -1.0;
      const double t = -sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;

      a(p, p) = app + t * r;
      a(q, q) = aqq - t * r;
      a(p, q) = a(q, p) = 0.0;
      const complex_t sp = s * phase;             // s e^{i beta}
      const complex_t spc = s * std::conj(phase); // s e^{-i beta}
      for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const complex_t akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp + spc * akq;
        a(k, q) = -sp * akp + c * akq;
        a(p, k) = std::conj(a(k, p));
        a(q, k) = std::conj(a(k, q));
      }
      for (std::size_t k = 0; k < n; ++k) {
        const complex_t vkp = vecs(k, p), vkq = vecs(k, q);
        vecs(k, p) = c * vkp + spc * vkq;
        vecs(k, q) = -sp * vkp + c * vkq;
      }
    }
  }
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Modified Gram-Schmidt over a contiguous column range [lo, hi).
void reorthonormalize_columns(Matrix& v, std::size_t lo, std::size_t hi) {
  const std::size_t n = v.dim();
  for (std::size_t c = lo; c < hi; ++c) {
    for (std::size_t d = lo; d < c; ++d) {
      complex_t dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += std::conj(v(k, d)) * v(k, c);
      for (std::size_t k = 0; k < n; ++k) v(k, c) -= dot * v(k, d);
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) norm += std::norm(v(k, c));
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < n; ++k) v(k, c) /= norm;
  }
}

}  // namespace

EigenSystem hermitian_eig(const Matrix& m) {
  if (!is_hermitian(m, 1e-10))
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  const std::size_t n = m.dim();

  Matrix a = m;
  // Symmetrize exactly so rounding asymmetry below 1e-10 cannot drift.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const complex_t avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }

  Matrix vecs = Matrix::identity(n);
  const double target = std::max(1e-14, 1e-15 * frobenius_norm(a));
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    jacobi_sweep(a, vecs);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = Matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = vecs(k, order[c]);
  }

  // Clean up degenerate clusters: within a gap < 1e-9 the Jacobi basis is
  // arbitrary, so enforce orthonormality explicitly.
  std::size_t lo = 0;
  for (std::size_t c = 1; c <= n; ++c) {
    if (c == n || out.values[c] - out.values[c - 1] >= 1e-9) {
      if (c - lo > 1) reorthonormalize_columns(out.vectors, lo, c);
      lo = c;
    }
  }
  return out;
}

void validate_density_matrix(const Matrix& m) {
  if (!is_hermitian(m, 1e-12))
    throw std::invalid_argument("density matrix is not Hermitian within 1e-12");
  if (std::abs(trace(m) - complex_t(1.0)) > 1e-12)
    throw std::invalid_argument("density matrix trace differs from 1 by more than 1e-12");
  const EigenSystem es = hermitian_eig(m);
  if (es.values.front() < -1e-10)
    throw std::invalid_argument("density matrix has eigenvalue below -1e-10: " +
                                std::to_string(es.values.front()));
}

double entropy_bits(const Matrix& rho) {
  if (!is_hermitian(rho, 1e-12))
    throw std::invalid_argument("entropy_bits: state is not Hermitian within 1e-12");
  if (std::abs(trace(rho) - complex_t(1.0)) > 1e-12)
    throw std::invalid_argument("entropy_bits: state trace differs from 1 by more than 1e-12");
  const EigenSystem es = hermitian_eig(rho);
  double s = 0.0;
  for (double lam : es.values) {
    if (lam < -1e-10)
      throw std::invalid_argument("entropy_bits: eigenvalue below -1e-10: " +
                                  std::to_string(lam));
    if (lam <= 0.0) continue;  // clip [-1e-10, 0] to zero; 0 log 0 == 0
    s -= lam * std::log2(lam);
  }
  return s;
}

}  // namespace qcorr
