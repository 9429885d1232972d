#include "vlq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vlq/error.hpp"
#include "vlq/kernels.hpp"

namespace vlq {

namespace {

void require_finite(std::span<const Complex> amps) {
  for (const auto& z : amps) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DomainError("non-finite amplitude");
  }
}

void require_same_dim(const ComplexVector& u, const ComplexVector& v) {
  if (u.dim() != v.dim())
    throw DimensionError("vector dimension mismatch: " + std::to_string(u.dim()) + " vs " +
                         std::to_string(v.dim()));
}

}  // namespace

ComplexVector::ComplexVector(std::size_t dim) : amps_(dim) {
  if (dim == 0) throw DimensionError("vector dimension must be >= 1");
}

ComplexVector::ComplexVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
  if (amps_.empty()) throw DimensionError("vector dimension must be >= 1");
  require_finite(amps_);
}

ComplexVector::ComplexVector(std::initializer_list<Complex> amps)
    : ComplexVector(std::vector<Complex>(amps)) {}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DomainError("basis index out of range");
  ComplexVector v(dim);
  v[index] = 1.0;
  return v;
}

ComplexVector ComplexVector::real(std::initializer_list<double> values) {
  std::vector<Complex> a(values.begin(), values.end());
  return ComplexVector(std::move(a));
}

double ComplexVector::norm_squared() const { return kernels::norm_squared(amps_); }
double ComplexVector::norm() const { return std::sqrt(norm_squared()); }
bool ComplexVector::is_unit(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

ComplexVector& ComplexVector::operator*=(Complex s) {
  for (auto& z : amps_) z *= s;
  return *this;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& o) {
  require_same_dim(*this, o);
  kernels::axpy(1.0, o.amps(), amps_);
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& o) {
  require_same_dim(*this, o);
  kernels::axpy(-1.0, o.amps(), amps_);
  return *this;
}

ComplexVector operator*(Complex s, ComplexVector v) { return v *= s; }
ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be >= 1");
  if (data_.size() != rows * cols) throw DimensionError("matrix entry count mismatch");
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector& u, const ComplexVector& v) {
  ComplexMatrix m(u.dim(), v.dim());
  std::vector<Complex> vbar(v.dim());
  for (std::size_t j = 0; j < v.dim(); ++j) vbar[j] = std::conj(v[j]);
  for (std::size_t i = 0; i < u.dim(); ++i) kernels::axpy(u[i], vbar, m.row(i));
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::span<const ComplexVector> rows) {
  if (rows.empty()) throw DimensionError("from_rows: no rows");
  ComplexMatrix m(rows.size(), rows.front().dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].dim() != m.cols()) throw DimensionError("from_rows: ragged rows");
    std::copy(rows[i].amps().begin(), rows[i].amps().end(), m.row(i).begin());
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!square()) throw DimensionError("trace of non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix size mismatch");
  kernels::axpy(1.0, o.data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols() != v.dim()) throw DimensionError("matrix-vector size mismatch");
  ComplexVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = kernels::dotu(m.row(r), v.amps());
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix-matrix size mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) kernels::axpy(a(i, k), b.row(k), out.row(i));
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

// ---------------------------------------------------------------------------

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  require_same_dim(u, v);
  return kernels::dotc(u.amps(), v.amps());
}

ComplexVector normalize(const ComplexVector& v) {
  const double n = v.norm();
  if (!(n > 1e-12)) throw DomainError("cannot normalize a near-zero vector");
  return (1.0 / n) * v;
}

ComplexVector residual(const ComplexVector& v, std::span<const ComplexVector> orthonormal) {
  ComplexVector r = v;
  // Classical Gram-Schmidt applied twice; the second pass removes the
  // rounding leftovers of the first without changing the result in exact
  // arithmetic.
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<Complex> coeffs(orthonormal.size());
    for (std::size_t j = 0; j < orthonormal.size(); ++j) coeffs[j] = inner(orthonormal[j], r);
    for (std::size_t j = 0; j < orthonormal.size(); ++j)
      kernels::axpy(-coeffs[j], orthonormal[j].amps(), r.amps());
  }
  return r;
}

std::vector<ComplexVector> gram_schmidt(std::span<const ComplexVector> vectors, double tol) {
  std::vector<ComplexVector> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& v = vectors[i];
    if (!out.empty()) require_same_dim(out.front(), v);
    const double vn = v.norm();
    ComplexVector r = residual(v, out);
    const double rn = r.norm();
    if (!(vn > 0.0) || rn <= tol * vn)
      throw DegenerateEnsembleError("gram_schmidt: vector " + std::to_string(i) +
                                    " is linearly dependent on its predecessors");
    out.push_back((1.0 / rn) * r);
  }
  return out;
}

bool in_span(const ComplexVector& v, std::span<const ComplexVector> basis, double tol) {
  if (basis.empty()) return v.norm() <= 0.0;
  require_same_dim(basis.front(), v);
  return residual(v, basis).norm() <= tol * v.norm();
}

namespace {

// Cyclic Jacobi on a dense real symmetric matrix (row-major, n x n).
std::vector<double> symmetric_jacobi(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  const double eps = 1e-15 * std::max(scale, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
    if (off <= eps) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= eps * 1e-3) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  return ev;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
  if (!m.square()) throw DomainError("hermitian_eigenvalues: matrix is not square");
  if (!m.is_hermitian(tol)) throw DomainError("hermitian_eigenvalues: matrix is not Hermitian");
  // A + iB Hermitian  <=>  [[A, -B], [B, A]] real symmetric with every
  // eigenvalue of A + iB appearing twice.
  const std::size_t n = m.rows();
  const std::size_t n2 = 2 * n;
  std::vector<double> big(n2 * n2);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      // symmetrize to absorb the tolerated Hermitian defect
      const Complex z = 0.5 * (m(r, c) + std::conj(m(c, r)));
      big[r * n2 + c] = z.real();
      big[(r + n) * n2 + (c + n)] = z.real();
      big[r * n2 + (c + n)] = -z.imag();
      big[(r + n) * n2 + c] = z.imag();
    }
  }
  std::vector<double> doubled = symmetric_jacobi(std::move(big), n2);
  std::sort(doubled.begin(), doubled.end(), std::greater<>());
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) {
    ev[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    if (!std::isfinite(ev[i])) throw DomainError("hermitian_eigenvalues: non-finite eigenvalue");
  }
  return ev;
}

std::vector<double> density_eigenvalues(const ComplexMatrix& rho) {
  constexpr double kEdge = 1e-10;
  if (std::abs(rho.trace() - 1.0) > 1e-9) throw DomainError("density matrix trace is not 1");
  std::vector<double> ev = hermitian_eigenvalues(rho);
  for (double& l : ev) {
    if (l < -kEdge || l > 1.0 + kEdge)
      throw DomainError("density matrix eigenvalue outside [0, 1]: " + std::to_string(l));
    l = std::clamp(l, 0.0, 1.0);
  }
  return ev;
}

}  // namespace vlq
