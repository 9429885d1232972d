#pragma once

// Dense complex linear algebra at desk scale.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace vlq {

using Complex = std::complex<double>;

inline constexpr double kUnitTol = 1e-12;
/// Relative residual at or below which a vector counts as linearly dependent.
inline constexpr double kDependenceTol = 1e-9;
inline constexpr double kHermitianTol = 1e-10;

class ComplexVector {
 public:
  /// Zero vector. dim must be >= 1.
  explicit ComplexVector(std::size_t dim);
  /// Throws DomainError on empty input or non-finite entries.
  explicit ComplexVector(std::vector<Complex> amps);
  ComplexVector(std::initializer_list<Complex> amps);

  static ComplexVector basis(std::size_t dim, std::size_t index);
  static ComplexVector real(std::initializer_list<double> values);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amps() const noexcept { return amps_; }
  std::span<Complex> amps() noexcept { return amps_; }
  const std::vector<Complex>& values() const noexcept { return amps_; }

  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const;
  double norm() const;
  bool is_unit(double tol = kUnitTol) const;

  ComplexVector& operator*=(Complex s);
  ComplexVector& operator+=(const ComplexVector& o);
  ComplexVector& operator-=(const ComplexVector& o);

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<Complex> amps_;
};

ComplexVector operator*(Complex s, ComplexVector v);
ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);

/// Largest componentwise modulus of a - b.
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);

class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws DimensionError if entries.size() != rows*cols.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  /// |u><v|
  static ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);
  /// Matrix whose rows are the given vectors (all of equal dim).
  static ComplexMatrix from_rows(std::span<const ComplexVector> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Complex> row(std::size_t r) const {
    return std::span<const Complex>(data_).subspan(r * cols_, cols_);
  }
  std::span<Complex> row(std::size_t r) { return std::span<Complex>(data_).subspan(r * cols_, cols_); }
  const std::vector<Complex>& entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  bool is_hermitian(double tol = kHermitianTol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// <u|v>, conjugate-linear in u.
Complex inner(const ComplexVector& u, const ComplexVector& v);

/// v/|v|. Throws DomainError when |v| <= 1e-12.
ComplexVector normalize(const ComplexVector& v);

/// v - sum_i <w_i|v> w_i for an orthonormal list w (two projection passes).
ComplexVector residual(const ComplexVector& v, std::span<const ComplexVector> orthonormal);

/// In-order Gram-Schmidt: w_1 = v_1/|v_1|, w_i = N_i (1 - sum_{j<i} |w_j><w_j|) v_i.
/// Throws DegenerateEnsembleError when a residual has relative norm <= tol.
std::vector<ComplexVector> gram_schmidt(std::span<const ComplexVector> vectors,
                                        double tol = kDependenceTol);

/// True iff |v - P v| <= tol |v|, P the projector onto span(basis).
bool in_span(const ComplexVector& v, std::span<const ComplexVector> basis,
             double tol = kDependenceTol);

/// Eigenvalues of a Hermitian matrix, descending. Throws DomainError if the
/// input is not square or not Hermitian within tol.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = kHermitianTol);

/// hermitian_eigenvalues() with values within 1e-10 of 0 or 1 clamped onto
/// the boundary. Throws DomainError if an eigenvalue lies outside
/// [-1e-10, 1 + 1e-10] or the trace is not 1 within 1e-9.
std::vector<double> density_eigenvalues(const ComplexMatrix& rho);

}  // namespace vlq
