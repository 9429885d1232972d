#pragma once

// Complex BLAS-1 style kernels used by the dense linear algebra.
//
// Every kernel has a scalar reference implementation. Where the CPU supports
// it an AVX2/FMA variant is picked at first use; select_backend() overrides
// the choice (tests use it to compare variants on identical inputs).

#include <complex>
#include <span>
#include <string_view>

namespace vlq::kernels {

using Complex = std::complex<double>;

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b);

/// True when the backend was compiled in and the running CPU supports it.
bool available(Backend b);

Backend active_backend();

/// Throws std::invalid_argument if `b` is not available.
void select_backend(Backend b);

// Dispatched entry points. Spans must have equal length (checked by callers).
Complex dotc(std::span<const Complex> u, std::span<const Complex> v);  // sum conj(u_i) v_i
Complex dotu(std::span<const Complex> u, std::span<const Complex> v);  // sum u_i v_i
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);  // y += a x
double norm_squared(std::span<const Complex> v);

namespace scalar {
Complex dotc(std::span<const Complex> u, std::span<const Complex> v);
Complex dotu(std::span<const Complex> u, std::span<const Complex> v);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
double norm_squared(std::span<const Complex> v);
}  // namespace scalar

namespace avx2 {
Complex dotc(std::span<const Complex> u, std::span<const Complex> v);
Complex dotu(std::span<const Complex> u, std::span<const Complex> v);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
double norm_squared(std::span<const Complex> v);
}  // namespace avx2

}  // namespace vlq::kernels
