#include "vlq/kernels.hpp"

#include <cstddef>

namespace vlq::kernels::scalar {

Complex dotc(std::span<const Complex> u, std::span<const Complex> v) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    re += u[i].real() * v[i].real() + u[i].imag() * v[i].imag();
    im += u[i].real() * v[i].imag() - u[i].imag() * v[i].real();
  }
  return {re, im};
}

Complex dotu(std::span<const Complex> u, std::span<const Complex> v) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    re += u[i].real() * v[i].real() - u[i].imag() * v[i].imag();
    im += u[i].real() * v[i].imag() + u[i].imag() * v[i].real();
  }
  return {re, im};
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = {y[i].real() + a.real() * x[i].real() - a.imag() * x[i].imag(),
            y[i].imag() + a.real() * x[i].imag() + a.imag() * x[i].real()};
  }
}

double norm_squared(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += z.real() * z.real() + z.imag() * z.imag();
  return s;
}

}  // namespace vlq::kernels::scalar
