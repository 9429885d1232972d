#include "vlq/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace vlq::kernels {

namespace {

struct Table {
  Backend backend;
  Complex (*dotc)(std::span<const Complex>, std::span<const Complex>);
  Complex (*dotu)(std::span<const Complex>, std::span<const Complex>);
  void (*axpy)(Complex, std::span<const Complex>, std::span<Complex>);
  double (*norm_squared)(std::span<const Complex>);
};

constexpr Table kScalar{Backend::Scalar, scalar::dotc, scalar::dotu, scalar::axpy,
                        scalar::norm_squared};
#ifdef VLQ_WITH_AVX2
constexpr Table kAvx2{Backend::Avx2, avx2::dotc, avx2::dotu, avx2::axpy, avx2::norm_squared};
#endif

bool cpu_has_avx2() {
#if defined(VLQ_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* detect() {
#ifdef VLQ_WITH_AVX2
  if (cpu_has_avx2()) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{detect()};
  return table;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool available(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return cpu_has_avx2();
  }
  return false;
}

Backend active_backend() { return current().load(std::memory_order_relaxed)->backend; }

void select_backend(Backend b) {
  if (!available(b))
    throw std::invalid_argument("kernel backend not available: " + std::string(backend_name(b)));
#ifdef VLQ_WITH_AVX2
  if (b == Backend::Avx2) {
    current().store(&kAvx2, std::memory_order_relaxed);
    return;
  }
#endif
  current().store(&kScalar, std::memory_order_relaxed);
}

Complex dotc(std::span<const Complex> u, std::span<const Complex> v) {
  return current().load(std::memory_order_relaxed)->dotc(u, v);
}
Complex dotu(std::span<const Complex> u, std::span<const Complex> v) {
  return current().load(std::memory_order_relaxed)->dotu(u, v);
}
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  current().load(std::memory_order_relaxed)->axpy(a, x, y);
}
double norm_squared(std::span<const Complex> v) {
  return current().load(std::memory_order_relaxed)->norm_squared(v);
}

#ifndef VLQ_WITH_AVX2
// Link-time stand-ins so the avx2:: symbols exist on every build; never
// reached because available(Backend::Avx2) is false.
namespace avx2 {
Complex dotc(std::span<const Complex> u, std::span<const Complex> v) { return scalar::dotc(u, v); }
Complex dotu(std::span<const Complex> u, std::span<const Complex> v) { return scalar::dotu(u, v); }
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) { scalar::axpy(a, x, y); }
double norm_squared(std::span<const Complex> v) { return scalar::norm_squared(v); }
}  // namespace avx2
#endif

}  // namespace vlq::kernels
