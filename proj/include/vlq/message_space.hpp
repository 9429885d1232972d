#pragma once

// Variable-length quantum messages in an r-digit k-ary register.
//
// The canonical realization is the neutral-prefix space N_r: basis index i in
// [0, k^r) stands for the k-ary numeral Z_k(i) padded with leading zeros,
// and carries significant length = number of base-k digits of i (0 for i=0).
// The (r+1)-digit general realization is exposed only as index arithmetic.

#include <cstdint>
#include <string>
#include <vector>

#include "vlq/numerics.hpp"
#include "vlq/random.hpp"

namespace vlq {

inline constexpr double kAmplitudeTol = 1e-12;

/// Letter-space dimension k and register length r (in k-ary digits).
class RegisterSpec {
 public:
  /// Throws DomainError unless k >= 2, r >= 0 and k^r fits in 2^40.
  RegisterSpec(int k, int r);

  int k() const noexcept { return k_; }
  int r() const noexcept { return r_; }
  /// k^r
  std::size_t dim() const noexcept { return dim_; }

  friend bool operator==(const RegisterSpec&, const RegisterSpec&) = default;

 private:
  int k_;
  int r_;
  std::size_t dim_;
};

/// Exact k^n; throws DomainError on overflow of uint64.
std::uint64_t checked_pow(std::uint64_t k, int n);

/// Z_k(i): base-k digits of i without leading zeros; "" for i = 0.
/// Digits print as 0-9 then A-Z, so k <= 36.
std::string k_ary_digits(std::uint64_t i, int k);

/// Z_k^n(i): Z_k(i) left-padded with '0' to exactly n digits.
std::string extended_k_ary(std::uint64_t i, int k, int n);

/// Number of base-k digits of i, i.e. ceil(log_k(i + 1)), by integer arithmetic.
int significant_length(std::uint64_t i, int k);

/// Basis state |0...0 1 Z_k^n(i)> of the (r+1)-digit general realization.
struct GeneralRegisterIndex {
  int n;
  std::uint64_t i;
  /// Position in the k^(r+1)-dim register: the base-k numeral "1" Z_k^n(i).
  std::uint64_t register_index;
  /// Full r+1 digit string of the register state.
  std::string digits;
};

GeneralRegisterIndex general_basis_index(int n, std::uint64_t i, const RegisterSpec& spec);

/// (k^(r+1) - 1)/(k - 1) = sum_{n=0..r} k^n. Throws DomainError on overflow.
std::uint64_t dim_general_message_space(int k, int r);

/// Indices of N_r with significant length n; these sets partition [0, k^r).
std::vector<std::size_t> length_projector_indices(int n, const RegisterSpec& spec);

/// A unit vector in N_r.
class VariableLengthState {
 public:
  /// Throws DimensionError if amps.dim() != spec.dim(), DomainError if not unit.
  VariableLengthState(RegisterSpec spec, ComplexVector amps);

  /// Basis state |Z_k^r(index)>.
  static VariableLengthState basis(RegisterSpec spec, std::size_t index);

  const RegisterSpec& spec() const noexcept { return spec_; }
  const ComplexVector& amps() const noexcept { return amps_; }

  /// <s|Pi_n|s> for n = 0..r.
  std::vector<double> length_probabilities() const;

 private:
  RegisterSpec spec_;
  ComplexVector amps_;
};

/// sum_n n <s|Pi_n|s>.
double expected_length(const VariableLengthState& s);

/// Largest n with <s|Pi_n|s> > amp_tol^2.
int base_length(const VariableLengthState& s, double amp_tol = kAmplitudeTol);

struct LengthMeasurementOutcome {
  int length;
  double probability;
  VariableLengthState collapsed;
};

/// Projective measurement of the length operator. u01 supplies a uniform
/// [0, 1) sample (the caller owns the random source).
LengthMeasurementOutcome measure_length(const VariableLengthState& s, double u01);

inline LengthMeasurementOutcome measure_length(const VariableLengthState& s, Rng& rng) {
  return measure_length(s, uniform01(rng));
}

/// Drop the r - L leading digits. Returns a k^L-dim vector, or the 1-dim
/// empty payload (1) for L = 0. Throws DomainError if an amplitude beyond
/// index k^L exceeds amp_tol (the state would lose information).
ComplexVector truncate(const VariableLengthState& s, int length, double amp_tol = kAmplitudeTol);

/// Prepend r - L digits |0>: embeds a k^L-dim payload at indices [0, k^L).
VariableLengthState pad(const ComplexVector& payload, const RegisterSpec& spec);

/// L such that k^L == dim, or -1 if dim is not a power of k.
int payload_length(std::size_t dim, int k);

}  // namespace vlq
