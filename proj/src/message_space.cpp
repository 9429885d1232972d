#include "vlq/message_space.hpp"

#include <cmath>
#include <limits>

#include "vlq/error.hpp"

namespace vlq {

namespace {

constexpr std::uint64_t kMaxRegisterDim = std::uint64_t{1} << 40;

void require_k(int k) {
  if (k < 2) throw DomainError("alphabet size k must be >= 2");
}

}  // namespace

std::uint64_t checked_pow(std::uint64_t k, int n) {
  if (n < 0) throw DomainError("negative exponent");
  std::uint64_t p = 1;
  for (int i = 0; i < n; ++i) {
    if (p > std::numeric_limits<std::uint64_t>::max() / k) throw DomainError("integer overflow in k^n");
    p *= k;
  }
  return p;
}

RegisterSpec::RegisterSpec(int k, int r) : k_(k), r_(r), dim_(0) {
  require_k(k);
  if (r < 0) throw DomainError("register length r must be >= 0");
  const std::uint64_t d = checked_pow(static_cast<std::uint64_t>(k), r);
  if (d > kMaxRegisterDim) throw DomainError("register dimension k^r too large");
  dim_ = static_cast<std::size_t>(d);
}

std::string k_ary_digits(std::uint64_t i, int k) {
  require_k(k);
  if (k > 36) throw DomainError("digit alphabet supports k <= 36");
  static constexpr char kDigits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string out;
  while (i > 0) {
    out.insert(out.begin(), kDigits[i % static_cast<std::uint64_t>(k)]);
    i /= static_cast<std::uint64_t>(k);
  }
  return out;
}

std::string extended_k_ary(std::uint64_t i, int k, int n) {
  std::string z = k_ary_digits(i, k);
  if (n < 0 || z.size() > static_cast<std::size_t>(n))
    throw DomainError("extended_k_ary: " + std::to_string(i) + " needs more than " +
                      std::to_string(n) + " digits");
  return std::string(static_cast<std::size_t>(n) - z.size(), '0') + z;
}

int significant_length(std::uint64_t i, int k) {
  require_k(k);
  int n = 0;
  while (i > 0) {
    i /= static_cast<std::uint64_t>(k);
    ++n;
  }
  return n;
}

GeneralRegisterIndex general_basis_index(int n, std::uint64_t i, const RegisterSpec& spec) {
  if (n < 0 || n > spec.r()) throw DomainError("general_basis_index: length out of range");
  const std::uint64_t kn = checked_pow(static_cast<std::uint64_t>(spec.k()), n);
  if (i >= kn) throw DomainError("general_basis_index: value out of range");
  GeneralRegisterIndex g{n, i, kn + i, {}};
  g.digits = std::string(static_cast<std::size_t>(spec.r() - n), '0') + "1" +
             extended_k_ary(i, spec.k(), n);
  return g;
}

std::uint64_t dim_general_message_space(int k, int r) {
  require_k(k);
  if (r < 0) throw DomainError("register length r must be >= 0");
  std::uint64_t total = 0;
  for (int n = 0; n <= r; ++n) {
    const std::uint64_t kn = checked_pow(static_cast<std::uint64_t>(k), n);
    if (total > std::numeric_limits<std::uint64_t>::max() - kn)
      throw DomainError("integer overflow in dim_general_message_space");
    total += kn;
  }
  return total;
}

std::vector<std::size_t> length_projector_indices(int n, const RegisterSpec& spec) {
  std::vector<std::size_t> out;
  if (n < 0 || n > spec.r()) return out;
  // indices with exactly n digits: [k^(n-1), k^n), and {0} for n = 0
  if (n == 0) {
    out.push_back(0);
    return out;
  }
  const auto lo = static_cast<std::size_t>(checked_pow(spec.k(), n - 1));
  const auto hi = static_cast<std::size_t>(checked_pow(spec.k(), n));
  out.reserve(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) out.push_back(i);
  return out;
}

VariableLengthState::VariableLengthState(RegisterSpec spec, ComplexVector amps)
    : spec_(spec), amps_(std::move(amps)) {
  if (amps_.dim() != spec_.dim())
    throw DimensionError("state dimension " + std::to_string(amps_.dim()) +
                         " does not match register dimension " + std::to_string(spec_.dim()));
  if (!amps_.is_unit()) throw DomainError("variable-length state is not unit norm");
}

VariableLengthState VariableLengthState::basis(RegisterSpec spec, std::size_t index) {
  return VariableLengthState(spec, ComplexVector::basis(spec.dim(), index));
}

std::vector<double> VariableLengthState::length_probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(spec_.r()) + 1, 0.0);
  for (std::size_t i = 0; i < amps_.dim(); ++i)
    p[static_cast<std::size_t>(significant_length(i, spec_.k()))] += std::norm(amps_[i]);
  return p;
}

double expected_length(const VariableLengthState& s) {
  const auto p = s.length_probabilities();
  double e = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) e += static_cast<double>(n) * p[n];
  return e;
}

int base_length(const VariableLengthState& s, double amp_tol) {
  const auto p = s.length_probabilities();
  for (int n = static_cast<int>(p.size()) - 1; n > 0; --n)
    if (p[static_cast<std::size_t>(n)] > amp_tol * amp_tol) return n;
  return 0;
}

LengthMeasurementOutcome measure_length(const VariableLengthState& s, double u01) {
  const auto p = s.length_probabilities();
  // Inverse CDF over n = 0..r, skipping empty outcomes.
  int chosen = -1;
  double acc = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p[n] <= 0.0) continue;
    chosen = static_cast<int>(n);
    acc += p[n];
    if (u01 < acc) break;
  }
  const double prob = p[static_cast<std::size_t>(chosen)];
  ComplexVector collapsed(s.amps().dim());
  const double scale = 1.0 / std::sqrt(prob);
  for (std::size_t i = 0; i < collapsed.dim(); ++i)
    if (significant_length(i, s.spec().k()) == chosen) collapsed[i] = scale * s.amps()[i];
  return {chosen, prob, VariableLengthState(s.spec(), std::move(collapsed))};
}

int payload_length(std::size_t dim, int k) {
  int L = 0;
  std::size_t d = 1;
  while (d < dim) {
    d *= static_cast<std::size_t>(k);
    ++L;
  }
  return d == dim ? L : -1;
}

ComplexVector truncate(const VariableLengthState& s, int length, double amp_tol) {
  if (length < 0 || length > s.spec().r()) throw DomainError("truncate: length out of range");
  const auto keep = static_cast<std::size_t>(checked_pow(s.spec().k(), length));
  for (std::size_t i = keep; i < s.amps().dim(); ++i) {
    if (std::abs(s.amps()[i]) > amp_tol)
      throw DomainError("truncate: amplitude on index " + std::to_string(i) +
                        " lies beyond length " + std::to_string(length));
  }
  std::vector<Complex> out(s.amps().amps().begin(), s.amps().amps().begin() + static_cast<std::ptrdiff_t>(keep));
  return ComplexVector(std::move(out));
}

VariableLengthState pad(const ComplexVector& payload, const RegisterSpec& spec) {
  const int L = payload_length(payload.dim(), spec.k());
  if (L < 0) throw DimensionError("pad: payload dimension is not a power of k");
  if (L > spec.r()) throw DomainError("pad: payload longer than the register");
  ComplexVector full(spec.dim());
  for (std::size_t i = 0; i < payload.dim(); ++i) full[i] = payload[i];
  return VariableLengthState(spec, std::move(full));
}

}  // namespace vlq
