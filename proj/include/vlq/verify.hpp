#pragma once

// Property suites behind `vlqc verify`: each property is a theorem for valid
// inputs, checked on randomly generated ensembles (and optionally on a
// user-supplied one). All randomness is derived from one master seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlq/codec.hpp"
#include "vlq/io.hpp"
#include "vlq/random.hpp"

namespace vlq::verify {

enum class Fault {
  None,
  /// Scale row 0 of every encoder by 1.25 before checking (test hook).
  NonIsometricEncoder,
};

struct Options {
  std::size_t trials = 100;
  std::uint64_t seed = 20240601;
  double tol = kDependenceTol;
  std::size_t session_messages = 1000;
  Fault fault = Fault::None;
  std::optional<io::EnsembleFile> ensemble;
};

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;
};

/// Random ensemble: ambient dim in [min_dim, max_dim], message count in
/// [min_messages, max_messages], complex Gaussian vectors, some of them
/// linear combinations of earlier ones, probabilities uniform on [0.05, 1)
/// then normalized.
SourceEnsemble random_ensemble(Rng& rng, std::size_t min_dim = 2, std::size_t max_dim = 6,
                               std::size_t min_messages = 3, std::size_t max_messages = 12);

/// Haar-distributed-ish random orthonormal basis of C^dim (Gram-Schmidt of
/// Gaussian vectors).
std::vector<ComplexVector> random_basis(Rng& rng, std::size_t dim);

/// Random unit vector in span(basis).
ComplexVector random_in_span(Rng& rng, std::span<const ComplexVector> basis);

/// Random density matrix of the given dim (random ensemble of pure states).
ComplexMatrix random_density(Rng& rng, std::size_t dim);

/// Minimum of sum p_i l_i over binary prefix codes, by enumerating every
/// length vector in [1, n-1]^n satisfying Kraft (1 for n = 1).
double optimal_prefix_cost(std::span<const double> probabilities);

std::vector<PropertyResult> run(const Options& options);

bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace vlq::verify
