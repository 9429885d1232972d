#pragma once

// Lossless variable-length quantum code built from a message ensemble:
//   1. keep a linearly independent subset, most probable first;
//   2. orthonormalize it in that order (w_1, ..., w_d);
//   3. send w_i to the neutral-prefix codeword |Z_k^r(i-1)>, r = ceil(log_k d);
//   4. tabulate each source message's base length under that encoder.

#include <map>
#include <string>
#include <vector>

#include "vlq/message_space.hpp"
#include "vlq/numerics.hpp"

namespace vlq {

struct SourceMessage {
  std::string id;
  /// Ambient coordinates as supplied; normalized on use.
  ComplexVector raw_amps;
  double probability;
};

class SourceEnsemble {
 public:
  /// Validates: non-empty, unique ids, p > 0, sum p = 1 within prob_tol,
  /// equal dims, nonzero vectors. Throws DegenerateEnsembleError.
  explicit SourceEnsemble(std::vector<SourceMessage> messages, double prob_tol = 1e-9);

  const std::vector<SourceMessage>& messages() const noexcept { return messages_; }
  std::size_t size() const noexcept { return messages_.size(); }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }

  /// Unit-normalized vector of message i.
  const ComplexVector& state(std::size_t i) const { return states_.at(i); }
  /// Index of the message with this id; throws DomainError if unknown.
  std::size_t index_of(const std::string& id) const;
  std::vector<double> probabilities() const;

 private:
  std::vector<SourceMessage> messages_;
  std::vector<ComplexVector> states_;
  std::size_t ambient_dim_;
};

class Codebook {
 public:
  Codebook(RegisterSpec spec, std::vector<ComplexVector> basis, ComplexMatrix encoder,
           ComplexMatrix decoder, std::vector<int> code_lengths, std::map<std::string, int> base_lengths);

  const RegisterSpec& spec() const noexcept { return spec_; }
  /// Orthonormal w_1..w_d, in codeword order.
  const std::vector<ComplexVector>& basis() const noexcept { return basis_; }
  std::size_t code_dim() const noexcept { return basis_.size(); }
  std::size_t ambient_dim() const noexcept { return encoder_.cols(); }
  /// C, k^r x ambient.
  const ComplexMatrix& encoder() const noexcept { return encoder_; }
  /// D = C^dagger, ambient x k^r.
  const ComplexMatrix& decoder() const noexcept { return decoder_; }
  /// L_c(w_i) = significant length of codeword index i-1.
  const std::vector<int>& code_lengths() const noexcept { return code_lengths_; }
  const std::map<std::string, int>& base_lengths() const noexcept { return base_lengths_; }
  /// Throws DomainError for an unknown id.
  int base_length_of(const std::string& id) const;

  /// Replace the encoder (fault injection for the verification suite).
  void override_encoder(ComplexMatrix encoder) { encoder_ = std::move(encoder); }

 private:
  RegisterSpec spec_;
  std::vector<ComplexVector> basis_;
  ComplexMatrix encoder_;
  ComplexMatrix decoder_;
  std::vector<int> code_lengths_;
  std::map<std::string, int> base_lengths_;
};

/// Greedy pass in descending probability (stable on ties) keeping each
/// message that is not in the span of those already kept.
std::vector<SourceMessage> select_independent(const SourceEnsemble& ensemble,
                                              double tol = kDependenceTol);

/// ceil(log_k d) by integer arithmetic (0 for d = 1).
int minimal_register_length(std::size_t d, int k);

Codebook build_codebook(const SourceEnsemble& ensemble, int k, double tol = kDependenceTol);

/// C x. Throws DomainError unless x is unit and inside span(basis) within tol.
VariableLengthState encode(const Codebook& codebook, const ComplexVector& x,
                           double tol = kDependenceTol);

/// D s. Throws DomainError if s has amplitude above tol on an index >= d
/// (outside the operational code space).
ComplexVector decode(const Codebook& codebook, const VariableLengthState& s, double tol = 1e-10);

/// Density operator sum_x p(x) |x><x| in ambient coordinates.
ComplexMatrix message_matrix(const SourceEnsemble& ensemble);

struct CodeLengthOperator {
  /// L_c(w_i) on the diagonal, in the w basis.
  std::vector<double> diagonal;
  /// sum_i L_c(w_i) |w_i><w_i| in ambient coordinates.
  ComplexMatrix ambient;
};

CodeLengthOperator code_length_operator(const Codebook& codebook);

}  // namespace vlq
