#pragma once

// Information measures, compression rates, Kraft quantities, the lower and
// upper bounds on the code information, and dimension-counting no-go checks.
//
// Units: every *_information value is in bits. Code information is
// log2(k) times a digit count, so k = 2 gives qubits.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vlq/codec.hpp"
#include "vlq/sidechannel.hpp"

namespace vlq {

inline constexpr double kBoundTol = 1e-9;

/// log2 |X|
double raw_information_classical(std::size_t count);
/// log2 dim V
double raw_information_quantum(std::size_t dim);

/// -sum lambda log2 lambda over the eigenvalues of sigma; eigenvalues below
/// 1e-12 contribute nothing. Throws DomainError if sigma is not a density matrix.
double von_neumann_entropy(const ComplexMatrix& sigma);

/// log2(k) sum_x p(x) base_length(x)
double ensemble_code_information(const SourceEnsemble& ensemble, const Codebook& codebook);

struct CompressionRates {
  double quantum;    // I_c / I_0
  double total;      // (I_c + I') / I_0
  double effective;  // (I_c + L') / I_0
};

/// Throws DomainError if raw_quantum <= 0.
CompressionRates compression_rates(double code_information, double side_entropy,
                                   double huffman_average, double raw_quantum);

struct KraftTrace {
  double value;  // Tr k^(-L_c) = sum_i k^(-L_c(w_i))
  bool admissible;  // value <= 1
};

KraftTrace quantum_kraft_trace(std::span<const int> code_lengths, int k);

struct BoundCheck {
  bool satisfied;
  double slack;  // lhs - rhs; negative when violated
};

struct LowerBoundCheck {
  BoundCheck with_side_channel;  // I_c + I' >= S
  BoundCheck quantum_only;       // I_c >= S (may legitimately fail)
};

/// I' here is the entropy of the base-length distribution.
LowerBoundCheck lower_bound_check(double code_information, double side_entropy, double entropy);

/// I_c <= log2 dim V + log2 k
BoundCheck upper_bound_check(double code_information, std::size_t dim, int k);

struct BlockCodeVerdict {
  bool feasible;          // dim V <= k^n
  double code_information;  // n log2 k when feasible
  double raw_information;   // log2 dim V
  bool compressive;       // code_information < raw_information
};

/// Lossless block code of n k-ary digits for a dim-V source.
BlockCodeVerdict no_go_block_code(std::uint64_t dim, int k, int n);

struct UniversalVerdict {
  bool block_to_variable_feasible;     // k^r <= dim_general(k, s)
  bool variable_to_variable_feasible;  // dim_general(k, r) <= dim_general(k, s)
  std::uint64_t source_dim;            // k^r
  std::uint64_t target_dim;            // dim_general(k, s)
};

/// Can all r-digit block messages be mapped losslessly into messages of at
/// most s digits? Exact integer arithmetic.
UniversalVerdict no_go_universal(int k, int r, int s);

struct DephasingCheck {
  bool satisfied;
  double entropy;           // S(sigma)
  double dephased_entropy;  // S(sum_i |w_i><w_i| sigma |w_i><w_i|)
};

/// basis must be an orthonormal basis of the ambient space.
DephasingCheck dephasing_entropy_check(const ComplexMatrix& sigma, std::span<const ComplexVector> basis);

struct CompressionReport {
  int k;
  int r;
  std::size_t message_count;
  std::size_t source_dim;  // dim V
  double shannon_entropy;        // H(Sigma)
  double von_neumann_entropy;    // S(sigma)
  double raw_classical;          // I_0(X)
  double raw_quantum;            // I_0(V)
  double code_information;       // average base-length information
  double side_channel_entropy;   // I'
  double huffman_average;        // L'
  double total_information;      // I_c + I'
  double effective_information;  // I_c + L'
  double rate_quantum;
  double rate_total;
  double rate_effective;
  double classical_rate;         // H / I_0(X)
  double kraft_sum;              // binary Kraft sum of the Huffman table
  double quantum_kraft_trace;
  bool quantum_kraft_admissible;
  double length_operator_trace;  // Tr sigma L_c (in digits)
  bool lower_bound_satisfied;
  double lower_bound_slack;
  bool upper_bound_satisfied;

  friend bool operator==(const CompressionReport&, const CompressionReport&) = default;
};

CompressionReport build_report(const SourceEnsemble& ensemble, const Codebook& codebook,
                               const SideChannel& side);

}  // namespace vlq
