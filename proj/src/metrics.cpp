#include "vlq/metrics.hpp"

#include <cmath>

#include "vlq/error.hpp"

namespace vlq {

double raw_information_classical(std::size_t count) {
  if (count == 0) throw DomainError("message count must be >= 1");
  return std::log2(static_cast<double>(count));
}

double raw_information_quantum(std::size_t dim) {
  if (dim == 0) throw DomainError("dimension must be >= 1");
  return std::log2(static_cast<double>(dim));
}

double von_neumann_entropy(const ComplexMatrix& sigma) {
  double s = 0.0;
  for (double l : density_eigenvalues(sigma))
    if (l >= 1e-12) s -= l * std::log2(l);
  return s;
}

double ensemble_code_information(const SourceEnsemble& ensemble, const Codebook& codebook) {
  double digits = 0.0;
  for (const auto& m : ensemble.messages())
    digits += m.probability * codebook.base_length_of(m.id);
  return std::log2(static_cast<double>(codebook.spec().k())) * digits;
}

CompressionRates compression_rates(double code_information, double side_entropy,
                                   double huffman_average, double raw_quantum) {
  if (!(raw_quantum > 0.0)) throw DomainError("raw quantum information must be > 0");
  return {code_information / raw_quantum, (code_information + side_entropy) / raw_quantum,
          (code_information + huffman_average) / raw_quantum};
}

KraftTrace quantum_kraft_trace(std::span<const int> code_lengths, int k) {
  const double v = kraft_sum(code_lengths, k);
  return {v, v <= 1.0 + 1e-12};
}

LowerBoundCheck lower_bound_check(double code_information, double side_entropy, double entropy) {
  const double with = code_information + side_entropy - entropy;
  const double alone = code_information - entropy;
  return {{with >= -kBoundTol, with}, {alone >= -kBoundTol, alone}};
}

BoundCheck upper_bound_check(double code_information, std::size_t dim, int k) {
  const double rhs = raw_information_quantum(dim) + std::log2(static_cast<double>(k));
  const double slack = rhs - code_information;
  return {slack >= -kBoundTol, slack};
}

BlockCodeVerdict no_go_block_code(std::uint64_t dim, int k, int n) {
  if (dim == 0 || k < 2 || n < 0) throw DomainError("no_go_block_code: invalid arguments");
  BlockCodeVerdict v{};
  v.raw_information = std::log2(static_cast<double>(dim));
  v.feasible = dim <= checked_pow(static_cast<std::uint64_t>(k), n);
  if (v.feasible) {
    v.code_information = n * std::log2(static_cast<double>(k));
    v.compressive = v.code_information < v.raw_information - kBoundTol;
  }
  return v;
}

UniversalVerdict no_go_universal(int k, int r, int s) {
  if (k < 2 || r < 0 || s < 0) throw DomainError("no_go_universal: invalid arguments");
  UniversalVerdict v{};
  v.source_dim = checked_pow(static_cast<std::uint64_t>(k), r);
  v.target_dim = dim_general_message_space(k, s);
  v.block_to_variable_feasible = v.source_dim <= v.target_dim;
  v.variable_to_variable_feasible = dim_general_message_space(k, r) <= v.target_dim;
  return v;
}

DephasingCheck dephasing_entropy_check(const ComplexMatrix& sigma, std::span<const ComplexVector> basis) {
  if (basis.size() != sigma.rows()) throw DomainError("dephasing basis must span the ambient space");
  ComplexMatrix dephased(sigma.rows(), sigma.cols());
  for (const auto& w : basis) {
    const double weight = inner(w, sigma * w).real();
    ComplexMatrix proj = ComplexMatrix::outer(w, w);
    proj *= weight;
    dephased += proj;
  }
  DephasingCheck c{};
  c.entropy = von_neumann_entropy(sigma);
  c.dephased_entropy = von_neumann_entropy(dephased);
  c.satisfied = c.entropy <= c.dephased_entropy + kBoundTol;
  return c;
}

CompressionReport build_report(const SourceEnsemble& ensemble, const Codebook& codebook,
                               const SideChannel& side) {
  CompressionReport rep{};
  rep.k = codebook.spec().k();
  rep.r = codebook.spec().r();
  rep.message_count = ensemble.size();
  rep.source_dim = codebook.code_dim();

  const ComplexMatrix sigma = message_matrix(ensemble);
  const auto probs = ensemble.probabilities();
  rep.shannon_entropy = shannon_entropy(probs);
  rep.von_neumann_entropy = von_neumann_entropy(sigma);
  rep.raw_classical = raw_information_classical(ensemble.size());
  rep.raw_quantum = raw_information_quantum(codebook.code_dim());
  rep.code_information = ensemble_code_information(ensemble, codebook);
  rep.side_channel_entropy = shannon_entropy(side.distribution);
  rep.huffman_average = expected_code_length(side.table, side.distribution);
  rep.total_information = rep.code_information + rep.side_channel_entropy;
  rep.effective_information = rep.code_information + rep.huffman_average;

  if (rep.raw_quantum > 0.0) {
    const auto rates = compression_rates(rep.code_information, rep.side_channel_entropy,
                                         rep.huffman_average, rep.raw_quantum);
    rep.rate_quantum = rates.quantum;
    rep.rate_total = rates.total;
    rep.rate_effective = rates.effective;
  }
  rep.classical_rate = rep.raw_classical > 0.0 ? rep.shannon_entropy / rep.raw_classical : 0.0;

  rep.kraft_sum = kraft_sum(side.table);
  const auto qk = quantum_kraft_trace(codebook.code_lengths(), rep.k);
  rep.quantum_kraft_trace = qk.value;
  rep.quantum_kraft_admissible = qk.admissible;
  rep.length_operator_trace = (sigma * code_length_operator(codebook).ambient).trace().real();

  const auto lb = lower_bound_check(rep.code_information, rep.side_channel_entropy, rep.von_neumann_entropy);
  rep.lower_bound_satisfied = lb.with_side_channel.satisfied;
  rep.lower_bound_slack = lb.with_side_channel.slack;
  rep.upper_bound_satisfied = upper_bound_check(rep.code_information, codebook.code_dim(), rep.k).satisfied;
  return rep;
}

}  // namespace vlq
