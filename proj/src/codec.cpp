#include "vlq/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "vlq/error.hpp"

namespace vlq {

SourceEnsemble::SourceEnsemble(std::vector<SourceMessage> messages, double prob_tol)
    : messages_(std::move(messages)), ambient_dim_(0) {
  if (messages_.empty()) throw DegenerateEnsembleError("ensemble has no messages");
  ambient_dim_ = messages_.front().raw_amps.dim();
  std::set<std::string> ids;
  double total = 0.0;
  states_.reserve(messages_.size());
  for (const auto& m : messages_) {
    if (!ids.insert(m.id).second) throw DegenerateEnsembleError("duplicate message id '" + m.id + "'");
    if (!(m.probability > 0.0) || !std::isfinite(m.probability))
      throw DegenerateEnsembleError("message '" + m.id + "' must have probability > 0");
    if (m.raw_amps.dim() != ambient_dim_)
      throw DegenerateEnsembleError("message '" + m.id + "' has dimension " +
                                    std::to_string(m.raw_amps.dim()) + ", expected " +
                                    std::to_string(ambient_dim_));
    if (!(m.raw_amps.norm() > 1e-12)) throw DegenerateEnsembleError("message '" + m.id + "' is the zero vector");
    total += m.probability;
    states_.push_back(normalize(m.raw_amps));
  }
  if (std::abs(total - 1.0) > prob_tol)
    throw DegenerateEnsembleError("probabilities sum to " + std::to_string(total) + ", not 1");
}

std::size_t SourceEnsemble::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < messages_.size(); ++i)
    if (messages_[i].id == id) return i;
  throw DomainError("unknown message id '" + id + "'");
}

std::vector<double> SourceEnsemble::probabilities() const {
  std::vector<double> p;
  p.reserve(messages_.size());
  for (const auto& m : messages_) p.push_back(m.probability);
  return p;
}

Codebook::Codebook(RegisterSpec spec, std::vector<ComplexVector> basis, ComplexMatrix encoder,
                   ComplexMatrix decoder, std::vector<int> code_lengths,
                   std::map<std::string, int> base_lengths)
    : spec_(spec),
      basis_(std::move(basis)),
      encoder_(std::move(encoder)),
      decoder_(std::move(decoder)),
      code_lengths_(std::move(code_lengths)),
      base_lengths_(std::move(base_lengths)) {
  if (basis_.empty() || basis_.size() > spec_.dim())
    throw DomainError("codebook basis size must be in [1, k^r]");
  if (code_lengths_.size() != basis_.size()) throw DimensionError("one code length per basis vector");
  if (encoder_.rows() != spec_.dim() || decoder_.cols() != spec_.dim() ||
      encoder_.cols() != decoder_.rows() || encoder_.cols() != basis_.front().dim())
    throw DimensionError("encoder/decoder shapes do not match the register and source space");
}

int Codebook::base_length_of(const std::string& id) const {
  auto it = base_lengths_.find(id);
  if (it == base_lengths_.end()) throw DomainError("message '" + id + "' is not in the codebook");
  return it->second;
}

std::vector<SourceMessage> select_independent(const SourceEnsemble& ensemble, double tol) {
  std::vector<std::size_t> order(ensemble.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ensemble.messages()[a].probability > ensemble.messages()[b].probability;
  });
  std::vector<SourceMessage> kept;
  std::vector<ComplexVector> onb;
  for (std::size_t idx : order) {
    const ComplexVector& x = ensemble.state(idx);
    ComplexVector r = residual(x, onb);
    const double rn = r.norm();
    if (rn <= tol) continue;  // x is unit, so this is the relative residual
    onb.push_back((1.0 / rn) * r);
    kept.push_back(ensemble.messages()[idx]);
    if (onb.size() == ensemble.ambient_dim()) break;
  }
  return kept;
}

int minimal_register_length(std::size_t d, int k) {
  if (d == 0) throw DomainError("code dimension must be >= 1");
  int r = 0;
  std::uint64_t cap = 1;
  while (cap < d) {
    cap *= static_cast<std::uint64_t>(k);
    ++r;
  }
  return r;
}

Codebook build_codebook(const SourceEnsemble& ensemble, int k, double tol) {
  if (k < 2) throw DomainError("alphabet size k must be >= 2");
  const auto kept = select_independent(ensemble, tol);
  std::vector<ComplexVector> vectors;
  vectors.reserve(kept.size());
  for (const auto& m : kept) vectors.push_back(normalize(m.raw_amps));
  std::vector<ComplexVector> basis = gram_schmidt(vectors, tol);

  const std::size_t d = basis.size();
  const RegisterSpec spec(k, minimal_register_length(d, k));

  // C = sum_i |Z_k^r(i-1)><w_i|: row i-1 of C is <w_i| (conjugated
  // amplitudes); rows d..k^r-1 are zero.
  ComplexMatrix encoder(spec.dim(), ensemble.ambient_dim());
  std::vector<int> code_lengths(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t c = 0; c < encoder.cols(); ++c) encoder(i, c) = std::conj(basis[i][c]);
    code_lengths[i] = significant_length(i, k);
  }
  ComplexMatrix decoder = encoder.adjoint();

  std::map<std::string, int> base_lengths;
  for (std::size_t m = 0; m < ensemble.size(); ++m) {
    int lc = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (std::norm(inner(basis[i], ensemble.state(m))) > kAmplitudeTol * kAmplitudeTol)
        lc = std::max(lc, code_lengths[i]);
    }
    base_lengths.emplace(ensemble.messages()[m].id, lc);
  }
  return Codebook(spec, std::move(basis), std::move(encoder), std::move(decoder),
                  std::move(code_lengths), std::move(base_lengths));
}

VariableLengthState encode(const Codebook& codebook, const ComplexVector& x, double tol) {
  if (x.dim() != codebook.ambient_dim()) throw DimensionError("encode: message has wrong dimension");
  if (!x.is_unit(1e-10)) throw DomainError("encode: message is not unit norm");
  if (!in_span(x, codebook.basis(), tol)) throw DomainError("encode: message lies outside the source space");
  ComplexVector c = codebook.encoder() * x;
  // x may carry up to tol of out-of-span residue; C annihilates it.
  const double n = c.norm();
  if (std::abs(n - 1.0) > 1e-10) c *= 1.0 / n;
  return VariableLengthState(codebook.spec(), std::move(c));
}

ComplexVector decode(const Codebook& codebook, const VariableLengthState& s, double tol) {
  if (s.spec() != codebook.spec()) throw DimensionError("decode: register does not match the codebook");
  for (std::size_t i = codebook.code_dim(); i < s.amps().dim(); ++i) {
    if (std::abs(s.amps()[i]) > tol)
      throw DomainError("decode: state has support on index " + std::to_string(i) +
                        " outside the code space");
  }
  return codebook.decoder() * s.amps();
}

ComplexMatrix message_matrix(const SourceEnsemble& ensemble) {
  const std::size_t n = ensemble.ambient_dim();
  ComplexMatrix sigma(n, n);
  for (std::size_t m = 0; m < ensemble.size(); ++m) {
    ComplexMatrix proj = ComplexMatrix::outer(ensemble.state(m), ensemble.state(m));
    proj *= ensemble.messages()[m].probability;
    sigma += proj;
  }
  return sigma;
}

CodeLengthOperator code_length_operator(const Codebook& codebook) {
  CodeLengthOperator op{{}, ComplexMatrix(codebook.ambient_dim(), codebook.ambient_dim())};
  op.diagonal.reserve(codebook.code_dim());
  for (std::size_t i = 0; i < codebook.code_dim(); ++i) {
    const double len = codebook.code_lengths()[i];
    op.diagonal.push_back(len);
    if (len == 0.0) continue;
    ComplexMatrix proj = ComplexMatrix::outer(codebook.basis()[i], codebook.basis()[i]);
    proj *= len;
    op.ambient += proj;
  }
  return op;
}

}  // namespace vlq
