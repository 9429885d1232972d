#include "vlq/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "vlq/error.hpp"
#include "vlq/random.hpp"

namespace vlq {

std::string SessionTranscript::side_channel_stream() const {
  std::string s;
  for (const auto& r : records) s += r.classical_bits;
  return s;
}

Transmission alice_send(const Codebook& codebook, const PrefixCodeTable& table, const SourceMessage& message) {
  const int L = codebook.base_length_of(message.id);
  auto code = table.find(L);
  if (code == table.end()) throw DomainError("no side-channel codeword for length " + std::to_string(L));
  const VariableLengthState c = encode(codebook, normalize(message.raw_amps));
  return {code->second, QuantumPayload{L, truncate(c, L)}};
}

ComplexVector bob_receive(const Codebook& codebook, const PrefixCodeTable& table, BitStream& stream,
                          const QuantumPayload& payload) {
  const int L = LengthDecoder(table).next(stream);
  if (L > codebook.spec().r()) throw FramingError("announced length exceeds the register");
  if (payload.length != L || payload.amps.dim() != checked_pow(codebook.spec().k(), L))
    throw DimensionError("payload does not carry " + std::to_string(L) + " digits");
  return decode(codebook, pad(payload.amps, codebook.spec()));
}

ComplexVector bob_receive(const Codebook& codebook, const PrefixCodeTable& table, const std::string& bits,
                          const QuantumPayload& payload) {
  BitStream stream(bits);
  ComplexVector out = bob_receive(codebook, table, stream, payload);
  if (stream.remaining() != 0) throw FramingError("trailing side-channel bits");
  return out;
}

std::size_t sample_message(const SourceEnsemble& ensemble, double u) {
  double acc = 0.0;
  const auto& msgs = ensemble.messages();
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    acc += msgs[i].probability;
    if (u < acc) return i;
  }
  return msgs.size() - 1;  // u beyond the rounded cumulative sum
}

namespace {

double fidelity(const ComplexVector& expected, const ComplexVector& got) { return std::norm(inner(expected, got)); }

}  // namespace

SessionTotals compute_totals(const std::vector<TransmissionRecord>& records) {
  SessionTotals t;
  double f = 0.0;
  for (const auto& r : records) {
    t.digits += static_cast<std::uint64_t>(r.digits_sent);
    t.classical_bits += r.classical_bits.size();
    f += r.fidelity;
  }
  t.mean_fidelity = records.empty() ? 1.0 : f / static_cast<double>(records.size());
  return t;
}

SessionTranscript run_session(const SourceEnsemble& ensemble, const Codebook& codebook,
                              const PrefixCodeTable& table, std::size_t n, std::uint64_t seed,
                              std::string ensemble_hash) {
  if (n == 0) throw DomainError("session must send at least one message");
  SessionTranscript t;
  t.k = codebook.spec().k();
  t.r = codebook.spec().r();
  t.seed = seed;
  t.ensemble_hash = std::move(ensemble_hash);
  t.records.reserve(n);

  Rng rng(seed);
  BitStream channel;  // the receiver's view of the side channel
  const LengthDecoder lengths(table);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = sample_message(ensemble, uniform01(rng));
    const SourceMessage& msg = ensemble.messages()[m];
    Transmission tx = alice_send(codebook, table, msg);
    channel.append(tx.bits);

    const int L = lengths.next(channel);
    if (L != tx.payload.length) throw FramingError("side channel desynchronized");
    ComplexVector decoded = decode(codebook, pad(tx.payload.amps, codebook.spec()));
    const double f = fidelity(ensemble.state(m), decoded);
    t.records.push_back(TransmissionRecord{i, msg.id, L, std::move(tx.bits), L, std::move(tx.payload),
                                           std::move(decoded), f});
  }
  if (channel.remaining() != 0) throw FramingError("unconsumed side-channel bits at session close");
  t.totals = compute_totals(t.records);
  return t;
}

SessionTranscript replay(const SessionTranscript& stored, const SourceEnsemble& ensemble,
                         const Codebook& codebook, const PrefixCodeTable& table) {
  if (stored.k != codebook.spec().k() || stored.r != codebook.spec().r())
    throw DimensionError("transcript register does not match the codebook");
  SessionTranscript out = stored;
  BitStream channel(stored.side_channel_stream());
  for (auto& rec : out.records) {
    ComplexVector decoded = bob_receive(codebook, table, channel, rec.payload);
    if (rec.payload.length != rec.base_length) throw FramingError("record length fields disagree");
    rec.fidelity = fidelity(ensemble.state(ensemble.index_of(rec.message_id)), decoded);
    rec.decoded = std::move(decoded);
  }
  if (channel.remaining() != 0) throw FramingError("unconsumed side-channel bits at session close");
  out.totals = compute_totals(out.records);
  return out;
}

bool verify_lossless(const SessionTranscript& transcript, const SourceEnsemble& ensemble, double tol) {
  return std::all_of(transcript.records.begin(), transcript.records.end(), [&](const TransmissionRecord& r) {
    if (!r.decoded) return false;
    const ComplexVector& x = ensemble.state(ensemble.index_of(r.message_id));
    if (x.dim() != r.decoded->dim()) return false;
    return fidelity(x, *r.decoded) >= 1.0 - tol;
  });
}

}  // namespace vlq
