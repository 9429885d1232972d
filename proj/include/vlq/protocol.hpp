#pragma once

// Sender/receiver simulation over a noiseless quantum channel plus the
// classical length side-channel.
//
// Sender: encode, look up the base length L, drop the r - L leading digits,
// send the L remaining digits and the Huffman codeword for L.
// Receiver: decode L from the bit stream, take a k^L payload, prepend
// r - L digits |0>, apply the decoder.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlq/codec.hpp"
#include "vlq/message_space.hpp"
#include "vlq/sidechannel.hpp"

namespace vlq {

struct QuantumPayload {
  int length = 0;
  /// k^length amplitudes; the single amplitude 1 for length 0.
  ComplexVector amps = ComplexVector::basis(1, 0);
};

struct Transmission {
  std::string bits;
  QuantumPayload payload;
};

struct TransmissionRecord {
  std::size_t index;
  std::string message_id;
  int base_length;
  std::string classical_bits;
  /// Quantum digits sent (= base_length).
  int digits_sent;
  QuantumPayload payload;
  /// Absent for records read back from a transcript file until replayed.
  std::optional<ComplexVector> decoded;
  double fidelity;
};

struct SessionTotals {
  std::uint64_t digits = 0;
  std::uint64_t classical_bits = 0;
  double mean_fidelity = 1.0;
};

struct SessionTranscript {
  int k = 2;
  int r = 0;
  std::uint64_t seed = 0;
  std::string ensemble_hash;
  std::vector<TransmissionRecord> records;
  SessionTotals totals;

  std::size_t n() const noexcept { return records.size(); }
  /// Concatenated classical bits of every record, in send order.
  std::string side_channel_stream() const;
};

/// Throws DomainError for a message unknown to the codebook.
Transmission alice_send(const Codebook& codebook, const PrefixCodeTable& table, const SourceMessage& message);

/// Reads one length from `stream`, pads `payload` and decodes. Throws
/// FramingError on a bad stream, DimensionError when the payload size does
/// not match the announced length.
ComplexVector bob_receive(const Codebook& codebook, const PrefixCodeTable& table, BitStream& stream,
                          const QuantumPayload& payload);

/// Convenience overload for one isolated transmission: `bits` must hold
/// exactly one codeword.
ComplexVector bob_receive(const Codebook& codebook, const PrefixCodeTable& table, const std::string& bits,
                          const QuantumPayload& payload);

/// Samples n messages i.i.d. (inverse CDF over input order, uniforms from
/// mt19937_64(seed) via uniform01) and runs each through send/receive.
SessionTranscript run_session(const SourceEnsemble& ensemble, const Codebook& codebook,
                              const PrefixCodeTable& table, std::size_t n, std::uint64_t seed,
                              std::string ensemble_hash = {});

/// Index of the message selected by uniform u in [0, 1).
std::size_t sample_message(const SourceEnsemble& ensemble, double u);

/// Recomputes decoded states and fidelities from the stored bits and
/// payloads only (storage mode). The side-channel stream is parsed as one
/// continuous stream and must agree with each record's base length.
SessionTranscript replay(const SessionTranscript& stored, const SourceEnsemble& ensemble,
                         const Codebook& codebook, const PrefixCodeTable& table);

/// |<x|decoded>|^2 for every record; true iff all >= 1 - tol.
bool verify_lossless(const SessionTranscript& transcript, const SourceEnsemble& ensemble, double tol = 1e-9);

/// Recompute totals from records.
SessionTotals compute_totals(const std::vector<TransmissionRecord>& records);

}  // namespace vlq
