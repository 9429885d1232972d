#pragma once

// Classical length side-channel: base-length distribution, binary Huffman
// table, and the prefix-coded bitstream carrying one length per message.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vlq/codec.hpp"

namespace vlq {

/// length value -> probability; every entry > 0, sum 1 within 1e-9.
class LengthDistribution {
 public:
  explicit LengthDistribution(std::map<int, double> entries);
  const std::map<int, double>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double probability(int length) const;

 private:
  std::map<int, double> entries_;
};

/// length value -> codeword over {'0','1'}.
using PrefixCodeTable = std::map<int, std::string>;

/// MSB-first bit sequence with a read cursor.
class BitStream {
 public:
  BitStream() = default;
  /// From a "0"/"1" string; throws DomainError on other characters.
  explicit BitStream(std::string_view bits);

  void append(std::string_view bits);
  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::string to_string() const;

  /// Bytes packed most-significant-bit first; the last byte is zero-padded.
  std::vector<std::uint8_t> pack() const;
  static BitStream unpack(std::span<const std::uint8_t> bytes, std::size_t bit_count);

  std::size_t cursor() const noexcept { return cursor_; }
  std::size_t remaining() const noexcept { return bits_.size() - cursor_; }
  /// Throws FramingError at end of stream.
  bool read();

  friend bool operator==(const BitStream& a, const BitStream& b) { return a.bits_ == b.bits_; }

 private:
  std::vector<bool> bits_;
  std::size_t cursor_ = 0;
};

/// p_l = sum of p(x) over messages with base length l.
LengthDistribution length_distribution(const SourceEnsemble& ensemble,
                                       const std::map<std::string, int>& base_lengths);

/// Deterministic binary Huffman code. Nodes are ordered by (probability,
/// smallest length value they contain); the first node popped becomes the
/// '0' branch. A single-symbol alphabet gets the codeword "0".
PrefixCodeTable build_huffman(const LengthDistribution& dist);

/// sum_l p_l |c_l|. Throws DomainError if a symbol has no codeword.
double expected_code_length(const PrefixCodeTable& table, const LengthDistribution& dist);

/// -sum p log2 p in bits, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);
double shannon_entropy(const LengthDistribution& dist);

/// Concatenated codewords. Throws DomainError for a length without codeword.
BitStream encode_lengths(const PrefixCodeTable& table, std::span<const int> lengths);

/// Incremental prefix decoder for a continuous side-channel stream.
class LengthDecoder {
 public:
  explicit LengthDecoder(const PrefixCodeTable& table);

  /// Reads exactly one codeword from the stream. Throws FramingError if the
  /// stream ends mid-codeword or the bits match no codeword.
  int next(BitStream& stream) const;

 private:
  std::map<std::string, int> by_code_;
  std::size_t max_len_ = 0;
};

/// Strict: decodes exactly `count` lengths and requires the stream to be
/// fully consumed. Throws FramingError otherwise.
std::vector<int> decode_lengths(const PrefixCodeTable& table, BitStream stream, std::size_t count);

/// sum_i k^(-L_i)
double kraft_sum(std::span<const int> lengths, int k);

/// Binary Kraft sum of the table's codeword lengths.
double kraft_sum(const PrefixCodeTable& table);

bool is_prefix_free(std::span<const std::string> codewords);
bool is_prefix_free(const PrefixCodeTable& table);

/// Distribution + Huffman table, as handed to the receiver.
struct SideChannel {
  LengthDistribution distribution;
  PrefixCodeTable table;
};

SideChannel build_side_channel(const SourceEnsemble& ensemble, const Codebook& codebook);

}  // namespace vlq
