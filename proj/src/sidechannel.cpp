#include "vlq/sidechannel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>

#include "vlq/error.hpp"

namespace vlq {

LengthDistribution::LengthDistribution(std::map<int, double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("length distribution is empty");
  double total = 0.0;
  for (const auto& [l, p] : entries_) {
    if (l < 0) throw DomainError("length values must be >= 0");
    if (!(p > 0.0)) throw DomainError("length probabilities must be > 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("length probabilities do not sum to 1");
}

double LengthDistribution::probability(int length) const {
  auto it = entries_.find(length);
  return it == entries_.end() ? 0.0 : it->second;
}

// --- BitStream -------------------------------------------------------------

BitStream::BitStream(std::string_view bits) { append(bits); }

void BitStream::append(std::string_view bits) {
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("bit strings may only contain '0' and '1'");
    bits_.push_back(c == '1');
  }
}

std::string BitStream::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::uint8_t> BitStream::pack() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

BitStream BitStream::unpack(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) throw FramingError("bit count exceeds packed data");
  BitStream s;
  s.bits_.reserve(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) s.bits_.push_back((bytes[i / 8] >> (7 - i % 8)) & 1u);
  return s;
}

bool BitStream::read() {
  if (cursor_ >= bits_.size()) throw FramingError("side-channel stream exhausted");
  return bits_[cursor_++];
}

// --- distribution and Huffman ----------------------------------------------

LengthDistribution length_distribution(const SourceEnsemble& ensemble,
                                       const std::map<std::string, int>& base_lengths) {
  std::map<int, double> entries;
  for (const auto& m : ensemble.messages()) {
    auto it = base_lengths.find(m.id);
    if (it == base_lengths.end()) throw DomainError("no base length for message '" + m.id + "'");
    entries[it->second] += m.probability;
  }
  return LengthDistribution(std::move(entries));
}

namespace {

struct Node {
  double probability;
  int min_symbol;
  int symbol = -1;  // leaf only
  std::unique_ptr<Node> zero;
  std::unique_ptr<Node> one;
};

struct NodeOrder {
  bool operator()(const Node* a, const Node* b) const {
    if (a->probability != b->probability) return a->probability > b->probability;
    return a->min_symbol > b->min_symbol;
  }
};

void assign(const Node& n, std::string prefix, PrefixCodeTable& out) {
  if (n.symbol >= 0) {
    out[n.symbol] = std::move(prefix);
    return;
  }
  assign(*n.zero, prefix + '0', out);
  assign(*n.one, prefix + '1', out);
}

}  // namespace

PrefixCodeTable build_huffman(const LengthDistribution& dist) {
  PrefixCodeTable table;
  if (dist.size() == 1) {
    table[dist.entries().begin()->first] = "0";
    return table;
  }
  std::vector<std::unique_ptr<Node>> owned;
  std::priority_queue<Node*, std::vector<Node*>, NodeOrder> heap;
  for (const auto& [l, p] : dist.entries()) {
    owned.push_back(std::make_unique<Node>(Node{p, l, l, nullptr, nullptr}));
    heap.push(owned.back().get());
  }
  auto take = [&](Node* raw) {
    auto it = std::find_if(owned.begin(), owned.end(), [&](const auto& u) { return u.get() == raw; });
    std::unique_ptr<Node> n = std::move(*it);
    owned.erase(it);
    return n;
  };
  while (heap.size() > 1) {
    Node* a = heap.top();
    heap.pop();
    Node* b = heap.top();
    heap.pop();
    auto merged = std::make_unique<Node>();
    merged->probability = a->probability + b->probability;
    merged->min_symbol = std::min(a->min_symbol, b->min_symbol);
    merged->zero = take(a);
    merged->one = take(b);
    owned.push_back(std::move(merged));
    heap.push(owned.back().get());
  }
  assign(*owned.front(), "", table);
  return table;
}

double expected_code_length(const PrefixCodeTable& table, const LengthDistribution& dist) {
  double e = 0.0;
  for (const auto& [l, p] : dist.entries()) {
    auto it = table.find(l);
    if (it == table.end()) throw DomainError("no codeword for length " + std::to_string(l));
    e += p * static_cast<double>(it->second.size());
  }
  return e;
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

double shannon_entropy(const LengthDistribution& dist) {
  std::vector<double> p;
  for (const auto& [l, q] : dist.entries()) p.push_back(q);
  return shannon_entropy(p);
}

// --- stream coding ---------------------------------------------------------

BitStream encode_lengths(const PrefixCodeTable& table, std::span<const int> lengths) {
  BitStream s;
  for (int l : lengths) {
    auto it = table.find(l);
    if (it == table.end()) throw DomainError("no codeword for length " + std::to_string(l));
    s.append(it->second);
  }
  return s;
}

LengthDecoder::LengthDecoder(const PrefixCodeTable& table) {
  if (table.empty()) throw DomainError("empty code table");
  if (!is_prefix_free(table)) throw DomainError("code table is not prefix-free");
  for (const auto& [l, c] : table) {
    if (c.empty()) throw DomainError("empty codeword");
    by_code_.emplace(c, l);
    max_len_ = std::max(max_len_, c.size());
  }
}

int LengthDecoder::next(BitStream& stream) const {
  std::string word;
  while (word.size() < max_len_) {
    if (stream.remaining() == 0)
      throw FramingError(word.empty() ? "side-channel stream exhausted"
                                      : "side-channel stream ends mid-codeword");
    word.push_back(stream.read() ? '1' : '0');
    auto it = by_code_.find(word);
    if (it != by_code_.end()) return it->second;
  }
  throw FramingError("bits '" + word + "' match no codeword");
}

std::vector<int> decode_lengths(const PrefixCodeTable& table, BitStream stream, std::size_t count) {
  LengthDecoder dec(table);
  std::vector<int> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(dec.next(stream));
  if (stream.remaining() != 0)
    throw FramingError(std::to_string(stream.remaining()) + " trailing bits after " +
                       std::to_string(count) + " codewords");
  return out;
}

// --- Kraft / prefix ----------------------------------------------------------

double kraft_sum(std::span<const int> lengths, int k) {
  if (k < 2) throw DomainError("alphabet size k must be >= 2");
  double s = 0.0;
  for (int l : lengths) {
    if (l < 0) throw DomainError("code lengths must be >= 0");
    s += std::pow(static_cast<double>(k), -l);
  }
  return s;
}

double kraft_sum(const PrefixCodeTable& table) {
  std::vector<int> lengths;
  for (const auto& [l, c] : table) lengths.push_back(static_cast<int>(c.size()));
  return kraft_sum(lengths, 2);
}

bool is_prefix_free(std::span<const std::string> codewords) {
  for (std::size_t i = 0; i < codewords.size(); ++i)
    for (std::size_t j = 0; j < codewords.size(); ++j)
      if (i != j && codewords[j].starts_with(codewords[i])) return false;
  return true;
}

bool is_prefix_free(const PrefixCodeTable& table) {
  std::vector<std::string> words;
  for (const auto& [l, c] : table) words.push_back(c);
  return is_prefix_free(words);
}

SideChannel build_side_channel(const SourceEnsemble& ensemble, const Codebook& codebook) {
  LengthDistribution dist = length_distribution(ensemble, codebook.base_lengths());
  PrefixCodeTable table = build_huffman(dist);
  return {std::move(dist), std::move(table)};
}

}  // namespace vlq
