#include "vlq/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "vlq/error.hpp"

namespace vlq::io {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + " is not valid JSON (" + std::string(e.what()) + ")",
                     line_col(text, e.byte == 0 ? 0 : e.byte - 1));
  }
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError("expected an object", path);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'", path);
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError("expected a number", path);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError("number is not finite", path);
  return v;
}

std::int64_t as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError("expected an integer", path);
  return j.get<std::int64_t>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError("expected a string", path);
  return j.get<std::string>();
}

Complex as_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected a [re, im] pair", path);
  return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

std::vector<Complex> as_complex_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array of [re, im] pairs", path);
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_complex(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<Complex>> as_complex_rows(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array of rows", path);
  std::vector<std::vector<Complex>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_complex_list(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

ojson complex_json(Complex z) { return ojson::array({z.real(), z.imag()}); }

ojson complex_list_json(std::span<const Complex> v) {
  ojson a = ojson::array();
  for (const auto& z : v) a.push_back(complex_json(z));
  return a;
}

ojson complex_rows_json(const std::vector<std::vector<Complex>>& rows) {
  ojson a = ojson::array();
  for (const auto& r : rows) a.push_back(complex_list_json(r));
  return a;
}

std::vector<std::vector<Complex>> matrix_rows(const ComplexMatrix& m) {
  std::vector<std::vector<Complex>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.emplace_back(m.row(r).begin(), m.row(r).end());
  return rows;
}

std::string dump(const ojson& j) { return j.dump(); }

}  // namespace

// --- ensemble ----------------------------------------------------------------

EnsembleFile parse_ensemble(const std::string& text) {
  const json doc = parse_json(text, "ensemble file");
  EnsembleFile f;
  const auto k = as_integer(field(doc, "k", "$"), "$.k");
  if (k < 2 || k > 36) throw ParseError("k must be in [2, 36]", "$.k");
  f.k = static_cast<int>(k);
  const auto dim = as_integer(field(doc, "ambientDim", "$"), "$.ambientDim");
  if (dim < 1) throw ParseError("ambientDim must be >= 1", "$.ambientDim");
  f.ambient_dim = static_cast<std::size_t>(dim);
  if (auto it = doc.find("normalize"); it != doc.end()) {
    if (!it->is_boolean()) throw ParseError("expected a boolean", "$.normalize");
    f.normalize = it->get<bool>();
  }
  const json& msgs = field(doc, "messages", "$");
  if (!msgs.is_array() || msgs.empty()) throw ParseError("expected a non-empty array", "$.messages");
  double total = 0.0;
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    const std::string path = "$.messages[" + std::to_string(i) + "]";
    SourceMessage m{as_string(field(msgs[i], "id", path), path + ".id"), ComplexVector(1),
                    as_number(field(msgs[i], "p", path), path + ".p")};
    auto amps = as_complex_list(field(msgs[i], "amps", path), path + ".amps");
    if (amps.size() != f.ambient_dim)
      throw ParseError("expected " + std::to_string(f.ambient_dim) + " amplitudes, got " +
                           std::to_string(amps.size()),
                       path + ".amps");
    m.raw_amps = ComplexVector(std::move(amps));
    if (!(m.probability > 0.0)) throw ParseError("probability must be > 0", path + ".p");
    if (!(m.raw_amps.norm() > 1e-12)) throw ParseError("zero vector", path + ".amps");
    if (!f.normalize && std::abs(m.raw_amps.norm_squared() - 1.0) > 1e-9)
      throw ParseError("vector is not unit norm and normalize is false", path + ".amps");
    total += m.probability;
    f.messages.push_back(std::move(m));
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw ParseError("probabilities sum to " + std::to_string(total) + ", outside 1 +/- 1e-6", "$.messages");
  return f;
}

EnsembleFile read_ensemble_file(const std::string& path) {
  try {
    return parse_ensemble(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.what(), path);
  }
}

std::string emit_ensemble(const EnsembleFile& file) {
  ojson doc;
  doc["k"] = file.k;
  doc["ambientDim"] = file.ambient_dim;
  doc["normalize"] = file.normalize;
  ojson msgs = ojson::array();
  for (const auto& m : file.messages) {
    ojson j;
    j["id"] = m.id;
    j["p"] = m.probability;
    j["amps"] = complex_list_json(m.raw_amps.amps());
    msgs.push_back(std::move(j));
  }
  doc["messages"] = std::move(msgs);
  return doc.dump(2) + "\n";
}

SourceEnsemble to_ensemble(const EnsembleFile& file) {
  double total = 0.0;
  for (const auto& m : file.messages) total += m.probability;
  std::vector<SourceMessage> msgs = file.messages;
  if (total != 1.0)
    for (auto& m : msgs) m.probability /= total;
  return SourceEnsemble(std::move(msgs));
}

std::string ensemble_hash(const EnsembleFile& file) {
  const std::string bytes = emit_ensemble(file);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return os.str();
}

// --- report ------------------------------------------------------------------

ReportFile make_report_file(const SourceEnsemble& ensemble, const Codebook& codebook, const SideChannel& side) {
  ReportFile f;
  f.report = build_report(ensemble, codebook, side);
  f.codebook.k = codebook.spec().k();
  f.codebook.r = codebook.spec().r();
  for (const auto& w : codebook.basis()) f.codebook.basis.push_back(w.values());
  f.codebook.encoder = matrix_rows(codebook.encoder());
  f.codebook.decoder = matrix_rows(codebook.decoder());
  f.codebook.code_lengths = codebook.code_lengths();
  f.codebook.base_lengths = codebook.base_lengths();
  f.length_distribution = side.distribution.entries();
  f.huffman = side.table;
  return f;
}

namespace {

// One table drives both directions so emit and parse cannot drift apart.
template <class Fn>
void for_each_report_field(CompressionReport& r, Fn&& fn) {
  fn("shannonH", r.shannon_entropy);
  fn("vonNeumannS", r.von_neumann_entropy);
  fn("rawClassical", r.raw_classical);
  fn("rawQuantum", r.raw_quantum);
  fn("avgBaseLengthInfo", r.code_information);
  fn("sideChannelEntropy", r.side_channel_entropy);
  fn("huffmanAvg", r.huffman_average);
  fn("totalInfo", r.total_information);
  fn("effectiveInfo", r.effective_information);
  fn("rateQuantum", r.rate_quantum);
  fn("rateTotal", r.rate_total);
  fn("rateEffective", r.rate_effective);
  fn("rateClassical", r.classical_rate);
  fn("kraftSumValue", r.kraft_sum);
  fn("quantumKraftTrace", r.quantum_kraft_trace);
  fn("lengthOperatorTrace", r.length_operator_trace);
  fn("lowerBoundSlack", r.lower_bound_slack);
}

template <class Fn>
void for_each_report_flag(CompressionReport& r, Fn&& fn) {
  fn("quantumKraftAdmissible", r.quantum_kraft_admissible);
  fn("lowerBoundSatisfied", r.lower_bound_satisfied);
  fn("upperBoundSatisfied", r.upper_bound_satisfied);
}

}  // namespace

std::string emit_report(const ReportFile& in) {
  ReportFile f = in;
  ojson rep;
  rep["k"] = f.report.k;
  rep["r"] = f.report.r;
  rep["messageCount"] = f.report.message_count;
  rep["sourceDim"] = f.report.source_dim;
  for_each_report_field(f.report, [&](const char* key, double& v) { rep[key] = v; });
  for_each_report_flag(f.report, [&](const char* key, bool& v) { rep[key] = v; });

  ojson cb;
  cb["k"] = f.codebook.k;
  cb["r"] = f.codebook.r;
  cb["basis"] = complex_rows_json(f.codebook.basis);
  cb["encoder"] = complex_rows_json(f.codebook.encoder);
  cb["decoder"] = complex_rows_json(f.codebook.decoder);
  cb["codeLengths"] = f.codebook.code_lengths;
  ojson bl = ojson::object();
  for (const auto& [id, l] : f.codebook.base_lengths) bl[id] = l;
  cb["baseLengths"] = std::move(bl);

  ojson side;
  ojson dist = ojson::object();
  for (const auto& [l, p] : f.length_distribution) dist[std::to_string(l)] = p;
  ojson table = ojson::object();
  for (const auto& [l, c] : f.huffman) table[std::to_string(l)] = c;
  side["distribution"] = std::move(dist);
  side["huffman"] = std::move(table);

  ojson doc;
  doc["report"] = std::move(rep);
  doc["codebook"] = std::move(cb);
  doc["sideChannel"] = std::move(side);
  return doc.dump(2) + "\n";
}

namespace {

int parse_length_key(const std::string& key, const std::string& path) {
  try {
    std::size_t used = 0;
    const int l = std::stoi(key, &used);
    if (used != key.size() || l < 0) throw std::invalid_argument(key);
    return l;
  } catch (const std::exception&) {
    throw ParseError("'" + key + "' is not a length value", path);
  }
}

}  // namespace

ReportFile parse_report(const std::string& text) {
  const json doc = parse_json(text, "report file");
  ReportFile f;
  const json& rep = field(doc, "report", "$");
  f.report.k = static_cast<int>(as_integer(field(rep, "k", "$.report"), "$.report.k"));
  f.report.r = static_cast<int>(as_integer(field(rep, "r", "$.report"), "$.report.r"));
  f.report.message_count =
      static_cast<std::size_t>(as_integer(field(rep, "messageCount", "$.report"), "$.report.messageCount"));
  f.report.source_dim = static_cast<std::size_t>(as_integer(field(rep, "sourceDim", "$.report"), "$.report.sourceDim"));
  for_each_report_field(f.report, [&](const char* key, double& v) {
    v = as_number(field(rep, key, "$.report"), std::string("$.report.") + key);
  });
  for_each_report_flag(f.report, [&](const char* key, bool& v) {
    const json& j = field(rep, key, "$.report");
    if (!j.is_boolean()) throw ParseError("expected a boolean", std::string("$.report.") + key);
    v = j.get<bool>();
  });

  const json& cb = field(doc, "codebook", "$");
  f.codebook.k = static_cast<int>(as_integer(field(cb, "k", "$.codebook"), "$.codebook.k"));
  f.codebook.r = static_cast<int>(as_integer(field(cb, "r", "$.codebook"), "$.codebook.r"));
  f.codebook.basis = as_complex_rows(field(cb, "basis", "$.codebook"), "$.codebook.basis");
  f.codebook.encoder = as_complex_rows(field(cb, "encoder", "$.codebook"), "$.codebook.encoder");
  f.codebook.decoder = as_complex_rows(field(cb, "decoder", "$.codebook"), "$.codebook.decoder");
  const json& cl = field(cb, "codeLengths", "$.codebook");
  if (!cl.is_array()) throw ParseError("expected an array", "$.codebook.codeLengths");
  for (std::size_t i = 0; i < cl.size(); ++i)
    f.codebook.code_lengths.push_back(
        static_cast<int>(as_integer(cl[i], "$.codebook.codeLengths[" + std::to_string(i) + "]")));
  const json& bl = field(cb, "baseLengths", "$.codebook");
  if (!bl.is_object()) throw ParseError("expected an object", "$.codebook.baseLengths");
  for (const auto& [id, l] : bl.items())
    f.codebook.base_lengths[id] = static_cast<int>(as_integer(l, "$.codebook.baseLengths." + id));

  const json& side = field(doc, "sideChannel", "$");
  const json& dist = field(side, "distribution", "$.sideChannel");
  if (!dist.is_object()) throw ParseError("expected an object", "$.sideChannel.distribution");
  for (const auto& [key, p] : dist.items()) {
    const std::string path = "$.sideChannel.distribution." + key;
    f.length_distribution[parse_length_key(key, path)] = as_number(p, path);
  }
  const json& table = field(side, "huffman", "$.sideChannel");
  if (!table.is_object()) throw ParseError("expected an object", "$.sideChannel.huffman");
  for (const auto& [key, c] : table.items()) {
    const std::string path = "$.sideChannel.huffman." + key;
    f.huffman[parse_length_key(key, path)] = as_string(c, path);
  }
  return f;
}

// --- transcript ----------------------------------------------------------------

void write_transcript(std::ostream& os, const SessionTranscript& t) {
  ojson header;
  header["k"] = t.k;
  header["r"] = t.r;
  header["seed"] = t.seed;
  header["n"] = t.records.size();
  header["ensembleHash"] = t.ensemble_hash;
  os << dump(header) << '\n';
  for (const auto& rec : t.records) {
    ojson j;
    j["index"] = rec.index;
    j["messageId"] = rec.message_id;
    j["baseLength"] = rec.base_length;
    j["classicalBits"] = rec.classical_bits;
    j["payloadAmps"] = complex_list_json(rec.payload.amps.amps());
    j["fidelity"] = rec.fidelity;
    os << dump(j) << '\n';
  }
}

std::string emit_transcript(const SessionTranscript& t) {
  std::ostringstream os;
  write_transcript(os, t);
  return os.str();
}

SessionTranscript parse_transcript(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty()) return true;
    }
    return false;
  };
  auto parse_line = [&]() {
    try {
      return json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("invalid JSON (" + std::string(e.what()) + ")", "line " + std::to_string(lineno));
    }
  };
  if (!next_line()) throw ParseError("transcript is empty", "line 1");
  const json header = parse_line();
  const std::string hp = "line " + std::to_string(lineno);
  SessionTranscript t;
  t.k = static_cast<int>(as_integer(field(header, "k", hp), hp + ".k"));
  t.r = static_cast<int>(as_integer(field(header, "r", hp), hp + ".r"));
  const json& seed = field(header, "seed", hp);
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) throw ParseError("expected an integer", hp + ".seed");
  t.seed = seed.get<std::uint64_t>();
  const auto n = as_integer(field(header, "n", hp), hp + ".n");
  t.ensemble_hash = as_string(field(header, "ensembleHash", hp), hp + ".ensembleHash");
  while (next_line()) {
    const json j = parse_line();
    const std::string p = "line " + std::to_string(lineno);
    TransmissionRecord rec{};
    rec.index = static_cast<std::size_t>(as_integer(field(j, "index", p), p + ".index"));
    rec.message_id = as_string(field(j, "messageId", p), p + ".messageId");
    rec.base_length = static_cast<int>(as_integer(field(j, "baseLength", p), p + ".baseLength"));
    rec.classical_bits = as_string(field(j, "classicalBits", p), p + ".classicalBits");
    if (rec.classical_bits.find_first_not_of("01") != std::string::npos)
      throw ParseError("classicalBits must contain only 0 and 1", p + ".classicalBits");
    rec.digits_sent = rec.base_length;
    auto amps = as_complex_list(field(j, "payloadAmps", p), p + ".payloadAmps");
    if (amps.empty()) throw ParseError("payload needs at least one amplitude", p + ".payloadAmps");
    rec.payload = QuantumPayload{rec.base_length, ComplexVector(std::move(amps))};
    rec.fidelity = as_number(field(j, "fidelity", p), p + ".fidelity");
    if (rec.index != t.records.size()) throw ParseError("records out of order", p + ".index");
    t.records.push_back(std::move(rec));
  }
  if (n < 0 || static_cast<std::size_t>(n) != t.records.size())
    throw ParseError("header announces " + std::to_string(n) + " records, found " +
                         std::to_string(t.records.size()),
                     "line 1");
  t.totals = compute_totals(t.records);
  return t;
}

// --- files -------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace vlq::io
