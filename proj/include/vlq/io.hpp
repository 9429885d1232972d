#pragma once

// File formats: ensemble input (JSON), analysis report (JSON) and session
// transcript (JSON lines: one header line, then one line per record).
// Numbers are written in shortest round-trip form, which never needs more
// than 17 significant digits, so parse(emit(x)) reproduces x exactly.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vlq/codec.hpp"
#include "vlq/metrics.hpp"
#include "vlq/protocol.hpp"
#include "vlq/sidechannel.hpp"

namespace vlq::io {

struct EnsembleFile {
  int k = 2;
  std::size_t ambient_dim = 0;
  bool normalize = true;
  std::vector<SourceMessage> messages;
};

/// Throws ParseError (with line/column or JSON path) on malformed input,
/// Σp outside 1 ± 1e-6, or non-unit vectors when normalize is false.
EnsembleFile parse_ensemble(const std::string& text);
EnsembleFile read_ensemble_file(const std::string& path);
std::string emit_ensemble(const EnsembleFile& file);

/// Probabilities rescaled to sum to exactly 1 (within rounding).
SourceEnsemble to_ensemble(const EnsembleFile& file);

/// Hex SHA-256 of the canonical serialization emit_ensemble(file).
std::string ensemble_hash(const EnsembleFile& file);

struct CodebookSummary {
  int k = 2;
  int r = 0;
  std::vector<std::vector<Complex>> basis;
  std::vector<std::vector<Complex>> encoder;  // rows
  std::vector<std::vector<Complex>> decoder;  // rows
  std::vector<int> code_lengths;
  std::map<std::string, int> base_lengths;

  friend bool operator==(const CodebookSummary&, const CodebookSummary&) = default;
};

struct ReportFile {
  CompressionReport report{};
  CodebookSummary codebook;
  std::map<int, double> length_distribution;
  PrefixCodeTable huffman;

  friend bool operator==(const ReportFile&, const ReportFile&) = default;
};

ReportFile make_report_file(const SourceEnsemble& ensemble, const Codebook& codebook, const SideChannel& side);
std::string emit_report(const ReportFile& report);
ReportFile parse_report(const std::string& text);

std::string emit_transcript(const SessionTranscript& t);
void write_transcript(std::ostream& os, const SessionTranscript& t);
/// Records come back without decoded states; use replay() to recompute them.
SessionTranscript parse_transcript(const std::string& text);

std::string read_file(const std::string& path);
/// Throws Error on write failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace vlq::io
