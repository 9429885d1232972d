#pragma once

// Built-in worked example: a 4-dimensional source, ten messages, binary
// channel. Vectors are stored as the integer coordinates below and
// normalized on load.
//
//   a (1,1,1,1) p=0.6    e (1,0,1,0) p=1/60    h (0,1,0,1) p=1/60
//   b (1,2,1,1) p=0.1    f (2,0,1,0) p=1/60    i (0,2,0,1) p=1/60
//   c (1,3,1,1) p=0.1    g (3,0,1,0) p=1/60    j (0,3,0,1) p=1/60
//   d (1,4,1,1) p=0.1
//
// Two deviations from the published listing: the printed prefactors of
// b..j are 1/sqrt(sum of entries) rather than unit normalizations, and
// p(e..j) is printed as 0.3/3, which would make the total 1.5. Unit
// vectors and p = 1/60 reproduce the published message matrix, entropies
// and length probabilities.

#include <string>
#include <vector>

#include "vlq/io.hpp"

namespace vlq::reference {

io::EnsembleFile ensemble_file();

/// Short description of the example and its two corrections, for --help.
std::string description();

struct GoldenCheck {
  std::string name;
  double published;
  double computed;
  double tolerance;
  bool passed() const;
};

/// Every published value compared against the value recomputed from
/// ensemble_file(): scalars, the 16 message-matrix entries, the four basis
/// vectors, the encoder and decoder entries, base lengths, the side channel
/// and the rates.
std::vector<GoldenCheck> golden_checks();

// Published values.
inline constexpr double kShannonH = 2.02945;
inline constexpr double kRawClassical = 3.32193;
inline constexpr double kClassicalRate = 0.610924;
inline constexpr double kVonNeumannS = 0.571241;
inline constexpr double kCodeInformation = 0.5;
inline constexpr double kRawQuantum = 2.0;
inline constexpr double kRateQuantum = 0.25;
inline constexpr double kSideEntropy = 1.29546;
inline constexpr double kHuffmanAverage = 1.4;
inline constexpr double kTotalInformation = 1.79546;
inline constexpr double kEffectiveInformation = 1.9;
inline constexpr double kRateTotal = 0.897731;
inline constexpr double kRateEffective = 0.95;

extern const double kSigma[4][4];
extern const double kBasis[4][4];
extern const double kEncoder[4][4];
extern const double kDecoder[4][4];

}  // namespace vlq::reference
