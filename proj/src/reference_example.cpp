#include "vlq/reference_example.hpp"

#include <algorithm>
#include <cmath>

namespace vlq::reference {

const double kSigma[4][4] = {{0.214549, 0.224624, 0.197882, 0.177882},
                             {0.224624, 0.40302, 0.224624, 0.244624},
                             {0.197882, 0.224624, 0.191216, 0.177882},
                             {0.177882, 0.244624, 0.177882, 0.191216}};

const double kBasis[4][4] = {{0.5, 0.5, 0.5, 0.5},
                             {-0.288675, 0.866025, -0.288675, -0.288675},
                             {0.408248, 0, 0.408248, -0.816497},
                             {0.707107, 0, -0.707107, 0}};

const double kEncoder[4][4] = {{0.5, 0.5, 0.5, 0.5},
                               {-0.288675, 0.866025, -0.288675, -0.288675},
                               {0.408248, 0, 0.408248, -0.816497},
                               {0.707107, 0, -0.707107, 0}};

// As published. Note that columns 2 and 3 are exchanged relative to the
// inverse of kEncoder; see golden_checks().
const double kDecoder[4][4] = {{0.5, 0.408248, -0.288675, 0.707107},
                               {0.5, 0, 0.866025, 0},
                               {0.5, 0.408248, -0.288675, -0.707107},
                               {0.5, -0.816497, -0.288675, 0}};

io::EnsembleFile ensemble_file() {
  struct Row {
    const char* id;
    double p;
    double v[4];
  };
  const double rest = 1.0 / 60.0;
  const Row rows[] = {{"a", 0.6, {1, 1, 1, 1}}, {"b", 0.1, {1, 2, 1, 1}}, {"c", 0.1, {1, 3, 1, 1}},
                      {"d", 0.1, {1, 4, 1, 1}}, {"e", rest, {1, 0, 1, 0}}, {"f", rest, {2, 0, 1, 0}},
                      {"g", rest, {3, 0, 1, 0}}, {"h", rest, {0, 1, 0, 1}}, {"i", rest, {0, 2, 0, 1}},
                      {"j", rest, {0, 3, 0, 1}}};
  io::EnsembleFile f;
  f.k = 2;
  f.ambient_dim = 4;
  f.normalize = true;
  for (const auto& r : rows)
    f.messages.push_back({r.id, ComplexVector::real({r.v[0], r.v[1], r.v[2], r.v[3]}), r.p});
  return f;
}

std::string description() {
  return "Reproduces the built-in 10-message, 4-dimensional worked example (k = 2) and compares\n"
         "every recomputed quantity with its published value.\n"
         "Corrections applied to the published listing: vectors are unit-normalized (the printed\n"
         "prefactors 1/sqrt5, 1/sqrt6, ... are not normalizations), and p(e) = ... = p(j) = 1/60\n"
         "(the printed 0.3/3 would make the probabilities sum to 1.5).\n"
         "The published decoder has columns 2 and 3 exchanged relative to the inverse of the\n"
         "published encoder, so its entry checks cannot pass for any correct decoder.";
}

bool GoldenCheck::passed() const { return std::abs(published - computed) <= tolerance; }

std::vector<GoldenCheck> golden_checks() {
  const io::EnsembleFile file = ensemble_file();
  const SourceEnsemble ensemble = io::to_ensemble(file);
  const Codebook codebook = build_codebook(ensemble, file.k);
  const SideChannel side = build_side_channel(ensemble, codebook);
  const CompressionReport rep = build_report(ensemble, codebook, side);
  const ComplexMatrix sigma = message_matrix(ensemble);

  std::vector<GoldenCheck> out;
  auto add = [&](std::string name, double published, double computed, double tol) {
    out.push_back({std::move(name), published, computed, tol});
  };
  auto idx = [](const char* what, std::size_t i, std::size_t j) {
    return std::string(what) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
  };

  add("H(Sigma)", kShannonH, rep.shannon_entropy, 5e-5);
  add("I0(X)", kRawClassical, rep.raw_classical, 5e-5);
  add("H/I0(X)", kClassicalRate, rep.classical_rate, 5e-6);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      add(idx("sigma", i, j), kSigma[i][j], sigma(i, j).real(), 1e-5);
      add(idx("Im sigma", i, j), 0.0, sigma(i, j).imag(), 1e-12);
    }
  add("S(sigma)", kVonNeumannS, rep.von_neumann_entropy, 5e-5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) add(idx("omega", i, j), kBasis[i][j], codebook.basis()[i][j].real(), 1e-5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) add(idx("C", i, j), kEncoder[i][j], codebook.encoder()(i, j).real(), 1e-5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) add(idx("D", i, j), kDecoder[i][j], codebook.decoder()(i, j).real(), 1e-5);

  // Published D against the computed decoder with columns 2 and 3 exchanged.
  double swapped = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const std::size_t col = j == 1 ? 2 : (j == 2 ? 1 : j);
      swapped = std::max(swapped, std::abs(kDecoder[i][j] - codebook.decoder()(i, col).real()));
    }
  add("D vs swapped cols", 0.0, swapped, 1e-5);

  const ComplexMatrix dc = codebook.decoder() * codebook.encoder();
  add("max|DC - 1|", 0.0, max_abs_diff(dc, ComplexMatrix::identity(4)), 1e-9);

  const char* ids = "abcdefghij";
  const int published_lengths[] = {0, 1, 1, 1, 2, 2, 2, 2, 2, 2};
  for (int m = 0; m < 10; ++m)
    add(std::string("base length ") + ids[m], published_lengths[m],
        codebook.base_length_of(std::string(1, ids[m])), 0.0);

  add("p_0", 0.6, side.distribution.probability(0), 1e-12);
  add("p_1", 0.3, side.distribution.probability(1), 1e-12);
  add("p_2", 0.1, side.distribution.probability(2), 1e-12);
  add("L'", kHuffmanAverage, rep.huffman_average, 1e-12);
  add("I'", kSideEntropy, rep.side_channel_entropy, 5e-5);
  add("I_c", kCodeInformation, rep.code_information, 1e-12);
  add("I0(V)", kRawQuantum, rep.raw_quantum, 1e-12);
  add("R_c", kRateQuantum, rep.rate_quantum, 1e-12);
  add("I_tot", kTotalInformation, rep.total_information, 5e-5);
  add("I_eff", kEffectiveInformation, rep.effective_information, 1e-12);
  add("R_tot", kRateTotal, rep.rate_total, 5e-5);
  add("R_eff", kRateEffective, rep.rate_effective, 1e-12);
  add("I_c < S", 1.0, rep.code_information < rep.von_neumann_entropy ? 1.0 : 0.0, 0.0);
  add("I_tot < H", 1.0, rep.total_information < rep.shannon_entropy ? 1.0 : 0.0, 0.0);
  add("I_tot > S", 1.0, rep.total_information > rep.von_neumann_entropy ? 1.0 : 0.0, 0.0);
  return out;
}

}  // namespace vlq::reference
