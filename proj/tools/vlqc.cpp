// vlqc: build lossless variable-length quantum codes, simulate the
// two-channel protocol and check the information-theoretic bounds.
//
// Exit codes: 0 success, 1 check failure, 2 parse/usage error,
// 3 degenerate ensemble, 4 write failure.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vlq/codec.hpp"
#include "vlq/error.hpp"
#include "vlq/io.hpp"
#include "vlq/kernels.hpp"
#include "vlq/metrics.hpp"
#include "vlq/protocol.hpp"
#include "vlq/reference_example.hpp"
#include "vlq/sidechannel.hpp"
#include "vlq/verify.hpp"

namespace {

enum Exit : int { kOk = 0, kCheckFailed = 1, kParse = 2, kDegenerate = 3, kWrite = 4 };

std::string num(double x, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

void print_report(const vlq::CompressionReport& r, const vlq::SideChannel& side) {
  auto row = [](const char* label, const std::string& v) {
    std::cout << "  " << std::left << std::setw(34) << label << v << "\n";
  };
  std::cout << "code: k=" << r.k << " r=" << r.r << " dim V=" << r.source_dim << " messages=" << r.message_count
            << "\n";
  row("Shannon entropy H", num(r.shannon_entropy));
  row("von Neumann entropy S", num(r.von_neumann_entropy));
  row("raw information I0(X)", num(r.raw_classical));
  row("raw quantum information I0(V)", num(r.raw_quantum));
  row("code information I_c", num(r.code_information));
  row("side-channel entropy I'", num(r.side_channel_entropy));
  row("Huffman average L'", num(r.huffman_average));
  row("I_tot = I_c + I'", num(r.total_information));
  row("I_eff = I_c + L'", num(r.effective_information));
  row("R_c", num(r.rate_quantum));
  row("R_tot", num(r.rate_total));
  row("R_eff", num(r.rate_effective));
  row("Huffman Kraft sum", num(r.kraft_sum));
  row("quantum Kraft trace", num(r.quantum_kraft_trace) + (r.quantum_kraft_admissible ? " (<= 1)" : " (> 1)"));
  row("Tr(sigma L_c)", num(r.length_operator_trace));
  row("lower bound I_c + I' >= S", std::string(r.lower_bound_satisfied ? "holds" : "VIOLATED") +
                                       " (slack " + num(r.lower_bound_slack) + ")");
  row("upper bound", r.upper_bound_satisfied ? "holds" : "VIOLATED");
  std::cout << "  side channel:";
  for (const auto& [l, c] : side.table)
    std::cout << "  L=" << l << " p=" << num(side.distribution.probability(l)) << " code=" << c;
  std::cout << "\n";
}

struct Loaded {
  vlq::io::EnsembleFile file;
  vlq::SourceEnsemble ensemble;
};

Loaded load(const std::string& path) {
  vlq::io::EnsembleFile f = vlq::io::read_ensemble_file(path);
  vlq::SourceEnsemble e = vlq::io::to_ensemble(f);
  return {std::move(f), std::move(e)};
}

int cmd_analyze(const std::string& path, const std::string& out, double tol) {
  const Loaded in = load(path);
  const vlq::Codebook cb = vlq::build_codebook(in.ensemble, in.file.k, tol);
  const vlq::SideChannel side = vlq::build_side_channel(in.ensemble, cb);
  const auto report = vlq::io::make_report_file(in.ensemble, cb, side);
  print_report(report.report, side);
  if (!out.empty()) vlq::io::write_file(out, vlq::io::emit_report(report));
  return kOk;
}

int cmd_simulate(const std::string& path, std::size_t n, std::uint64_t seed, const std::string& out, double tol) {
  if (n == 0) throw vlq::ParseError("--n must be >= 1", "--n");
  const Loaded in = load(path);
  const vlq::Codebook cb = vlq::build_codebook(in.ensemble, in.file.k, tol);
  const vlq::SideChannel side = vlq::build_side_channel(in.ensemble, cb);
  const auto t = vlq::run_session(in.ensemble, cb, side.table, n, seed, vlq::io::ensemble_hash(in.file));
  if (!out.empty()) vlq::io::write_file(out, vlq::io::emit_transcript(t));
  const bool ok = vlq::verify_lossless(t, in.ensemble);
  const double nn = static_cast<double>(n);
  std::cout << "messages            " << n << "\n"
            << "quantum digits      " << t.totals.digits << " (" << num(t.totals.digits / nn) << " per message)\n"
            << "classical bits      " << t.totals.classical_bits << " (" << num(t.totals.classical_bits / nn)
            << " per message)\n"
            << "mean fidelity       " << num(t.totals.mean_fidelity, 15) << "\n"
            << "lossless            " << (ok ? "yes" : "NO") << "\n";
  return ok ? kOk : kCheckFailed;
}

int cmd_replay(const std::string& path, const std::string& transcript_path, double tol) {
  const Loaded in = load(path);
  const vlq::Codebook cb = vlq::build_codebook(in.ensemble, in.file.k, tol);
  const vlq::SideChannel side = vlq::build_side_channel(in.ensemble, cb);
  const auto stored = vlq::io::parse_transcript(vlq::io::read_file(transcript_path));
  if (!stored.ensemble_hash.empty() && stored.ensemble_hash != vlq::io::ensemble_hash(in.file))
    throw vlq::ParseError("transcript was recorded for a different ensemble", transcript_path);
  const auto t = vlq::replay(stored, in.ensemble, cb, side.table);
  const bool ok = vlq::verify_lossless(t, in.ensemble);
  std::cout << "replayed " << t.n() << " records, " << t.totals.digits << " quantum digits, "
            << t.totals.classical_bits << " classical bits, mean fidelity " << num(t.totals.mean_fidelity, 15)
            << "\nlossless " << (ok ? "yes" : "NO") << "\n";
  return ok ? kOk : kCheckFailed;
}

int cmd_verify(const std::string& path, std::size_t trials, std::uint64_t seed, double tol,
               const std::string& fault) {
  vlq::verify::Options o;
  o.trials = trials;
  o.seed = seed;
  o.tol = tol;
  if (fault == "isometry") {
    o.fault = vlq::verify::Fault::NonIsometricEncoder;
  } else if (!fault.empty()) {
    throw vlq::ParseError("unknown fault '" + fault + "'", "--inject-fault");
  }
  if (!path.empty()) o.ensemble = vlq::io::read_ensemble_file(path);
  const auto results = vlq::verify::run(o);
  for (const auto& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(24) << r.name << r.cases
              << " cases\n";
    if (!r.passed) std::cout << "       counterexample: " << r.counterexample << "\n";
  }
  return vlq::verify::all_passed(results) ? kOk : kCheckFailed;
}

int cmd_reference(const std::string& out) {
  const auto checks = vlq::reference::golden_checks();
  bool ok = true;
  std::cout << std::left << std::setw(20) << "quantity" << std::setw(14) << "published" << std::setw(20)
            << "computed" << std::setw(12) << "|diff|" << "tol\n";
  for (const auto& c : checks) {
    const bool pass = c.passed();
    ok = ok && pass;
    std::cout << std::left << std::setw(20) << c.name << std::setw(14) << num(c.published) << std::setw(20)
              << num(c.computed, 12) << std::setw(12) << num(std::abs(c.published - c.computed), 3)
              << num(c.tolerance, 2) << (pass ? "" : "  MISMATCH") << "\n";
  }
  if (!out.empty()) {
    const auto file = vlq::reference::ensemble_file();
    const auto ensemble = vlq::io::to_ensemble(file);
    const auto cb = vlq::build_codebook(ensemble, file.k);
    vlq::io::write_file(out, vlq::io::emit_report(vlq::io::make_report_file(ensemble, cb, vlq::build_side_channel(ensemble, cb))));
  }
  std::cout << (ok ? "all published values reproduced\n" : "some published values were not reproduced\n");
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lossless variable-length quantum coding with a classical length side-channel"};
  app.require_subcommand(1);

  std::string ensemble;
  std::string out;
  std::string transcript;
  std::string fault;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  double tol = vlq::kDependenceTol;

  auto* analyze = app.add_subcommand("analyze", "Build the code for an ensemble and report every measure");
  analyze->add_option("--ensemble", ensemble, "Ensemble file (JSON)")->required();
  analyze->add_option("--out", out, "Write the report document here");
  analyze->add_option("--tol", tol, "Linear-dependence tolerance");

  auto* simulate = app.add_subcommand("simulate", "Run a send/receive session and write its transcript");
  simulate->add_option("--ensemble", ensemble, "Ensemble file (JSON)")->required();
  simulate->add_option("--n", n, "Number of messages")->required();
  simulate->add_option("--seed", seed, "Sampling seed");
  simulate->add_option("--out", out, "Transcript file (JSON lines)");
  simulate->add_option("--tol", tol, "Linear-dependence tolerance");

  auto* replay = app.add_subcommand("replay", "Decode a stored transcript and check fidelity");
  replay->add_option("--ensemble", ensemble, "Ensemble file (JSON)")->required();
  replay->add_option("--transcript", transcript, "Transcript file")->required();
  replay->add_option("--tol", tol, "Linear-dependence tolerance");

  auto* verify = app.add_subcommand("verify", "Run the property suites on random (and optional given) ensembles");
  verify->add_option("--ensemble", ensemble, "Also check this ensemble file");
  verify->add_option("--trials", trials, "Random ensembles to generate");
  verify->add_option("--seed", seed, "Master seed")->default_val(20240601);
  verify->add_option("--tol", tol, "Linear-dependence tolerance");
  verify->add_option("--inject-fault", fault, "Testing hook: 'isometry' corrupts every encoder");

  auto* reference = app.add_subcommand("reference-example", vlq::reference::description());
  reference->add_option("--out", out, "Write the report document here");

  auto* kernels = app.add_subcommand("kernels", "Show the selected SIMD kernel backend");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(ensemble, out, tol);
    if (simulate->parsed()) return cmd_simulate(ensemble, n, seed, out, tol);
    if (replay->parsed()) return cmd_replay(ensemble, transcript, tol);
    if (verify->parsed()) return cmd_verify(ensemble, trials, seed, tol, fault);
    if (reference->parsed()) return cmd_reference(out);
    if (kernels->parsed()) {
      std::cout << vlq::kernels::backend_name(vlq::kernels::active_backend()) << "\n";
      return kOk;
    }
  } catch (const vlq::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const vlq::DegenerateEnsembleError& e) {
    std::cerr << "error: degenerate ensemble: " << e.what() << "\n";
    return kDegenerate;
  } catch (const vlq::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kWrite;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kParse;
}
