#include <cmath>
#include <utility>

#include "doctest.h"
#include "vlq/error.hpp"
#include "vlq/io.hpp"
#include "vlq/protocol.hpp"
#include "vlq/reference_example.hpp"
#include "vlq/verify.hpp"

using vlq::Complex;
using vlq::ComplexVector;

namespace {

struct Fixture {
  vlq::SourceEnsemble ensemble = vlq::io::to_ensemble(vlq::reference::ensemble_file());
  vlq::Codebook codebook = vlq::build_codebook(ensemble, 2);
  vlq::SideChannel side = vlq::build_side_channel(ensemble, codebook);
  const vlq::SourceMessage& msg(const std::string& id) const { return ensemble.messages()[ensemble.index_of(id)]; }
};

}  // namespace

TEST_CASE("sending the reference messages") {
  const Fixture f;
  const auto a = vlq::alice_send(f.codebook, f.side.table, f.msg("a"));
  CHECK(a.bits == "1");
  CHECK(a.payload.length == 0);
  CHECK(a.payload.amps.dim() == 1);
  CHECK(std::abs(a.payload.amps[0] - 1.0) <= 1e-12);

  const auto b = vlq::alice_send(f.codebook, f.side.table, f.msg("b"));
  CHECK(b.bits == "01");
  CHECK(b.payload.length == 1);
  REQUIRE(b.payload.amps.dim() == 2);
  CHECK(b.payload.amps[0].real() == doctest::Approx(5.0 / (2.0 * std::sqrt(7.0))).epsilon(1e-12));
  CHECK(b.payload.amps[1].real() == doctest::Approx(std::sqrt(3.0 / 28.0)).epsilon(1e-12));

  const auto e = vlq::alice_send(f.codebook, f.side.table, f.msg("e"));
  CHECK(e.bits == "00");
  CHECK(e.payload.amps.dim() == 4);

  // w_4 goes to |11>
  const vlq::SourceMessage w4{"w4", f.codebook.basis()[3], 1.0};
  auto cb = f.codebook;
  auto bl = cb.base_lengths();
  bl["w4"] = 2;
  const vlq::Codebook cb2(cb.spec(), cb.basis(), cb.encoder(), cb.decoder(), cb.code_lengths(), bl);
  const auto t4 = vlq::alice_send(cb2, f.side.table, w4);
  CHECK(std::abs(t4.payload.amps[3] - 1.0) <= 1e-12);
  CHECK(std::abs(t4.payload.amps[0]) <= 1e-12);

  CHECK_THROWS_AS(vlq::alice_send(f.codebook, f.side.table, vlq::SourceMessage{"zz", f.ensemble.state(0), 1.0}),
                  vlq::DomainError);
}

TEST_CASE("receiving the reference messages") {
  const Fixture f;
  const auto a = vlq::bob_receive(f.codebook, f.side.table, "1", vlq::QuantumPayload{});
  CHECK(vlq::max_abs_diff(a, f.ensemble.state(0)) <= 1e-12);
  for (std::size_t m = 0; m < f.ensemble.size(); ++m) {
    const auto tx = vlq::alice_send(f.codebook, f.side.table, f.ensemble.messages()[m]);
    const auto back = vlq::bob_receive(f.codebook, f.side.table, tx.bits, tx.payload);
    CHECK(std::norm(vlq::inner(f.ensemble.state(m), back)) >= 1.0 - 1e-12);
  }
  const auto b = vlq::alice_send(f.codebook, f.side.table, f.msg("b"));
  CHECK_THROWS_AS(vlq::bob_receive(f.codebook, f.side.table, "1", b.payload), vlq::DimensionError);
  CHECK_THROWS_AS(vlq::bob_receive(f.codebook, f.side.table, "0", b.payload), vlq::FramingError);
  CHECK_THROWS_AS(vlq::bob_receive(f.codebook, f.side.table, "011", b.payload), vlq::FramingError);
}

TEST_CASE("sampling") {
  const Fixture f;
  CHECK(vlq::sample_message(f.ensemble, 0.0) == 0);
  CHECK(vlq::sample_message(f.ensemble, 0.5999) == 0);
  CHECK(vlq::sample_message(f.ensemble, 0.6001) == 1);
  CHECK(vlq::sample_message(f.ensemble, 0.7001) == 2);
  CHECK(vlq::sample_message(f.ensemble, 0.9999999) == 9);
}

TEST_CASE("a one-message session that draws a") {
  const Fixture f;
  // first uniform of seed 0 selects an index; search a seed whose draw is < 0.6
  std::uint64_t seed = 0;
  for (;; ++seed) {
    vlq::Rng rng(seed);
    if (vlq::uniform01(rng) < 0.6) break;
  }
  const auto t = vlq::run_session(f.ensemble, f.codebook, f.side.table, 1, seed);
  REQUIRE(t.n() == 1);
  CHECK(t.records[0].message_id == "a");
  CHECK(t.totals.digits == 0);
  CHECK(t.totals.classical_bits == 1);
  CHECK(vlq::verify_lossless(t, f.ensemble));
  CHECK_THROWS_AS(vlq::run_session(f.ensemble, f.codebook, f.side.table, 0, 1), vlq::DomainError);
}

TEST_CASE("long sessions") {
  const Fixture f;
  const std::size_t n = 10000;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto t = vlq::run_session(f.ensemble, f.codebook, f.side.table, n, seed, "h");
    CHECK(vlq::verify_lossless(t, f.ensemble));
    CHECK(t.totals.mean_fidelity >= 1.0 - 1e-9);

    // conservation
    std::uint64_t digits = 0, bits = 0;
    for (std::size_t i = 0; i < t.n(); ++i) {
      const auto& r = t.records[i];
      CHECK(r.index == i);
      digits += static_cast<std::uint64_t>(f.codebook.base_length_of(r.message_id));
      bits += f.side.table.at(r.base_length).size();
      CHECK(r.digits_sent == r.base_length);
    }
    CHECK(t.totals.digits == digits);
    CHECK(t.totals.classical_bits == bits);

    // Var(L) = 0.45 gives 3 SE ~ 0.02 at n = 10^4
    const double mean_digits = static_cast<double>(digits) / n;
    const double mean_bits = static_cast<double>(bits) / n;
    CHECK(mean_digits >= 0.48);
    CHECK(mean_digits <= 0.52);
    CHECK(mean_bits >= 1.36);
    CHECK(mean_bits <= 1.44);
  }
}

TEST_CASE("side-channel stream is the concatenation of record bits") {
  const Fixture f;
  const auto t = vlq::run_session(f.ensemble, f.codebook, f.side.table, 500, 99);
  std::vector<int> lengths;
  for (const auto& r : t.records) lengths.push_back(r.base_length);
  CHECK(t.side_channel_stream() == vlq::encode_lengths(f.side.table, lengths).to_string());
  CHECK(vlq::decode_lengths(f.side.table, vlq::BitStream(t.side_channel_stream()), t.n()) == lengths);
}

TEST_CASE("sessions are deterministic") {
  const Fixture f;
  const auto a = vlq::run_session(f.ensemble, f.codebook, f.side.table, 2000, 7, "x");
  const auto b = vlq::run_session(f.ensemble, f.codebook, f.side.table, 2000, 7, "x");
  CHECK(vlq::io::emit_transcript(a) == vlq::io::emit_transcript(b));
  const auto c = vlq::run_session(f.ensemble, f.codebook, f.side.table, 2000, 8, "x");
  CHECK(vlq::io::emit_transcript(a) != vlq::io::emit_transcript(c));
}

TEST_CASE("replay from storage") {
  const Fixture f;
  const auto t = vlq::run_session(f.ensemble, f.codebook, f.side.table, 300, 5);
  auto stored = vlq::io::parse_transcript(vlq::io::emit_transcript(t));
  CHECK_FALSE(vlq::verify_lossless(stored, f.ensemble));  // nothing decoded yet
  const auto replayed = vlq::replay(stored, f.ensemble, f.codebook, f.side.table);
  CHECK(vlq::verify_lossless(replayed, f.ensemble));
  CHECK(replayed.totals.digits == t.totals.digits);
  CHECK(replayed.totals.classical_bits == t.totals.classical_bits);
  for (std::size_t i = 0; i < t.n(); ++i) CHECK(vlq::max_abs_diff(*replayed.records[i].decoded, *t.records[i].decoded) <= 1e-15);
}

TEST_CASE("a corrupted payload is detected") {
  const Fixture f;
  auto t = vlq::run_session(f.ensemble, f.codebook, f.side.table, 200, 11);
  std::size_t victim = t.n();
  for (std::size_t i = 0; i < t.n(); ++i)
    if (t.records[i].base_length >= 1) {
      victim = i;
      break;
    }
  REQUIRE(victim < t.n());
  auto& amps = t.records[victim].payload.amps;
  std::swap(amps[0], amps[1]);  // bit flip on the last digit
  const auto replayed = vlq::replay(t, f.ensemble, f.codebook, f.side.table);
  CHECK_FALSE(vlq::verify_lossless(replayed, f.ensemble));
  CHECK(replayed.records[victim].fidelity < 1.0 - 1e-3);

  auto desync = vlq::run_session(f.ensemble, f.codebook, f.side.table, 50, 11);
  desync.records[0].classical_bits += "1";
  CHECK_THROWS_AS(vlq::replay(desync, f.ensemble, f.codebook, f.side.table), vlq::Error);
}

TEST_CASE("empty transcript is vacuously lossless") {
  const Fixture f;
  CHECK(vlq::verify_lossless(vlq::SessionTranscript{}, f.ensemble));
  const auto t = vlq::compute_totals({});
  CHECK(t.digits == 0);
  CHECK(t.mean_fidelity == 1.0);
}

TEST_CASE("sessions on random ensembles are lossless") {
  vlq::Rng rng(4040);
  for (int t = 0; t < 20; ++t) {
    const auto e = vlq::verify::random_ensemble(rng);
    const int k = 2 + t % 3;
    const auto cb = vlq::build_codebook(e, k);
    const auto side = vlq::build_side_channel(e, cb);
    const auto s = vlq::run_session(e, cb, side.table, 500, static_cast<std::uint64_t>(t));
    CHECK(vlq::verify_lossless(s, e));
  }
}
