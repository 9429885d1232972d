#include <cmath>

#include "doctest.h"
#include "vlq/codec.hpp"
#include "vlq/error.hpp"
#include "vlq/io.hpp"
#include "vlq/metrics.hpp"
#include "vlq/reference_example.hpp"
#include "vlq/verify.hpp"

using vlq::Complex;
using vlq::ComplexMatrix;
using vlq::ComplexVector;
using vlq::SourceEnsemble;

namespace {

SourceEnsemble reference() { return vlq::io::to_ensemble(vlq::reference::ensemble_file()); }

const double kC[4][4] = {{0.5, 0.5, 0.5, 0.5},
                         {-0.288675, 0.866025, -0.288675, -0.288675},
                         {0.408248, 0, 0.408248, -0.816497},
                         {0.707107, 0, -0.707107, 0}};

}  // namespace

TEST_CASE("ensemble validation") {
  using M = vlq::SourceMessage;
  CHECK_THROWS_AS(SourceEnsemble({}), vlq::DegenerateEnsembleError);
  CHECK_THROWS_AS(SourceEnsemble({M{"a", ComplexVector::real({1, 0}), 0.5}}), vlq::DegenerateEnsembleError);
  CHECK_THROWS_AS(SourceEnsemble({M{"a", ComplexVector::real({1, 0}), 0.5}, M{"a", ComplexVector::real({0, 1}), 0.5}}),
                  vlq::DegenerateEnsembleError);
  CHECK_THROWS_AS(SourceEnsemble({M{"a", ComplexVector::real({1, 0}), 1.0}, M{"b", ComplexVector::real({0, 1}), 0.0}}),
                  vlq::DegenerateEnsembleError);
  CHECK_THROWS_AS(SourceEnsemble({M{"a", ComplexVector::real({1, 0}), 0.5}, M{"b", ComplexVector::real({0, 1, 0}), 0.5}}),
                  vlq::DegenerateEnsembleError);
  CHECK_THROWS_AS(SourceEnsemble({M{"a", ComplexVector(2), 1.0}}), vlq::DegenerateEnsembleError);
  const SourceEnsemble ok({M{"a", ComplexVector::real({3, 4}), 1.0}});
  CHECK(ok.state(0)[0].real() == doctest::Approx(0.6));
  CHECK_THROWS_AS(ok.index_of("zz"), vlq::DomainError);
}

TEST_CASE("select independent on the reference ensemble") {
  const auto kept = vlq::select_independent(reference());
  REQUIRE(kept.size() == 4);
  CHECK(kept[0].id == "a");
  CHECK(kept[1].id == "b");
  CHECK(kept[2].id == "e");
  CHECK(kept[3].id == "f");
  // c = 2b - a, d = 3b - 2a in unnormalized coordinates
  const auto a = ComplexVector::real({1, 1, 1, 1});
  const auto b = ComplexVector::real({1, 2, 1, 1});
  CHECK(vlq::max_abs_diff(2.0 * b - a, ComplexVector::real({1, 3, 1, 1})) == 0.0);
  CHECK(vlq::max_abs_diff(3.0 * b - 2.0 * a, ComplexVector::real({1, 4, 1, 1})) == 0.0);
}

TEST_CASE("select independent edge cases") {
  using M = vlq::SourceMessage;
  const SourceEnsemble orth({M{"x", ComplexVector::real({1, 0, 0}), 0.2}, M{"y", ComplexVector::real({0, 1, 0}), 0.5},
                             M{"z", ComplexVector::real({0, 0, 1}), 0.3}});
  const auto kept = vlq::select_independent(orth);
  REQUIRE(kept.size() == 3);
  CHECK(kept[0].id == "y");
  CHECK(kept[1].id == "z");
  CHECK(kept[2].id == "x");

  const SourceEnsemble twins({M{"p", ComplexVector::real({1, 1}), 0.5}, M{"q", ComplexVector::real({1, 1}), 0.5}});
  const auto one = vlq::select_independent(twins);
  REQUIRE(one.size() == 1);
  CHECK(one[0].id == "p");  // stable on ties
}

TEST_CASE("minimal register length") {
  CHECK(vlq::minimal_register_length(1, 2) == 0);
  CHECK(vlq::minimal_register_length(2, 2) == 1);
  CHECK(vlq::minimal_register_length(4, 2) == 2);
  CHECK(vlq::minimal_register_length(5, 2) == 3);
  CHECK(vlq::minimal_register_length(9, 3) == 2);
  CHECK(vlq::minimal_register_length(10, 3) == 3);
}

TEST_CASE("reference codebook") {
  const auto e = reference();
  const auto cb = vlq::build_codebook(e, 2);
  CHECK(cb.spec().r() == 2);
  CHECK(cb.code_dim() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(cb.encoder()(i, j).real() - kC[i][j]) <= 1e-6);
  CHECK(cb.code_lengths() == std::vector<int>{0, 1, 2, 2});
  const std::map<std::string, int> expected{{"a", 0}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", 2},
                                            {"f", 2}, {"g", 2}, {"h", 2}, {"i", 2}, {"j", 2}};
  CHECK(cb.base_lengths() == expected);
  CHECK(vlq::max_abs_diff(cb.decoder(), cb.encoder().adjoint()) == 0.0);
  CHECK(vlq::max_abs_diff(cb.decoder() * cb.encoder(), ComplexMatrix::identity(4)) <= 1e-12);
  CHECK_THROWS_AS(cb.base_length_of("nope"), vlq::DomainError);

  // codeword of w_i is |Z_2^2(i-1)>
  for (std::size_t i = 0; i < 4; ++i) {
    const auto s = vlq::encode(cb, cb.basis()[i]);
    CHECK(std::abs(s.amps()[i] - 1.0) <= 1e-12);
  }
}

TEST_CASE("encode and decode the reference messages") {
  const auto e = reference();
  const auto cb = vlq::build_codebook(e, 2);
  const auto a = vlq::encode(cb, e.state(0));
  CHECK(std::abs(a.amps()[0] - 1.0) <= 1e-12);
  CHECK(vlq::max_abs_diff(vlq::decode(cb, a), e.state(0)) <= 1e-12);

  // C|b> = (5/(2 sqrt 7), sqrt(3/28), 0, 0)
  const auto b = vlq::encode(cb, e.state(1));
  CHECK(b.amps()[0].real() == doctest::Approx(5.0 / (2.0 * std::sqrt(7.0))).epsilon(1e-13));
  CHECK(b.amps()[1].real() == doctest::Approx(std::sqrt(3.0 / 28.0)).epsilon(1e-13));
  CHECK(std::abs(b.amps()[2]) <= 1e-15);
  CHECK(std::abs(b.amps()[3]) <= 1e-15);

  for (std::size_t m = 0; m < e.size(); ++m) {
    const auto s = vlq::encode(cb, e.state(m));
    CHECK(vlq::base_length(s) == cb.base_length_of(e.messages()[m].id));
    CHECK(vlq::max_abs_diff(vlq::decode(cb, s), e.state(m)) <= 1e-10);
  }
}

TEST_CASE("encode rejects vectors outside the source space") {
  using M = vlq::SourceMessage;
  const SourceEnsemble e({M{"x", ComplexVector::real({1, 0, 0}), 0.5}, M{"y", ComplexVector::real({0, 1, 0}), 0.5}});
  const auto cb = vlq::build_codebook(e, 2);
  CHECK(cb.spec().r() == 1);
  CHECK_THROWS_AS(vlq::encode(cb, ComplexVector::real({0, 0, 1})), vlq::DomainError);
  CHECK_THROWS_AS(vlq::encode(cb, ComplexVector::real({1, 1, 0})), vlq::DomainError);  // not unit
  CHECK_THROWS_AS(vlq::encode(cb, ComplexVector::real({1, 0})), vlq::DimensionError);
}

TEST_CASE("decode rejects states outside the code space") {
  using M = vlq::SourceMessage;
  const SourceEnsemble e({M{"x", ComplexVector::real({1, 0, 0}), 0.4}, M{"y", ComplexVector::real({0, 1, 0}), 0.3},
                          M{"z", ComplexVector::real({0, 0, 1}), 0.3}});
  const auto cb = vlq::build_codebook(e, 2);
  REQUIRE(cb.code_dim() == 3);
  REQUIRE(cb.spec().dim() == 4);
  CHECK_THROWS_AS(vlq::decode(cb, vlq::VariableLengthState::basis(cb.spec(), 3)), vlq::DomainError);
  CHECK_THROWS_AS(vlq::decode(cb, vlq::VariableLengthState::basis(vlq::RegisterSpec(2, 3), 0)), vlq::DimensionError);
}

TEST_CASE("isometry and losslessness on random spans") {
  vlq::Rng rng(101);
  for (int t = 0; t < 10; ++t) {
    const auto e = vlq::verify::random_ensemble(rng);
    const int k = 2 + t % 3;
    const auto cb = vlq::build_codebook(e, k);
    CHECK(cb.spec().r() == vlq::minimal_register_length(cb.code_dim(), k));
    for (int s = 0; s < 100; ++s) {
      const auto x = vlq::verify::random_in_span(rng, cb.basis());
      const auto y = vlq::verify::random_in_span(rng, cb.basis());
      CHECK(std::abs(vlq::inner(cb.encoder() * x, cb.encoder() * y) - vlq::inner(x, y)) <= 1e-9);
      const auto back = vlq::decode(cb, vlq::encode(cb, x));
      CHECK(vlq::max_abs_diff(back, x) <= 1e-9);
      CHECK(std::norm(vlq::inner(x, back)) >= 1 - 1e-12);
    }
    // code lengths are ceil(log_k i), non-decreasing
    for (std::size_t i = 0; i < cb.code_dim(); ++i) {
      int expect = 0;
      std::uint64_t p = 1;
      while (p < i + 1) {
        p *= static_cast<std::uint64_t>(k);
        ++expect;
      }
      CHECK(cb.code_lengths()[i] == expect);
      if (i > 0) CHECK(cb.code_lengths()[i] >= cb.code_lengths()[i - 1]);
    }
    // base-length soundness
    for (std::size_t m = 0; m < e.size(); ++m) {
      const auto s = vlq::encode(cb, e.state(m));
      const int L = cb.base_length_of(e.messages()[m].id);
      for (std::size_t i = 0; i < s.amps().dim(); ++i)
        if (vlq::significant_length(i, k) > L) CHECK(std::abs(s.amps()[i]) <= 1e-12);
      CHECK_NOTHROW(vlq::truncate(s, L));
    }
  }
}

TEST_CASE("message matrix") {
  const auto sigma = vlq::message_matrix(reference());
  CHECK(std::abs(sigma(0, 0).real() - 0.214549) <= 1e-6);
  CHECK(std::abs(sigma(0, 1).real() - 0.224624) <= 1e-6);
  CHECK(std::abs(sigma(1, 1).real() - 0.40302) <= 1e-6);
  // sigma_11 by hand: 0.6/4 + 0.1 (1/7 + 1/12 + 1/19) + (1/60)(1/2 + 4/5 + 9/10)
  const double s11 = 0.15 + 0.1 * (1.0 / 7 + 1.0 / 12 + 1.0 / 19) + (0.5 + 0.8 + 0.9) / 60.0;
  CHECK(sigma(0, 0).real() == doctest::Approx(s11).epsilon(1e-14));
  CHECK(sigma.is_hermitian());
  CHECK(std::abs(sigma.trace() - 1.0) <= 1e-12);

  using M = vlq::SourceMessage;
  const SourceEnsemble pure({M{"x", ComplexVector{{0.6, 0}, {0, 0.8}}, 1.0}});
  const auto rho = vlq::message_matrix(pure);
  CHECK(vlq::max_abs_diff(rho * rho, rho) <= 1e-15);
  const SourceEnsemble uni({M{"x", ComplexVector::real({1, 0, 0}), 1 / 3.0}, M{"y", ComplexVector::real({0, 1, 0}), 1 / 3.0},
                            M{"z", ComplexVector::real({0, 0, 1}), 1 / 3.0}});
  auto third = ComplexMatrix::identity(3);
  third *= 1 / 3.0;
  CHECK(vlq::max_abs_diff(vlq::message_matrix(uni), third) <= 1e-15);
}

TEST_CASE("code length operator") {
  const auto e = reference();
  const auto cb = vlq::build_codebook(e, 2);
  const auto op = vlq::code_length_operator(cb);
  CHECK(op.diagonal == std::vector<double>{0, 1, 2, 2});
  CHECK(op.ambient.is_hermitian());
  CHECK(op.ambient.trace().real() == doctest::Approx(5.0));
  // w_i are eigenvectors with eigenvalue L_c(w_i)
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(vlq::max_abs_diff(op.ambient * cb.basis()[i], op.diagonal[i] * cb.basis()[i]) <= 1e-12);
  // Tr(sigma L_c) is bounded by the average base length
  const double tr = (vlq::message_matrix(e) * op.ambient).trace().real();
  double avg = 0.0;
  for (const auto& m : e.messages()) avg += m.probability * cb.base_length_of(m.id);
  CHECK(avg == doctest::Approx(0.5));
  CHECK(tr <= avg + 1e-12);

  // block code: all codewords of one length n -> n * identity on the span
  using M = vlq::SourceMessage;
  const SourceEnsemble single({M{"x", ComplexVector::real({1, 2}), 1.0}});
  const auto cb1 = vlq::build_codebook(single, 2);
  CHECK(vlq::code_length_operator(cb1).diagonal == std::vector<double>{0});
}

TEST_CASE("entropy of the message matrix is the same through the report") {
  const auto e = reference();
  const auto cb = vlq::build_codebook(e, 2);
  const auto side = vlq::build_side_channel(e, cb);
  const auto rep = vlq::build_report(e, cb, side);
  CHECK(rep.von_neumann_entropy == vlq::von_neumann_entropy(vlq::message_matrix(e)));
  double sum = 0.0;
  for (double l : vlq::density_eigenvalues(vlq::message_matrix(e))) sum += l;
  CHECK(std::abs(sum - 1.0) <= 1e-9);
}
