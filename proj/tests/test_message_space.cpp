#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "doctest.h"
#include "vlq/error.hpp"
#include "vlq/message_space.hpp"
#include "vlq/random.hpp"

using vlq::Complex;
using vlq::ComplexVector;
using vlq::RegisterSpec;
using vlq::VariableLengthState;

namespace {

VariableLengthState superposition(RegisterSpec spec, std::initializer_list<std::size_t> idx) {
  ComplexVector v(spec.dim());
  for (auto i : idx) v[i] = 1.0 / std::sqrt(static_cast<double>(idx.size()));
  return VariableLengthState(spec, v);
}

}  // namespace

TEST_CASE("register spec") {
  CHECK(RegisterSpec(2, 2).dim() == 4);
  CHECK(RegisterSpec(16, 0).dim() == 1);
  CHECK_THROWS_AS(RegisterSpec(1, 2), vlq::DomainError);
  CHECK_THROWS_AS(RegisterSpec(2, -1), vlq::DomainError);
  CHECK_THROWS_AS(RegisterSpec(2, 64), vlq::DomainError);
}

TEST_CASE("k-ary digits") {
  CHECK(vlq::k_ary_digits(3, 2) == "11");
  CHECK(vlq::k_ary_digits(243, 16) == "F3");
  CHECK(vlq::k_ary_digits(227, 16) == "E3");
  CHECK(vlq::k_ary_digits(0, 7) == "");
  CHECK(vlq::k_ary_digits(35, 36) == "Z");
  CHECK_THROWS_AS(vlq::k_ary_digits(3, 1), vlq::DomainError);

  // std::to_chars as an independent oracle
  for (int k : {2, 3, 7, 16, 36})
    for (std::uint64_t i = 1; i < 5000; i += 3) {
      char buf[80];
      auto res = std::to_chars(buf, buf + sizeof buf, i, k);
      std::string expect(buf, res.ptr);
      for (auto& c : expect) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (vlq::k_ary_digits(i, k) != expect) FAIL("k_ary_digits(" << i << ", " << k << ")");
    }
}

TEST_CASE("extended k-ary digits") {
  CHECK(vlq::extended_k_ary(3, 2, 6) == "000011");
  CHECK(vlq::extended_k_ary(243, 16, 6) == "0000F3");
  CHECK(vlq::extended_k_ary(227, 16, 6) == "0000E3");
  CHECK(vlq::extended_k_ary(0, 2, 3) == "000");
  CHECK(vlq::extended_k_ary(0, 2, 0) == "");
  CHECK_THROWS_AS(vlq::extended_k_ary(8, 2, 3), vlq::DomainError);
}

TEST_CASE("significant length") {
  CHECK(vlq::significant_length(0, 2) == 0);
  CHECK(vlq::significant_length(3, 2) == 2);
  CHECK(vlq::significant_length(4, 2) == 3);
  for (int k : {2, 3, 16})
    for (std::uint64_t i = 0; i < 1000000; i += (k == 2 ? 1 : 7))
      if (static_cast<std::size_t>(vlq::significant_length(i, k)) != vlq::k_ary_digits(i, k).size()) {
        FAIL("significant_length disagrees with digit count at i=" << i << " k=" << k);
      }
}

TEST_CASE("general register index") {
  const RegisterSpec spec(2, 4);
  auto e = vlq::general_basis_index(0, 0, spec);
  CHECK(e.register_index == 1);
  CHECK(e.digits == "00001");
  auto g = vlq::general_basis_index(2, 3, RegisterSpec(2, 2));
  CHECK(g.register_index == 7);
  CHECK(g.digits == "111");
  auto h = vlq::general_basis_index(1, 0, RegisterSpec(2, 3));
  CHECK(h.register_index == 2);
  CHECK(h.digits == "0010");
  CHECK_THROWS_AS(vlq::general_basis_index(3, 0, RegisterSpec(2, 2)), vlq::DomainError);
  CHECK_THROWS_AS(vlq::general_basis_index(1, 2, RegisterSpec(2, 2)), vlq::DomainError);

  // every (n, i) lands on a distinct register index, and the indices are
  // exactly [1, k^(r+1)) restricted to numerals with a leading marker
  std::set<std::uint64_t> seen;
  const RegisterSpec s3(3, 3);
  for (int n = 0; n <= 3; ++n)
    for (std::uint64_t i = 0; i < vlq::checked_pow(3, n); ++i) seen.insert(vlq::general_basis_index(n, i, s3).register_index);
  CHECK(seen.size() == vlq::dim_general_message_space(3, 3));
}

TEST_CASE("general message space dimension") {
  CHECK(vlq::dim_general_message_space(2, 2) == 7);
  CHECK(vlq::dim_general_message_space(2, 0) == 1);
  std::uint64_t sum = 0;
  for (int n = 0; n <= 3; ++n) sum += vlq::checked_pow(3, n);
  CHECK(vlq::dim_general_message_space(3, 3) == sum);
  CHECK(sum == 40);
  CHECK_THROWS_AS(vlq::dim_general_message_space(2, 64), vlq::DomainError);

  for (int k = 2; k <= 5; ++k)
    for (int r = 1; r <= 8; ++r) {
      CHECK(vlq::dim_general_message_space(k, r) > vlq::checked_pow(k, r));
      CHECK(vlq::dim_general_message_space(k, r - 1) < vlq::checked_pow(k, r));
    }
}

TEST_CASE("length projectors partition the register") {
  const RegisterSpec s(2, 2);
  CHECK(vlq::length_projector_indices(0, s) == std::vector<std::size_t>{0});
  CHECK(vlq::length_projector_indices(1, s) == std::vector<std::size_t>{1});
  CHECK(vlq::length_projector_indices(2, s) == std::vector<std::size_t>{2, 3});
  for (auto spec : {RegisterSpec(2, 5), RegisterSpec(3, 3), RegisterSpec(16, 2)}) {
    std::set<std::size_t> all;
    std::size_t total = 0;
    for (int n = 0; n <= spec.r(); ++n) {
      for (auto i : vlq::length_projector_indices(n, spec)) {
        CHECK(vlq::significant_length(i, spec.k()) == n);
        all.insert(i);
        ++total;
      }
    }
    CHECK(total == spec.dim());
    CHECK(all.size() == spec.dim());
  }
}

TEST_CASE("expected and base length") {
  const RegisterSpec s(2, 2);
  CHECK(vlq::expected_length(VariableLengthState::basis(s, 3)) == 2.0);
  CHECK(vlq::expected_length(VariableLengthState::basis(s, 0)) == 0.0);
  const auto mix = superposition(s, {1, 3});
  CHECK(vlq::expected_length(mix) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(vlq::base_length(mix) == 2);
  CHECK(vlq::base_length(VariableLengthState::basis(s, 0)) == 0);

  // lengths 4 and 7 superposed -> base length 7
  const RegisterSpec big(2, 7);
  const auto s47 = superposition(big, {0b1010, 0b1000001});
  CHECK(vlq::base_length(s47) == 7);
  CHECK(vlq::expected_length(s47) == doctest::Approx(5.5));

  // rounding residue below the amplitude threshold does not count
  ComplexVector v(4);
  v[1] = std::sqrt(1.0 - 1e-26);
  v[3] = 1e-13;
  CHECK(vlq::base_length(VariableLengthState(s, v)) == 1);
}

TEST_CASE("expected length never exceeds base length") {
  vlq::Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    const RegisterSpec spec(static_cast<int>(vlq::uniform_int(rng, 2, 4)), static_cast<int>(vlq::uniform_int(rng, 0, 4)));
    ComplexVector v(spec.dim());
    for (std::size_t i = 0; i < v.dim(); ++i)
      if (vlq::uniform01(rng) < 0.5) v[i] = {vlq::standard_normal(rng), vlq::standard_normal(rng)};
    if (v.norm() == 0.0) v[0] = 1.0;
    const VariableLengthState s(spec, vlq::normalize(v));
    const double e = vlq::expected_length(s);
    const int b = vlq::base_length(s);
    CHECK(e >= 0.0);
    CHECK(e <= b + 1e-9);
    CHECK(b <= spec.r());
  }
}

TEST_CASE("length measurement") {
  const RegisterSpec s(2, 2);
  const auto eig = VariableLengthState::basis(s, 2);
  const auto out = vlq::measure_length(eig, 0.73);
  CHECK(out.length == 2);
  CHECK(out.probability == 1.0);
  CHECK(out.collapsed.amps() == eig.amps());

  const auto mix = superposition(s, {1, 3});
  const auto lo = vlq::measure_length(mix, 0.1);
  CHECK(lo.length == 1);
  CHECK(lo.probability == doctest::Approx(0.5));
  CHECK(std::abs(lo.collapsed.amps()[1] - 1.0) < 1e-15);
  const auto hi = vlq::measure_length(mix, 0.9);
  CHECK(hi.length == 2);
  CHECK(std::abs(hi.collapsed.amps()[3] - 1.0) < 1e-15);

  // Born statistics: empirical frequencies within 3 standard errors
  ComplexVector v(8);
  v[0] = 0.3;
  v[1] = Complex(0.2, 0.4);
  v[2] = 0.5;
  v[5] = Complex(0, -0.6);
  v[7] = 0.25;
  const VariableLengthState st(RegisterSpec(2, 3), vlq::normalize(v));
  const auto p = st.length_probabilities();
  double total = 0.0;
  for (double x : p) total += x;
  CHECK(std::abs(total - 1.0) <= 1e-10);
  vlq::Rng rng(4242);
  const int samples = 100000;
  std::vector<int> counts(p.size());
  for (int i = 0; i < samples; ++i) {
    const auto o = vlq::measure_length(st, rng);
    ++counts[static_cast<std::size_t>(o.length)];
    if (i < 20) {
      CHECK(o.collapsed.amps().is_unit(1e-12));
      CHECK(vlq::expected_length(o.collapsed) == doctest::Approx(o.length));
    }
  }
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double se = std::sqrt(p[n] * (1 - p[n]) / samples);
    CHECK(std::abs(static_cast<double>(counts[n]) / samples - p[n]) <= 3 * se + 1e-15);
  }
}

TEST_CASE("truncate and pad") {
  const RegisterSpec s(2, 2);
  const auto b = superposition(s, {0, 1});
  const auto payload = vlq::truncate(b, 1);
  CHECK(payload.dim() == 2);
  CHECK(payload[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(payload[1].real() == doctest::Approx(1 / std::sqrt(2.0)));

  const auto empty = vlq::truncate(VariableLengthState::basis(s, 0), 0);
  CHECK(empty.dim() == 1);
  CHECK(empty[0] == Complex(1.0));
  CHECK(vlq::pad(empty, s).amps() == VariableLengthState::basis(s, 0).amps());

  auto padded = vlq::pad(payload, s);
  CHECK(padded.amps()[0] == payload[0]);
  CHECK(padded.amps()[1] == payload[1]);
  CHECK(padded.amps()[2] == Complex(0.0));

  const auto full = superposition(s, {1, 2, 3});
  CHECK(vlq::truncate(full, 2) == full.amps());
  CHECK(vlq::pad(vlq::truncate(full, 2), s).amps() == full.amps());

  CHECK_THROWS_AS(vlq::truncate(full, 1), vlq::DomainError);
  CHECK_THROWS_AS(vlq::truncate(full, 3), vlq::DomainError);
  CHECK_THROWS_AS(vlq::pad(ComplexVector(8), s), vlq::DomainError);
  CHECK_THROWS_AS(vlq::pad(ComplexVector(3), s), vlq::DimensionError);
}

TEST_CASE("pad inverts truncate on random states") {
  vlq::Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    const RegisterSpec spec(static_cast<int>(vlq::uniform_int(rng, 2, 3)), static_cast<int>(vlq::uniform_int(rng, 0, 4)));
    const int L = static_cast<int>(vlq::uniform_int(rng, 0, spec.r()));
    const std::size_t keep = vlq::checked_pow(spec.k(), L);
    ComplexVector v(spec.dim());
    for (std::size_t i = 0; i < keep; ++i) v[i] = {vlq::standard_normal(rng), vlq::standard_normal(rng)};
    const VariableLengthState s(spec, vlq::normalize(v));
    CHECK(vlq::base_length(s) <= L);
    const auto back = vlq::pad(vlq::truncate(s, L), spec);
    CHECK(vlq::max_abs_diff(back.amps(), s.amps()) <= 1e-12);
  }
}
