#include "doctest.h"
#include "vlq/reference_example.hpp"
#include "vlq/verify.hpp"

namespace verify = vlq::verify;

namespace {

const verify::PropertyResult& find(const std::vector<verify::PropertyResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  FAIL("missing property " << name);
  throw;
}

}  // namespace

TEST_CASE("optimal prefix cost oracle") {
  CHECK(verify::optimal_prefix_cost(std::vector<double>{1.0}) == 1.0);
  CHECK(verify::optimal_prefix_cost(std::vector<double>{0.5, 0.5}) == 1.0);
  CHECK(verify::optimal_prefix_cost(std::vector<double>{0.6, 0.3, 0.1}) == doctest::Approx(1.4));
  CHECK(verify::optimal_prefix_cost(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
}

TEST_CASE("generators") {
  vlq::Rng rng(1);
  for (int t = 0; t < 30; ++t) {
    const auto e = verify::random_ensemble(rng);
    CHECK(e.ambient_dim() >= 2);
    CHECK(e.ambient_dim() <= 6);
    CHECK(e.size() >= 3);
    CHECK(e.size() <= 12);
    const auto b = verify::random_basis(rng, e.ambient_dim());
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        CHECK(std::abs(vlq::inner(b[i], b[j]) - (i == j ? 1.0 : 0.0)) <= 1e-12);
    const auto x = verify::random_in_span(rng, b);
    CHECK(x.is_unit(1e-12));
    const auto rho = verify::random_density(rng, e.ambient_dim());
    CHECK(rho.is_hermitian());
    CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
  }
}

TEST_CASE("default verification passes") {
  verify::Options o;
  o.ensemble = vlq::reference::ensemble_file();
  const auto results = verify::run(o);
  for (const auto& r : results) {
    INFO(r.name << ": " << r.counterexample);
    CHECK(r.passed);
    CHECK(r.cases > 0);
  }
  CHECK(verify::all_passed(results));
  CHECK(results.size() == 11);
}

TEST_CASE("verification is deterministic") {
  verify::Options o;
  o.trials = 10;
  const auto a = verify::run(o);
  const auto b = verify::run(o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].cases == b[i].cases);
}

TEST_CASE("a non-isometric encoder is caught") {
  verify::Options o;
  o.trials = 10;
  o.fault = verify::Fault::NonIsometricEncoder;
  const auto results = verify::run(o);
  CHECK_FALSE(verify::all_passed(results));
  const auto& iso = find(results, "isometry");
  CHECK_FALSE(iso.passed);
  CHECK_FALSE(iso.counterexample.empty());
}
