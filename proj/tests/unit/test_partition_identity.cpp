#include "doctest.h"
#include "test_support.hpp"

#include "prunix/parallel.hpp"

using namespace prunix;
using namespace prunix::testing;

namespace {

SetFamily sat_family() { return parse_family(read_data("sat_example.json")); }
WeightVector sat_weights() { return WeightVector({0.3, 0.5, 0.7, 0.2}); }

}  // namespace

TEST_CASE("weight vectors") {
  WeightVector w({0.25, 1.0});
  CHECK(w.q(0) == 0.75);
  CHECK(w.p(0) + w.q(0) == 1.0);
  CHECK_THROWS_AS(WeightVector({1.5}), PreconditionError);
  CHECK_THROWS_AS(WeightVector({-0.1}), PreconditionError);

  GroundSet g = GroundSet::letters(2);
  CHECK(parse_weights("a=0.3,b=1/2", g).ps() == std::vector<double>{0.3, 0.5});
  CHECK_THROWS_AS(parse_weights("a=0.3", g), ParseError);
  CHECK_THROWS_AS(parse_weights("a=0.3,a=0.2", g), ParseError);
  CHECK_THROWS_AS(parse_weights("a=0.3,c=0.2", g), ParseError);
  CHECK_THROWS_AS(parse_weights("a=2,b=0", g), Error);
  CHECK(parse_weights_json(R"({"p":{"a":0.1,"b":0.9}})", g).ps() == std::vector<double>{0.1, 0.9});
  CHECK_THROWS_AS(parse_weights_json(R"({"q":{}})", g), ParseError);
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK(parse_exact_weights("a=1/3,b=0.5", g).p(0) == Rational(1, 3));

  Rng rng(2);
  WeightVector r = WeightVector::random(50, rng);
  for (double p : r.ps()) CHECK((p >= 0.05 && p <= 0.95));
  ExactWeights d = ExactWeights::random_dyadic(10, rng);
  for (int i = 0; i < 10; ++i) CHECK(d.p(i) * Rational(1 << 20) == Rational(static_cast<long>(d.p(i) * (1 << 20))));
  CHECK(WeightVector::indicator(3, ElementSet{1}).ps() == std::vector<double>{1.0, 0.0, 1.0});
}

TEST_CASE("phi") {
  SetFamily f = sat_family();
  const GroundSet& g = f.ground();
  for (ElementSet a : f) CHECK(phi(f, a) == a);
  CHECK(phi(f, g.parse_set("1,4")) == g.full());
  ConvexGeometry geo(f);
  for (ElementSet::Bits b = 0; b < 16; ++b) CHECK(phi(f, ElementSet(b)) == geo.closure(ElementSet(b)));

  GroundSet ab = GroundSet::letters(2);
  // No interval reaches E when E is absent.
  SetFamily open(ab, {ElementSet{}, ElementSet{0}, ElementSet{1}});
  try {
    phi(open, ab.full());
    FAIL("expected PartitionError");
  } catch (const PartitionError& e) {
    CHECK(e.candidates.empty());
  }
  // ∅ lies in both [∅,∅] and [∅,E].
  SetFamily ends(ab, {ElementSet{}, ab.full()});
  try {
    phi(ends, ElementSet{});
    FAIL("expected PartitionError");
  } catch (const PartitionError& e) {
    CHECK(e.candidates.size() == 2);
  }
  // The chain ∅ ⊂ {a} ⊂ E is a geometry: every subset has exactly one interval.
  SetFamily chain(ab, {ElementSet{}, ElementSet{0}, ab.full()});
  CHECK(phi(chain, ElementSet{1}) == ab.full());
}

TEST_CASE("verify_interval_partition") {
  SetFamily f = sat_family();
  CHECK(verify_interval_partition(f).holds());
  CHECK(interval_cover(f).size() == 11);
  int covered = 0;
  for (ElementSet::Bits b = 0; b < 16; ++b) covered += oracle_cover_count(f, ElementSet(b));
  CHECK(covered == 16);

  GroundSet ab = GroundSet::letters(2);
  AxiomReport r = verify_interval_partition(SetFamily(ab, {ElementSet{}, ab.full()}));
  REQUIRE(!r.holds());
  CHECK(r.violations.front().sets.front().empty());

  Rng rng(3);
  for (int t = 0; t < 50; ++t) CHECK(verify_interval_partition(random_circuit_geometry(6, rng).family()).holds());
}

TEST_CASE("identity_sum") {
  SetFamily f = sat_family();
  const int n = 4;
  CHECK(identity_sum(f, WeightVector::uniform(n, 0.0)) == 1.0);
  CHECK(identity_sum(f, WeightVector::uniform(n, 1.0)) == 1.0);
  CHECK(identity_sum(f, sat_weights()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(identity_sum(f, sat_weights()) - static_cast<double>(oracle_identity(f, sat_weights()))) < 1e-15);
  CHECK(identity_sum_exact(f, parse_exact_weights("1=3/10,2=1/2,3=7/10,4=1/5", f.ground())) == 1);
  CHECK(identity_terms(f, sat_weights()).size() == 11);

  // Indicator weights count covering intervals.
  GroundSet ab = GroundSet::letters(2);
  SetFamily ends(ab, {ElementSet{}, ab.full()});
  CHECK(identity_sum(ends, WeightVector::indicator(2, ElementSet{})) == 2.0);
  CHECK(identity_sum_exact(ends, ExactWeights::indicator(2, ElementSet{0})) == 1);

  GroundSet empty;
  CHECK(identity_sum(SetFamily(empty, {ElementSet{}}), WeightVector(std::vector<double>{})) == 1.0);
  CHECK_THROWS_AS(identity_sum(f, WeightVector::uniform(3, 0.5)), PreconditionError);
}

TEST_CASE("classify") {
  Classification c = classify(sat_family(), 10, 1);
  CHECK(c.is_geometry);
  CHECK(c.is_partition);
  CHECK(c.identity_holds);
  GroundSet ab = GroundSet::letters(2);
  Classification bad = classify(SetFamily(ab, {ElementSet{}, ab.full()}), 10, 1);
  CHECK(!bad.is_geometry);
  CHECK(!bad.is_partition);
  CHECK(!bad.identity_holds);
  CHECK(bad.agree());
  CHECK_THROWS_AS(classify(boolean_lattice(GroundSet::numbered(17)), 1, 1), LimitError);
}

TEST_CASE("sample_pi1") {
  const int n = 4;
  CHECK(sample_pi1(WeightVector::uniform(n, 1.0), 9).empty());
  CHECK(sample_pi1(WeightVector::uniform(n, 0.0), 9) == ElementSet::prefix(n));
  CHECK(sample_pi1(sat_weights(), 42) == sample_pi1(sat_weights(), 42));

  Rng rng(77);
  std::vector<int> kept(n, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    ElementSet s = sample_pi1(sat_weights(), rng);
    for (int e = 0; e < n; ++e) kept[static_cast<std::size_t>(e)] += s.contains(e);
  }
  for (int e = 0; e < n; ++e) {
    CHECK(std::abs(kept[static_cast<std::size_t>(e)] / double(draws) - sat_weights().q(e)) < 0.01);
  }
  CHECK(pi1_probability(sat_weights(), ElementSet{0}) == doctest::Approx(0.7 * 0.5 * 0.7 * 0.2));
}

TEST_CASE("pi2_exact and pi2_empirical") {
  ConvexGeometry geo(sat_family());
  Distribution point = pi2_exact(geo, WeightVector::uniform(4, 0.0));
  CHECK(point.at(geo.ground().full()) == 1.0);

  Distribution d = pi2_exact(geo, sat_weights());
  CHECK(d.support.size() == 11);
  CHECK(pairwise_sum(d.prob) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.at(geo.ground().full()) == doctest::Approx(0.7 * 0.8));

  Distribution emp = pi2_empirical(geo, sat_weights(), 100000, 5);
  CHECK(total_variation(d, emp) < 0.01);
  CHECK(total_variation(d, d) == 0.0);
  CHECK_THROWS_AS(Distribution(geo.family(), std::vector<double>(11, 0.5)), ConsistencyError);
}

TEST_CASE("expectation_check") {
  ConvexGeometry geo(sat_family());
  const GroundSet& g = geo.ground();
  auto one = expectation_check(geo, sat_weights(), [](ElementSet) { return 1.0; });
  CHECK(one.first == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.second == doctest::Approx(1.0).epsilon(1e-12));

  auto size = expectation_check(geo, sat_weights(), [&](ElementSet d) { return double(geo.closure(d).size()); });
  CHECK(std::abs(size.first - size.second) < 1e-12);

  auto top = expectation_check(geo, sat_weights(), [&](ElementSet d) { return geo.closure(d) == g.full() ? 1.0 : 0.0; });
  CHECK(std::abs(top.first - top.second) < 1e-12);
  CHECK(top.second == doctest::Approx(sat_weights().q(0) * sat_weights().q(3)).epsilon(1e-12));

  try {
    expectation_check(geo, sat_weights(), [](ElementSet d) { return double(d.size()); });
    FAIL("expected ClosureInvarianceError");
  } catch (const ClosureInvarianceError& e) {
    CHECK(geo.closure(e.d) != e.d);
  }
}
