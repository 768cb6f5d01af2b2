#include "doctest.h"
#include "test_support.hpp"

using namespace prunix;
using namespace prunix::testing;

namespace {

PartialAssignment pa(const char* s) { return PartialAssignment::parse(s); }

}  // namespace

TEST_CASE("parse_dimacs") {
  CnfFormula f = sat_example();
  CHECK(f.num_vars == 4);
  CHECK(f.clauses == std::vector<std::vector<int>>{{-1, -2, 3}, {2, -3, -4}});
  CHECK(parse_dimacs(write_dimacs(f)).clauses == f.clauses);

  CnfFormula empty = parse_dimacs("p cnf 2 0\n");
  for (const auto& b : all_partial_assignments(2)) CHECK(is_valid(empty, b).valid);

  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\np cnf 2 1\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(CnfFormula(2, {{1, -1}}), PreconditionError);
}

TEST_CASE("partial assignment syntax") {
  CHECK(pa("1,1,*,0") == pa("11*0"));
  CHECK(pa("1,1,*,0").str() == "11*0");
  CHECK(pa("1111").starred(2).str() == "11*1");
  CHECK(PartialAssignment::all_stars(3).str() == "***");
  CHECK_THROWS_AS(pa("12"), ParseError);
}

TEST_CASE("is_valid") {
  CnfFormula f = sat_example();
  for (const char* s : {"1111", "*1**", "1**1"}) CHECK(is_valid(f, pa(s)).valid);
  for (const char* s : {"110*", "**11", "1*11", "11*1"}) {
    Validity v = is_valid(f, pa(s));
    CHECK(!v.valid);
    CHECK(v.clause.has_value());
  }
  CHECK(is_valid(f, pa("110*")).clause == 0u);
  CHECK(is_valid(f, pa("**11")).clause == 1u);
  CHECK_THROWS_AS(is_valid(f, pa("111")), PreconditionError);
  for (const auto& b : all_partial_assignments(4)) CHECK(is_valid(f, b).valid == oracle_valid(f, b));
}

TEST_CASE("classify_vars") {
  CnfFormula f = sat_example();
  VarClassification c = classify_vars(f, pa("1111"));
  CHECK(c.stars.empty());
  CHECK(c.unconstrained == std::vector<int>{0, 3});
  CHECK(c.constrained == std::vector<int>{1, 2});
  CHECK(c.numeric == std::vector<int>{0, 1, 2, 3});

  VarClassification s = classify_vars(f, pa("****"));
  CHECK(s.stars.size() == 4);
  CHECK(s.unconstrained.empty());
  CHECK(s.constrained.empty());

  CnfFormula unit = parse_dimacs("p cnf 2 1\n1 -2 0\n");
  CHECK(classify_vars(unit, pa("11")).constrained == std::vector<int>{0});
  CHECK_THROWS_AS(classify_vars(f, pa("110*")), PreconditionError);
}

TEST_CASE("poset_below") {
  CnfFormula f = sat_example();
  SatPoset p = poset_below(f, pa("1111"));
  CHECK(p.members.size() == 11);
  CHECK(bits_of(p.support_family()) == bits_of(parse_family(read_data("sat_example.json"))));
  std::set<std::string> got;
  for (const auto& b : p.members) got.insert(b.str());
  CHECK(got == oracle_poset(f, pa("1111")));
  CHECK(p.covers.size() == 16);
  for (const auto& c : p.covers) CHECK(p.members[c.upper].starred(c.var) == p.members[c.lower]);
  CHECK(p.assignment_of(p.ground.parse_set("1,3")) == pa("1*1*"));
  // (1,*,*,1) is valid but not below (1,1,1,1).
  CHECK(got.count("1**1") == 0);
  CHECK(poset_below(f, pa("****")).members.size() == 1);
}

TEST_CASE("geometry_from_assignment") {
  CnfFormula f = sat_example();
  PartialAssignment a = pa("1111");
  auto rooted = unique_satisfied_rooted_sets(f, a);
  ConvexGeometry g = geometry_from_assignment(f, a);
  const GroundSet& gs = g.ground();
  REQUIRE(rooted.size() == 2);
  CHECK(rooted[0] == RootedSet(gs.parse_set("1,2,3"), gs.index("3")));
  CHECK(rooted[1] == RootedSet(gs.parse_set("2,3,4"), gs.index("2")));
  CHECK(bits_of(g.family()) == bits_of(parse_family(read_data("sat_example.json"))));

  CnfFormula loose = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
  CHECK(geometry_from_assignment(loose, pa("111")).family().size() == 8);
  CHECK_THROWS_AS(geometry_from_assignment(f, pa("**11")), PreconditionError);

  // Any rooted list becomes clauses with the root positive and the rest negative.
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const int n = rng.range(2, 6);
    auto rs = random_rooted(n, rng.range(0, 4), 2, 4, rng);
    std::vector<std::vector<int>> clauses;
    for (const auto& r : rs) {
      std::vector<int> c;
      r.set.for_each([&](int e) { c.push_back(e == r.root ? e + 1 : -(e + 1)); });
      clauses.push_back(c);
    }
    CnfFormula enc(n, clauses);
    ConvexGeometry back = geometry_from_assignment(enc, PartialAssignment(std::vector<Value>(std::size_t(n), Value::One)));
    CHECK(bits_of(back.family()) == bits_of(generate_from_circuits(rs, GroundSet::letters(n)).family()));
  }
}

TEST_CASE("weight") {
  CnfFormula f = sat_example();
  WeightVector w({0.3, 0.5, 0.7, 0.2});
  // S = {1,3,4}; starring x2 keeps both clauses valid, so U = {2}.
  CHECK(weight(f, pa("*1**"), w) == doctest::Approx(0.3 * 0.7 * 0.2 * 0.5));
  CnfFormula unit = parse_dimacs("p cnf 2 2\n1 0\n2 0\n");
  CHECK(weight(unit, pa("11"), w.restricted(std::vector<int>{0, 1})) == 1.0);
  WeightVector u = WeightVector::uniform(4, 0.4);
  VarClassification c = classify_vars(f, pa("1*1*"));
  CHECK(weight(f, pa("1*1*"), u) ==
        doctest::Approx(std::pow(0.4, double(c.stars.size())) * std::pow(0.6, double(c.unconstrained.size()))));
}

TEST_CASE("verify_sat_identity") {
  CnfFormula f = sat_example();
  WeightVector w({0.3, 0.5, 0.7, 0.2});
  CHECK(std::abs(verify_sat_identity(f, pa("1111"), w) - 1.0) < 1e-12);
  CHECK(verify_sat_identity(f, pa("1111"), WeightVector::uniform(4, 0.0)) == 1.0);
  ConvexGeometry g = geometry_from_assignment(f, pa("1111"));
  CHECK(verify_sat_identity(f, pa("1111"), w) == identity_sum(g.family(), w));
  CHECK(std::abs(verify_sat_identity(f, pa("1**1"), w) - 1.0) < 1e-12);
}

TEST_CASE("total_weight") {
  CnfFormula f = sat_example();
  CHECK(total_weight(f, WeightVector::uniform(4, 0.3)) >= 1.0);
  CnfFormula unsat = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  CHECK(total_weight(unsat, WeightVector::uniform(1, 0.3)) == 0.0);
}

TEST_CASE("core") {
  CnfFormula f = sat_example();
  CHECK(core(f, pa("1111"), 7).str() == "****");
  CnfFormula unit = parse_dimacs("p cnf 2 2\n1 0\n2 0\n");
  CHECK(core(unit, pa("11"), 3) == pa("11"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(core(f, pa("1111"), seed) == pa("****"));
}

TEST_CASE("geometry_intersection_witness") {
  CnfFormula f = sat_example();
  IntersectionWitness same = geometry_intersection_witness(f, pa("1111"), pa("1111"));
  CHECK(same.c == pa("1111"));
  CHECK(same.check);

  // Below 1111 and below 1**1 share only 1***, ***1 and ****: no single top.
  std::set<std::string> a = oracle_poset(f, pa("1111")), b = oracle_poset(f, pa("1**1")), both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(both, both.begin()));
  CHECK(both == std::set<std::string>{"1***", "***1", "****"});
  CHECK_THROWS_AS(geometry_intersection_witness(f, pa("1111"), pa("1**1")), ConsistencyError);

  IntersectionWitness w = geometry_intersection_witness(f, pa("1111"), pa("111*"));
  CHECK(w.pattern == pa("111*"));
  CHECK(w.c == pa("111*"));
  CHECK(w.check);
}

TEST_CASE("random_kcnf") {
  Rng rng(4);
  PartialAssignment planted = random_full_assignment(8, rng);
  for (int t = 0; t < 20; ++t) {
    CnfFormula f = random_kcnf(8, 30, 3, rng, planted);
    CHECK(f.clauses.size() == 30);
    for (const auto& c : f.clauses) CHECK(c.size() == 3);
    CHECK(is_valid(f, planted).valid);
  }
  Rng r1(9), r2(9);
  CHECK(random_kcnf(6, 10, 2, r1).clauses == random_kcnf(6, 10, 2, r2).clauses);
  CHECK_THROWS_AS(random_kcnf(3, 1, 4, rng), PreconditionError);
}
