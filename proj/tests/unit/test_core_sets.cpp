#include "doctest.h"
#include "test_support.hpp"

using namespace prunix;

TEST_CASE("ground set labels and lookup") {
  GroundSet g({"x", "y", "z"});
  CHECK(g.size() == 3);
  CHECK(g.index("y") == 1);
  CHECK(g.format(g.set_of({"z", "x"})) == "{x,z}");
  CHECK(g.parse_set("{x,z}") == ElementSet{0, 2});
  CHECK(g.parse_set("y") == ElementSet{1});
  CHECK(g.parse_set("").empty());
  CHECK(g.complement(ElementSet{1}) == ElementSet{0, 2});
  CHECK_THROWS_AS(g.index("w"), ParseError);
  CHECK_THROWS_AS(GroundSet({"a", "a"}), Error);
  CHECK_THROWS_AS(GroundSet({""}), Error);
  std::vector<std::string> many;
  for (int i = 0; i <= kMaxGround; ++i) many.push_back("v" + std::to_string(i));
  CHECK_THROWS_AS(GroundSet{many}, LimitError);
}

TEST_CASE("canonical family order and dedup") {
  GroundSet g = GroundSet::letters(3);
  SetFamily f(g, {ElementSet{0, 1}, ElementSet{2}, ElementSet{}, ElementSet{0}, ElementSet{2}});
  REQUIRE(f.size() == 4);
  CHECK(f.members()[0].empty());
  CHECK(f.members()[1] == ElementSet{0});
  CHECK(f.members()[2] == ElementSet{2});
  CHECK(f.members()[3] == ElementSet{0, 1});
  CHECK(f.index_of(ElementSet{2}) == 2);
  CHECK(f.index_of(ElementSet{1}) == -1);
  CHECK_THROWS(SetFamily(g, {ElementSet{5}}));
}

TEST_CASE("parse_family") {
  SetFamily f = parse_family(R"({"ground":["a","b"],"sets":[["a","b"],["a"],[]]})");
  CHECK(f.size() == 3);
  CHECK(parse_family(R"({"ground":["a"],"sets":[["a"],["a"]]})").size() == 1);
  CHECK_THROWS_WITH_AS(parse_family(R"({"ground":["a"],"sets":[["z"]]})"),
                       doctest::Contains("label not in ground"), ParseError);
  CHECK_THROWS_AS(parse_family(R"({"ground":["a","a"],"sets":[]})"), Error);
  CHECK_THROWS_AS(parse_family("{not json"), ParseError);
  CHECK_THROWS_AS(parse_family(R"({"sets":[]})"), ParseError);
}

TEST_CASE("serialize_family") {
  GroundSet g = GroundSet::letters(2);
  CHECK(serialize_family(SetFamily(g, {})) == R"({"ground":["a","b"],"sets":[]})");
  CHECK(serialize_family(SetFamily(g, {ElementSet{}})) == R"({"ground":["a","b"],"sets":[[]]})");
  SetFamily sat = parse_family(prunix::testing::read_data("sat_example.json"));
  CHECK(parse_family(serialize_family(sat)) == sat);
  CHECK(serialize_family(parse_family(serialize_family(sat))) == serialize_family(sat));
}

TEST_CASE("boolean_lattice") {
  CHECK(boolean_lattice(GroundSet::letters(0)).size() == 1);
  SetFamily b2 = boolean_lattice(GroundSet::letters(2));
  CHECK(b2.size() == 4);
  CHECK(b2.members() == std::vector<ElementSet>{ElementSet{}, ElementSet{0}, ElementSet{1}, ElementSet{0, 1}});
  CHECK(boolean_lattice(GroundSet::letters(4)).size() == 16);
  CHECK_THROWS_AS(boolean_lattice(GroundSet::numbered(21)), LimitError);
}

TEST_CASE("simple words") {
  GroundSet g = GroundSet::letters(4);
  SimpleWord w({3, 0, 1, 2});
  CHECK(format_word(g, w) == "dabc");
  CHECK(format_word(g, SimpleWord()) == "ε");
  CHECK(w.support() == g.full());
  CHECK(w.prefix(2) == SimpleWord({3, 0}));
  CHECK_THROWS_AS(SimpleWord({1, 1}), PreconditionError);
  CHECK_THROWS_AS(w.prefix(2).extended(3), PreconditionError);
  std::vector<std::string> labels{"b", "a"};
  CHECK(parse_word(g, labels) == SimpleWord({1, 0}));
  CHECK(SimpleWord({1}) < SimpleWord({0, 1}));
}

TEST_CASE("rooted sets") {
  CHECK_THROWS_AS(RootedSet(ElementSet{0, 1}, 2), PreconditionError);
  RootedList r = parse_rooted(prunix::testing::read_data("acde.rooted.json"));
  REQUIRE(r.sets.size() == 2);
  CHECK(r.sets[0] == RootedSet(ElementSet{0, 1, 2}, 1));
  CHECK(parse_rooted(serialize_rooted(r.ground, r.sets)).sets == r.sets);
  RootedList p = parse_rooted(prunix::testing::read_data("chain.paths.json"), "paths");
  CHECK(p.sets.size() == 3);
  CHECK_THROWS_AS(parse_rooted(R"({"ground":["a"],"rooted":[{"set":["a"],"root":"b"}]})"), ParseError);
}

TEST_CASE("word list parsing") {
  WordList w = parse_words(prunix::testing::read_data("free2.words.json"));
  CHECK(w.words.size() == 5);
  CHECK_THROWS(parse_words(R"({"ground":["a"],"words":[["a","a"]]})"));
}
