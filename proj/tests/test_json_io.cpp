#include <catch2/catch.hpp>

#include "pei/json_io.hpp"
#include "pei/testkit.hpp"

using namespace pei;

TEST_CASE("set round trip") {
  Rng rng(10);
  for (int i = 0; i < 25; ++i) {
    auto s = random_set(rng, static_cast<int>(rng.below(1, 4)), 3, 5);
    auto back = set_from_json(to_json(s));
    REQUIRE(sets_equal(s, back));
    REQUIRE(back.atoms() == s.atoms());
  }
  // literal strings are accepted inside JSON
  auto s = set_from_json(json::parse("\"{[0+,(-2)-]}\""));
  REQUIRE(invariants(s).rank == 2);
}

TEST_CASE("constraint forms") {
  REQUIRE(constraint_from_json(json::parse("{\"fix\": 3}")) == Constraint::fixed(3));
  REQUIRE(constraint_from_json(json::parse("{\"range\": [1, 4]}")) == Constraint::range(1, 4));
  REQUIRE(constraint_from_json(json::parse("\"free\"")) == Constraint::free());
  REQUIRE_THROWS_AS(constraint_from_json(json::parse("{\"sideways\": 1}")), std::invalid_argument);
}

TEST_CASE("map round trip with signed permutations") {
  PiecewiseMap m;
  m.domain = OrthohedralSet::whole_space(2);
  Isometry rot = Isometry::identity(2);
  rot.perm = {1, 0};
  rot.sign = {-1, +1};
  rot.shift = {3, -2};
  m.pieces.push_back({BoxAtom::whole_space(2), rot});
  auto back = map_from_json(to_json(m));
  REQUIRE(maps_equal(m, back));

  REQUIRE_THROWS_AS(
      map_from_json(json::parse(
          R"({"domain": {"ambient":1, "atoms": [[{"up":0}]]},
              "pieces": [{"atom": [{"up":0}], "perm": [2], "shift": [0]}]})")),
      std::invalid_argument);
}

TEST_CASE("map json applies like the map") {
  Rng rng(12);
  auto s = standard_stack(2, 1, 2);
  auto g = random_finitary(rng, s, 2, 3);
  auto back = map_from_json(to_json(g));
  for (int i = 0; i < 10; ++i) {
    Point p = random_point_of(rng, s, 4);
    REQUIRE(pei::apply(g, p) == pei::apply(back, p));
  }
}

TEST_CASE("graph round trip") {
  auto g = gen_multipartite({2, 3});
  auto back = graph_from_json(to_json(g));
  REQUIRE(back.colors == g.colors);
  REQUIRE(back.edges == g.edges);
  REQUIRE_THROWS_AS(graph_from_json(json::parse(R"({"colors":[0,0],"edges":[[0,1]]})")),
                    std::invalid_argument);
}

TEST_CASE("tree pair round trip") {
  Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    auto e = random_tree_pair(rng, static_cast<int>(rng.below(0, 5)));
    auto back = tree_pair_from_json(to_json(e));
    REQUIRE(pairs_equal(e, back));
  }
}

TEST_CASE("forest description parsing") {
  auto f = forest_from_json(json::parse(R"({"components":["t0","t1","full",5],"isolated":2,"removed":1})"));
  REQUIRE(f.t0 == 1);
  REQUIRE(f.t1 == 1);
  REQUIRE(f.full == 1);
  REQUIRE(f.finite == std::vector<long long>{5});
  REQUIRE(f.isolated == 2);
  REQUIRE(f.removed == 1);
}

TEST_CASE("emitted json is deterministic") {
  auto s = parse_set("{[0+,0+],[3,4]}");
  REQUIRE(to_json(s).dump() == to_json(parse_set(to_literal(s))).dump());
}
