#include <catch2/catch.hpp>

#include "pei/literal.hpp"
#include "pei/testkit.hpp"

using namespace pei;

namespace {

long long binom(int r, int n) {
  long long v = 1;
  for (int i = 0; i < n; ++i) v = v * (r - i) / (i + 1);
  return v;
}

}  // namespace

TEST_CASE("skeleton heights are binomial") {
  for (int r = 0; r <= 5; ++r) {
    Indicator dirs;
    for (int j = 0; j < r; ++j) dirs.push_back({j, +1});
    BoxAtom orthant = make_orthant(std::max(r, 1), dirs, Point(std::max(r, 1), 0));
    for (int n = 0; n <= r; ++n) {
      auto sk = skeleton(orthant, n);
      REQUIRE(invariants(sk).rank == n);
      REQUIRE(invariants(sk).height == binom(r, n));
    }
  }
}

TEST_CASE("skeleton extremes") {
  auto L = parse_atom("[0+,0+,0+]");
  REQUIRE(sets_equal(skeleton(L, 3), OrthohedralSet::from_atoms(3, {L})));
  auto base = skeleton(L, 0);
  REQUIRE(invariants(base).rank == 0);
  REQUIRE(invariants(base).height == 1);
  REQUIRE_THROWS_AS(skeleton(L, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(skeleton(parse_atom("[0+,free]"), 1), std::invalid_argument);
}

TEST_CASE("regular points of an orthant") {
  auto quad = parse_set("{[0+,0+]}");
  auto rp = regular_points(quad);
  REQUIRE(sets_equal(rp.interior, parse_set("{[1+,1+]}")));
  REQUIRE(invariants(rp.singular).height == 2);
  REQUIRE(rp.component_count == 1);

  auto ray = parse_set("{[3+]}");
  auto rr = regular_points(ray);
  REQUIRE(sets_equal(rr.singular, parse_set("{[3]}")));
}

TEST_CASE("singular height relation on skeleton stacks") {
  // h(sing interior) = h(sing) * (r - n + 1), all r <= 4, 1 <= n <= r
  for (int r = 1; r <= 4; ++r) {
    for (int n = 1; n <= r; ++n) {
      for (int c : {1, 2}) {
        int ambient = r + (c > 1 ? 1 : 0);
        auto s = standard_skeleton_stack(ambient, r, n, c);
        auto rp = regular_points(s);
        REQUIRE(rp.component_count == c);
        coord_t hs = invariants(rp.singular).height;
        if (n == 0) continue;
        auto rp2 = regular_points(rp.interior);
        coord_t hs2 = invariants(rp2.singular).height;
        REQUIRE(hs2 == hs * (r - n + 1));
      }
    }
  }
}

TEST_CASE("skeleton two of rank three has the documented singular heights") {
  auto s = standard_skeleton_stack(3, 3, 2, 1);
  auto rp = regular_points(s);
  REQUIRE(invariants(rp.singular).height == 3);
  auto rp2 = regular_points(rp.interior);
  REQUIRE(invariants(rp2.singular).height == 6);
}

TEST_CASE("skeleton stack recognition") {
  auto s = standard_skeleton_stack(4, 3, 2, 2);
  auto st = recognize_skeleton_stack(s);
  REQUIRE(st);
  REQUIRE(st->r == 3);
  REQUIRE(st->n == 2);
  REQUIRE(st->component_count() == 2);
  REQUIRE(invariants(s).height == 2 * 3);

  // a stack of orthants is a skeleton stack with n = r
  auto stack = standard_stack(3, 2, 4);
  auto so = recognize_skeleton_stack(stack);
  REQUIRE(so);
  REQUIRE(so->n == so->r);
  REQUIRE(so->component_count() == 4);

  REQUIRE_FALSE(recognize_skeleton_stack(parse_set("{[0+,0+],[0+,(-5)]}")));
  REQUIRE_THROWS_AS(regular_points(parse_set("{[0+,free]}")), std::invalid_argument);
}

TEST_CASE("orthant boundary has height n") {
  for (int n = 1; n <= 4; ++n) {
    Indicator dirs;
    for (int j = 0; j < n; ++j) dirs.push_back({j, +1});
    BoxAtom orthant = make_orthant(n, dirs, Point(n, 0));
    auto b = orthant_boundary(orthant);
    REQUIRE(invariants(b).rank == n - 1);
    REQUIRE(invariants(b).height == n);
  }
}

TEST_CASE("interior recognition recovers components") {
  auto s = standard_skeleton_stack(4, 3, 2, 2);
  auto rp = regular_points(s);
  auto ic = recognize_interior(rp.interior);
  REQUIRE(ic);
  REQUIRE(ic->components.size() == 2);
  REQUIRE(ic->stack.r == 3);
  OrthohedralSet together = OrthohedralSet::empty(4);
  for (const auto& c : ic->components) together = set_union(together, c);
  REQUIRE(sets_equal(together, rp.interior));
}

TEST_CASE("a skeleton stack is pet-isomorphic to its regular part") {
  for (int r = 1; r <= 3; ++r)
    for (int n = 1; n <= r; ++n)
      for (int c : {1, 2}) {
        int ambient = r + (c > 1 ? 1 : 0);
        auto s = standard_skeleton_stack(ambient, r, n, c);
        auto rp = regular_points(s);
        auto w = are_pet_isomorphic(s, rp.interior);
        REQUIRE(w);
        REQUIRE(classify(*w).pet);
        REQUIRE(sets_equal(image_set(*w), rp.interior));
      }
}
