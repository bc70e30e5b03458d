#include <catch2/catch.hpp>

#include "pei/literal.hpp"
#include "pei/testkit.hpp"
#include "pei/window.hpp"

using namespace pei;

TEST_CASE("boundary at infinity of standard sets") {
  auto stack = standard_stack(2, 1, 4);
  auto b = boundary_direction(stack, 0);
  REQUIRE(invariants(b).rank == 0);
  REQUIRE(invariants(b).height == 4);

  auto quad = parse_set("{[0+,0+]}");
  REQUIRE(sets_equal(boundary_direction(quad, 0), parse_set("{[0+]}", 1)));
  REQUIRE(sets_equal(boundary_direction(quad, 1), parse_set("{[0+]}", 1)));

  // no rays in the requested direction
  auto perp = parse_set("{[3,0+]}");
  REQUIRE(boundary_direction(perp, 0).is_empty());

  REQUIRE_THROWS_AS(boundary_direction(parse_set("{[(-1)-,0+]}"), 0), std::invalid_argument);
}

TEST_CASE("boundary is orthohedral with dropped rank") {
  Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    // random normal-form-ish input inside the standard orthant
    int ambient = static_cast<int>(rng.below(2, 3));
    auto nf = pet_normal_form(random_set(rng, ambient, 3, 4));
    OrthohedralSet s = nf.normalized;
    if (!inside_standard_orthant(s)) {
      // push into the positive orthant
      std::vector<BoxAtom> kept;
      for (const auto& orth : orthant_decomposition(s)) {
        bool pos = true;
        for (const auto& d : orth.orthant_directions())
          if (d.sign < 0) pos = false;
        if (pos) kept.push_back(orth);
      }
      if (kept.empty()) continue;
      coord_t m = 0;
      for (const auto& at : kept) m = std::max(m, max_abs_constant(at));
      s = OrthohedralSet::from_atoms(ambient, kept).translated(Point(ambient, m));
    }
    if (s.is_empty() || !inside_standard_orthant(s)) continue;
    auto sx = split_direction(s, 0).first;
    auto b = boundary_direction(s, 0);
    REQUIRE(b.validate_disjoint());
    if (!sx.is_empty()) REQUIRE(b.rank() == sx.rank() - 1);
  }
}

TEST_CASE("splitting a normal form by a direction") {
  auto stack = standard_stack(2, 1, 3);
  auto [sx, sp] = split_direction(stack, 0);
  REQUIRE(sets_equal(sx, stack));
  REQUIRE(sp.is_empty());
  auto [sy, syp] = split_direction(stack, 1);
  REQUIRE(sy.is_empty());
  REQUIRE(sets_equal(syp, stack));

  // mixed two-stack input
  auto mixed = parse_set("{[0+,0,0],[0+,1,0],[5,0,1+],[5,1,1+]}");
  auto [mx, mp] = split_direction(mixed, 0);
  REQUIRE(sets_equal(mx, parse_set("{[0+,0,0],[0+,1,0]}")));
  REQUIRE(sets_equal(mp, parse_set("{[5,0,1+],[5,1,1+]}")));
}

TEST_CASE("ray bases extend through adjoining atoms") {
  // a range block below a ray joins into one maximal ray
  auto s = OrthohedralSet::from_atoms(
      1, {parse_atom("[0..3]"), parse_atom("[4+]")});
  auto rb = ray_bases(s, 0);
  REQUIRE(rb.pieces.size() == 1);
  REQUIRE(rb.pieces[0].second == 0);
}

TEST_CASE("theta and sigma are a retraction pair") {
  // two stacks in N^2: three x-rays and two y-rays
  auto s = parse_set("{[0+,0],[0+,1],[0+,2],[0,4+],[1,4+]}");
  auto b = boundary_direction(s, 0);
  REQUIRE(invariants(b).height == 3);

  Rng rng(44);
  bool saw_nontrivial = false;
  for (int i = 0; i < 25; ++i) {
    auto g = compose(random_class_shuffle(rng, s), random_finitary(rng, s, 2, 4));
    auto h = compose(random_finitary(rng, s, 2, 4), random_class_shuffle(rng, s));
    auto tg = theta(g, 0);
    auto th = theta(h, 0);
    REQUIRE(classify(tg).bijective_onto_domain);
    if (!maps_equal(tg, identity_map(b))) saw_nontrivial = true;
    // homomorphism
    REQUIRE(maps_equal(theta(compose(g, h), 0), compose(tg, th)));
    // identity behaviour
    REQUIRE(maps_equal(theta(identity_map(s), 0), identity_map(b)));
  }
  REQUIRE(saw_nontrivial);

  // sections: theta(sigma(k)) = k for permutations of the boundary
  std::vector<PiecewiseMap> ks;
  ks.push_back(identity_map(b));
  ks.push_back(point_transposition(b, {0}, {1}));
  ks.push_back(point_transposition(b, {0}, {2}));
  for (const auto& k : ks) {
    auto lift = sigma_lift(k, 0, s);
    auto flags = classify(lift);
    REQUIRE(flags.pet);
    REQUIRE(flags.bijective_onto_domain);
    REQUIRE(maps_equal(theta(lift, 0), k));
  }
}

TEST_CASE("theta rejects non-pet maps") {
  auto s = parse_set("{[0+,0+]}");
  PiecewiseMap sw;
  sw.domain = s;
  Isometry x_swap = Isometry::identity(2);
  x_swap.perm = {1, 0};
  sw.pieces.push_back({s.atoms()[0], x_swap});
  REQUIRE_THROWS_AS(theta(sw, 0), std::invalid_argument);
}

TEST_CASE("link heights") {
  // skeleton stack r=3 n=2 c=2: every singleton link has height c(r-n+1)
  auto sk = standard_skeleton_stack(4, 3, 2, 2);
  for (int axis = 0; axis < 3; ++axis) REQUIRE(link_height(sk, {axis}) == 4);
  // a plain stack: the link of any (n-1)-subset of its directions is h(S)
  auto stack = standard_stack(3, 2, 5);
  REQUIRE(link_height(stack, {0}) == 5);
  REQUIRE(link_height(stack, {1}) == 5);
  REQUIRE(link_height(stack, {2}) == 0);
  REQUIRE_THROWS_AS(link_height(stack, {0, 1}), std::invalid_argument);
}

TEST_CASE("finiteness length reports") {
  SECTION("stack of rays: equality") {
    auto r = fl_report(standard_stack(2, 1, 3), "pet");
    REQUIRE(r.lower == 2);
    REQUIRE(r.upper == 2);
  }
  SECTION("whole lattices: pei lower bound 2^n - 1") {
    for (int n = 1; n <= 3; ++n) {
      auto r = fl_report(OrthohedralSet::whole_space(n), "pei");
      REQUIRE(r.lower == (1 << n) - 1);
      REQUIRE_FALSE(r.upper);
    }
  }
  SECTION("skeleton stack r=3 n=2 c=2: open interval") {
    auto r = fl_report(standard_skeleton_stack(4, 3, 2, 2), "pet");
    REQUIRE(r.lower == 1);
    REQUIRE(r.upper == 3);
  }
  SECTION("report monotonicity in the stack height") {
    for (int h = 1; h <= 4; ++h) {
      auto r = fl_report(standard_stack(3, 2, h), "pet");
      REQUIRE(r.lower == h - 1);
      REQUIRE(r.upper == h - 1);
    }
  }
  SECTION("stacks of orthants agree between equality and link bound") {
    auto s = standard_stack(3, 2, 4);
    auto r = fl_report(s, "pet");
    REQUIRE(link_height(s, {0}) == invariants(s).height);
    REQUIRE(r.lower == r.upper);
  }
}

TEST_CASE("retraction pair over quadrant stacks") {
  // two stacks of quadrants in N^3: x-parallel and perpendicular
  auto s = parse_set("{[0+,0+,0],[0+,0+,1],[5,0+,3+],[6,0+,3+]}");
  REQUIRE(inside_standard_orthant(s));
  auto b = boundary_direction(s, 0);
  REQUIRE(invariants(b).rank == 1);
  REQUIRE(invariants(b).height == 2);  // one ray of boundary points per stack level

  Rng rng(911);
  for (int i = 0; i < 10; ++i) {
    auto g = random_finitary(rng, s, 2, 3);
    auto h = random_finitary(rng, s, 2, 3);
    REQUIRE(maps_equal(theta(compose(g, h), 0), compose(theta(g, 0), theta(h, 0))));
  }
  // swap the two boundary rays: a pet permutation of the boundary
  PiecewiseMap k;
  k.domain = b;
  k.pieces.push_back({parse_atom("[0+,0]"), Isometry::translation({0, 1})});
  k.pieces.push_back({parse_atom("[0+,1]"), Isometry::translation({0, -1})});
  REQUIRE(classify(k).bijective_onto_domain);
  auto lift = sigma_lift(k, 0, s);
  auto flags = classify(lift);
  REQUIRE(flags.pet);
  REQUIRE(flags.bijective_onto_domain);
  REQUIRE(maps_equal(theta(lift, 0), k));
}

TEST_CASE("lifted sections act on rays by translation, pointwise") {
  auto s = parse_set("{[0+,0],[0+,1],[0+,2]}");
  auto b = boundary_direction(s, 0);
  auto k = point_transposition(b, {0}, {2});
  auto lift = sigma_lift(k, 0, s);
  bool ok = true;
  for_each_window_point(2, 9, [&](const Point& p) {
    if (!window_member(p, s)) return;
    Point q = pei::apply(lift, p);
    // the off-coordinate moves by k, the ray coordinate is preserved
    Point off{p[1]};
    Point target = pei::apply(k, off);
    if (q[1] != target[0] || q[0] != p[0]) ok = false;
  });
  REQUIRE(ok);
}
