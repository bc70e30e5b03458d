#pragma once

#include <random>

#include "pei/boundary.hpp"
#include "pei/poset.hpp"
#include "pei/treepair.hpp"

// Deterministic instance generators shared by the test suites and the
// CLI self-test: random orthohedral sets, random pet/pei bijections and
// injections, boundary injections for the maximal-element machinery, and
// random tree pairs.  All draws go through one engine type so a fixed
// seed reproduces the same instances everywhere.

namespace pei {

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  // uniform in [lo, hi]
  long long below(long long lo, long long hi) {
    if (hi < lo) throw std::invalid_argument("Rng: empty range");
    return lo + static_cast<long long>(eng_() % static_cast<uint64_t>(hi - lo + 1));
  }
  bool flip() { return (eng_() & 1) != 0; }
  uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

inline Constraint random_constraint(Rng& rng, coord_t span) {
  switch (rng.below(0, 4)) {
    case 0: return Constraint::fixed(rng.below(-span, span));
    case 1: return Constraint::ray_up(rng.below(-span, span));
    case 2: return Constraint::ray_down(rng.below(-span, span));
    case 3: {
      coord_t a = rng.below(-span, span);
      return Constraint::range(a, std::min(a + rng.below(0, span), span));
    }
    default: return Constraint::free();
  }
}

inline OrthohedralSet random_set(Rng& rng, int ambient, int max_atoms, coord_t span) {
  int count = static_cast<int>(rng.below(0, max_atoms));
  std::vector<BoxAtom> atoms;
  for (int i = 0; i < count; ++i) {
    std::vector<Constraint> cs;
    for (int j = 0; j < ambient; ++j) cs.push_back(random_constraint(rng, span));
    atoms.push_back(BoxAtom(ambient, std::move(cs)));
  }
  return OrthohedralSet::from_atoms(ambient, atoms);
}

inline OrthohedralSet random_nonempty_set(Rng& rng, int ambient, int max_atoms, coord_t span) {
  for (;;) {
    OrthohedralSet s = random_set(rng, ambient, max_atoms, span);
    if (!s.is_empty()) return s;
  }
}

// A stack of h parallel rank-n orthants inside N^ambient.
inline OrthohedralSet standard_stack(int ambient, int n, int h) {
  if (n >= ambient && h > 1)
    throw std::invalid_argument("standard_stack: no room to stack at full rank");
  Indicator dirs;
  for (int j = 0; j < n; ++j) dirs.push_back({j, +1});
  std::vector<BoxAtom> atoms;
  for (int k = 0; k < h; ++k) {
    Point base(ambient, 0);
    if (n < ambient) base[n] = k;
    atoms.push_back(make_orthant(ambient, dirs, base));
  }
  return OrthohedralSet::from_atoms(ambient, atoms);
}

// A stack of c parallel copies of the rank-n skeleton of a rank-r orthant.
inline OrthohedralSet standard_skeleton_stack(int ambient, int r, int n, int c) {
  if (r + (c > 1 ? 1 : 0) > ambient)
    throw std::invalid_argument("standard_skeleton_stack: ambient too small");
  Indicator dirs;
  for (int j = 0; j < r; ++j) dirs.push_back({j, +1});
  std::vector<BoxAtom> faces;
  for (int k = 0; k < c; ++k) {
    Point base(ambient, 0);
    if (c > 1) base[r] = 2 * k;
    BoxAtom orthant = make_orthant(ambient, dirs, base);
    OrthohedralSet sk = skeleton(orthant, n);
    for (const auto& at : sk.atoms()) faces.push_back(at);
  }
  return OrthohedralSet::from_atoms(ambient, faces);
}

// A random point of the set, drawn from the anchor of a random atom with
// a bounded random offset along its unbounded axes.
inline Point random_point_of(Rng& rng, const OrthohedralSet& s, coord_t span) {
  if (s.is_empty()) throw std::invalid_argument("random_point_of: empty set");
  const BoxAtom& at = s.atoms()[rng.below(0, static_cast<long long>(s.atoms().size()) - 1)];
  Point p = at.anchor();
  for (int j = 0; j < at.ambient; ++j) {
    switch (at.axes[j].kind) {
      case Constraint::Kind::RayUp: p[j] += rng.below(0, span); break;
      case Constraint::Kind::RayDown: p[j] -= rng.below(0, span); break;
      case Constraint::Kind::Range: p[j] = rng.below(at.axes[j].a, at.axes[j].b); break;
      case Constraint::Kind::Free: p[j] = rng.below(-span, span); break;
      case Constraint::Kind::Fixed: break;
    }
  }
  return p;
}

// Random finitary pet-permutation: a product of point transpositions.
inline PiecewiseMap random_finitary(Rng& rng, const OrthohedralSet& s, int swaps, coord_t span) {
  PiecewiseMap g = identity_map(s);
  for (int i = 0; i < swaps; ++i) {
    Point p = random_point_of(rng, s, span);
    Point q = random_point_of(rng, s, span);
    if (p == q) continue;
    g = compose(g, point_transposition(s, p, q));
  }
  return g;
}

// Random pet-permutation of S that shuffles the members of each parallel
// class onto each other by translations.
inline PiecewiseMap random_class_shuffle(Rng& rng, const OrthohedralSet& s) {
  std::map<Indicator, std::vector<BoxAtom>> classes;
  for (const auto& orth : orthant_decomposition(s))
    classes[germ_of_orthant(orth).directions].push_back(orth);
  PiecewiseMap m;
  m.domain = s;
  for (auto& [dirs, members] : classes) {
    std::vector<size_t> perm(members.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.below(0, static_cast<long long>(i) - 1)]);
    for (size_t i = 0; i < members.size(); ++i) {
      Point v = sub(members[perm[i]].anchor(), members[i].anchor());
      m.pieces.push_back({members[i], Isometry::translation(v)});
    }
  }
  return m;
}

// Random pet-bijection S -> g(S) that may move atoms off S: a finitary
// shuffle, per-atom retranslations to verified-disjoint positions, and a
// whole-set translation.  One atom moves at a time against the current
// configuration, so the configuration stays disjoint throughout.
inline PiecewiseMap random_pet_bijection(Rng& rng, const OrthohedralSet& s, coord_t span) {
  PiecewiseMap g = random_finitary(rng, s, static_cast<int>(rng.below(0, 2)), span);
  std::vector<BoxAtom> config = image_set(g).atoms();
  std::vector<Point> moves(config.size(), Point(s.ambient(), 0));
  for (size_t i = 0; i < config.size(); ++i) {
    if (rng.flip()) continue;
    for (int attempt = 0; attempt < 20; ++attempt) {
      Point v(s.ambient(), 0);
      for (auto& x : v) x = rng.below(-span, span);
      BoxAtom moved = Isometry::translation(v).apply(config[i]);
      bool ok = true;
      for (size_t k = 0; k < config.size(); ++k)
        if (k != i && intersect_atoms_opt(moved, config[k])) {
          ok = false;
          break;
        }
      if (ok) {
        config[i] = moved;
        moves[i] = v;
        break;
      }
    }
  }
  PiecewiseMap shuffle;
  shuffle.domain = image_set(g);
  const auto& base_atoms = shuffle.domain.atoms();
  for (size_t i = 0; i < base_atoms.size(); ++i)
    shuffle.pieces.push_back({base_atoms[i], Isometry::translation(moves[i])});
  PiecewiseMap r = compose(g, shuffle);
  Point v(s.ambient(), 0);
  for (auto& x : v) x = rng.below(-span, span);
  return compose(r, translation_map(image_set(r), v));
}

// Random pei-injection S -> S of positive height: conjugate diagonal
// exponents on the pei-normal stack back through the normal-form witness
// and mix in a finitary shuffle.
inline PiecewiseMap random_pei_injection(Rng& rng, const OrthohedralSet& s, coord_t exp_cap,
                                         coord_t span) {
  NormalFormResult nf = pei_normal_form(s);
  UnitBasis basis = orthant_units(nf.normalized);
  ExponentVector e(basis.regions.size(), 0);
  for (auto& x : e) x = rng.below(0, exp_cap);
  PiecewiseMap on_stack = realize(basis, e);
  PiecewiseMap mixed = compose(random_finitary(rng, nf.normalized, 1, span), on_stack);
  // conjugate back: witness ; mixed ; witness^{-1}
  PiecewiseMap w = nf.witness;
  PiecewiseMap back = compose(compose(w, mixed), invert(w));
  return back;
}

// Boundary injection partner for make_maximal: maps the slabs of the
// region boundary isometrically onto unused rank-(n-1) orthants of
// S - Sf.  `avoid` collects images already taken by other elements.
inline PiecewiseMap make_boundary_injection(const UnitBasis& basis, const PiecewiseMap& f,
                                            size_t region_index,
                                            std::vector<OrthohedralSet>& avoid, bool pet_only,
                                            size_t skip = 0) {
  OrthohedralSet boundary = region_boundary(basis, region_index);
  OrthohedralSet target = set_difference(basis.domain, image_set(f));
  std::vector<BoxAtom> slabs = orthant_decomposition(boundary);
  std::vector<BoxAtom> goals = orthant_decomposition(target);
  std::vector<bool> used(goals.size(), false);
  PiecewiseMap m;
  m.domain = boundary;
  for (const auto& slab : slabs) {
    Indicator sd = germ_of_orthant(slab).directions;
    bool placed = false;
    size_t to_skip = skip;
    for (size_t i = 0; i < goals.size() && !placed; ++i) {
      if (used[i]) continue;
      if (goals[i].rank() != slab.rank()) continue;
      if (pet_only && !(germ_of_orthant(goals[i]).directions == sd)) continue;
      OrthohedralSet img = OrthohedralSet::from_atoms(basis.domain.ambient(), {goals[i]});
      bool clash = false;
      for (const auto& av : avoid)
        if (!sets_disjoint(img, av)) {
          clash = true;
          break;
        }
      if (clash) continue;
      if (to_skip > 0) {
        --to_skip;
        continue;
      }
      m.pieces.push_back({slab, nf_detail::orthant_onto(slab, goals[i])});
      used[i] = true;
      avoid.push_back(img);
      placed = true;
    }
    if (!placed)
      throw std::invalid_argument("make_boundary_injection: not enough room in S - Sf");
  }
  return m;
}

// Random element of the tree-pair group with the given caret budget.
inline TreePairElement random_tree_pair(Rng& rng, int carets) {
  TreePairElement e = identity_pair();
  for (int i = 0; i < carets; ++i) {
    auto leaves = e.domain.leaves();
    expand_at(e, leaves[rng.below(0, static_cast<long long>(leaves.size()) - 1)]);
  }
  // shuffle the leaf and inner bijections
  auto dl = e.domain.leaves();
  auto rl_map = e.leaf_bij;
  std::vector<TreeVertex> images;
  for (const auto& v : dl) images.push_back(rl_map.at(v));
  for (size_t i = images.size(); i > 1; --i)
    std::swap(images[i - 1], images[rng.below(0, static_cast<long long>(i) - 1)]);
  e.leaf_bij.clear();
  for (size_t i = 0; i < dl.size(); ++i) e.leaf_bij[dl[i]] = images[i];
  auto di = e.domain.inner_vertices();
  std::vector<TreeVertex> iimages;
  for (const auto& v : di) iimages.push_back(e.inner_bij.at(v));
  for (size_t i = iimages.size(); i > 1; --i)
    std::swap(iimages[i - 1], iimages[rng.below(0, static_cast<long long>(i) - 1)]);
  e.inner_bij.clear();
  for (size_t i = 0; i < di.size(); ++i) e.inner_bij[di[i]] = iimages[i];
  validate_pair(e);
  return e;
}

}  // namespace pei
