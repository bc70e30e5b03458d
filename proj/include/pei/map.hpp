#pragma once

#include "pei/skeleton.hpp"

// Piecewise Euclidean-isometric maps: finitely many (atom, isometry)
// pieces over an orthohedral domain.  Everything downstream (normal
// forms, the Morse poset, boundary retracts) is built from these.

namespace pei {

struct Piece {
  BoxAtom atom;
  Isometry iso;
};

struct PiecewiseMap {
  OrthohedralSet domain;
  std::vector<Piece> pieces;

  int ambient() const { return domain.ambient(); }
};

struct MapFlags {
  bool injective = false;
  bool bijective_onto_domain = false;
  bool pet = false;
  bool diagonal = false;
  bool super_diagonal = false;
};

inline PiecewiseMap identity_map(const OrthohedralSet& s) {
  PiecewiseMap m;
  m.domain = s;
  for (const auto& at : s.atoms()) m.pieces.push_back({at, Isometry::identity(s.ambient())});
  return m;
}

inline PiecewiseMap isometry_map(const OrthohedralSet& s, const Isometry& t) {
  PiecewiseMap m;
  m.domain = s;
  for (const auto& at : s.atoms()) m.pieces.push_back({at, t});
  return m;
}

inline PiecewiseMap translation_map(const OrthohedralSet& s, const Point& v) {
  return isometry_map(s, Isometry::translation(v));
}

// Glue maps with pairwise disjoint domains.
inline PiecewiseMap union_map(const std::vector<PiecewiseMap>& parts) {
  if (parts.empty()) throw std::invalid_argument("union_map: no parts");
  PiecewiseMap m;
  OrthohedralSet dom = parts[0].domain;
  m.pieces = parts[0].pieces;
  for (size_t i = 1; i < parts.size(); ++i) {
    if (!sets_disjoint(dom, parts[i].domain))
      throw std::invalid_argument("union_map: domains overlap");
    dom = set_union(dom, parts[i].domain);
    m.pieces.insert(m.pieces.end(), parts[i].pieces.begin(), parts[i].pieces.end());
  }
  m.domain = dom;
  return m;
}

inline Point apply(const PiecewiseMap& m, const Point& p) {
  for (const auto& pc : m.pieces)
    if (pc.atom.contains(p)) return pc.iso.apply(p);
  throw std::invalid_argument("apply: point outside the map domain");
}

inline OrthohedralSet image_set(const PiecewiseMap& m) {
  std::vector<BoxAtom> images;
  images.reserve(m.pieces.size());
  for (const auto& pc : m.pieces) images.push_back(pc.iso.apply(pc.atom));
  return OrthohedralSet::from_atoms(m.ambient(), images);
}

// Two affine maps agree on an atom iff they agree at its anchor and at a
// neighbouring in-atom point along every axis with at least two points.
inline bool isometries_agree_on(const BoxAtom& at, const Isometry& a, const Isometry& b) {
  Point p = at.anchor();
  if (a.apply(p) != b.apply(p)) return false;
  for (int j = 0; j < at.ambient; ++j) {
    int step = at.axes[j].probe_step();
    if (step == 0) continue;
    Point q = p;
    q[j] += step;
    if (a.apply(q) != b.apply(q)) return false;
  }
  return true;
}

inline bool piece_acts_identically(const Piece& pc) {
  return isometries_agree_on(pc.atom, pc.iso, Isometry::identity(pc.atom.ambient));
}

// Structural validation: pieces partition the domain.  Throws otherwise.
inline void check_partition(const PiecewiseMap& m) {
  std::vector<BoxAtom> atoms;
  for (const auto& pc : m.pieces) atoms.push_back(pc.atom);
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j)
      if (intersect_atoms_opt(atoms[i], atoms[j]))
        throw std::invalid_argument("piecewise map: overlapping pieces");
  OrthohedralSet covered = OrthohedralSet::from_atoms(m.ambient(), atoms);
  if (!sets_equal(covered, m.domain))
    throw std::invalid_argument("piecewise map: pieces do not cover the domain");
}

inline bool is_injective(const PiecewiseMap& m) {
  std::vector<BoxAtom> images;
  for (const auto& pc : m.pieces) images.push_back(pc.iso.apply(pc.atom));
  for (size_t i = 0; i < images.size(); ++i)
    for (size_t j = i + 1; j < images.size(); ++j)
      if (intersect_atoms_opt(images[i], images[j])) return false;
  return true;
}

inline bool is_pet(const PiecewiseMap& m) {
  for (const auto& pc : m.pieces)
    if (!pc.iso.is_translation()) return false;
  return true;
}

// Merge pieces whose isometries agree and whose atoms join into one atom.
inline void merge_pieces(PiecewiseMap& m) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < m.pieces.size() && !changed; ++i) {
      for (size_t j = i + 1; j < m.pieces.size() && !changed; ++j) {
        if (!(m.pieces[i].iso == m.pieces[j].iso)) continue;
        if (auto merged = merge_atoms(m.pieces[i].atom, m.pieces[j].atom)) {
          m.pieces[j].atom = *merged;
          m.pieces.erase(m.pieces.begin() + i);
          changed = true;
        }
      }
    }
  }
}

// compose(f, g): first f, then g.  Requires image(f) inside domain(g).
inline PiecewiseMap compose(const PiecewiseMap& f, const PiecewiseMap& g) {
  if (f.ambient() != g.ambient())
    throw std::invalid_argument("compose: ambient dimension mismatch");
  if (!subset_of(image_set(f), g.domain))
    throw std::invalid_argument("compose: image of first map escapes second domain");
  PiecewiseMap r;
  r.domain = f.domain;
  for (const auto& pf : f.pieces) {
    BoxAtom img = pf.iso.apply(pf.atom);
    Isometry inv = pf.iso.inverse();
    for (const auto& pg : g.pieces) {
      if (auto cut = intersect_atoms_opt(img, pg.atom)) {
        r.pieces.push_back({inv.apply(*cut), pg.iso.compose_after(pf.iso)});
      }
    }
  }
  merge_pieces(r);
  return r;
}

inline PiecewiseMap invert(const PiecewiseMap& m) {
  if (!is_injective(m)) throw std::invalid_argument("invert: map is not injective");
  PiecewiseMap r;
  r.domain = image_set(m);
  for (const auto& pc : m.pieces) r.pieces.push_back({pc.iso.apply(pc.atom), pc.iso.inverse()});
  return r;
}

// Restriction to an orthohedral subset of the domain.
inline PiecewiseMap restrict_map(const PiecewiseMap& m, const OrthohedralSet& sub) {
  if (!subset_of(sub, m.domain))
    throw std::invalid_argument("restrict_map: subset escapes the domain");
  PiecewiseMap r;
  r.domain = sub;
  for (const auto& pc : m.pieces)
    for (const auto& at : sub.atoms())
      if (auto cut = intersect_atoms_opt(pc.atom, at)) r.pieces.push_back({*cut, pc.iso});
  merge_pieces(r);
  return r;
}

inline bool maps_equal(const PiecewiseMap& f, const PiecewiseMap& g) {
  if (f.ambient() != g.ambient()) return false;
  if (!sets_equal(f.domain, g.domain)) return false;
  for (const auto& pf : f.pieces)
    for (const auto& pg : g.pieces)
      if (auto cut = intersect_atoms_opt(pf.atom, pg.atom))
        if (!isometries_agree_on(*cut, pf.iso, pg.iso)) return false;
  return true;
}

// Germ action of an injective map: each maximal germ of the domain lives
// commensurably inside exactly one piece; that piece's isometry moves it.
struct GermActionEntry {
  Germ from;
  Germ to;
  Isometry piece_iso;  // the isometry realizing the action
};

inline std::vector<GermActionEntry> germ_action(const PiecewiseMap& m) {
  struct Local {
    Germ germ;
    size_t piece;
  };
  std::vector<Local> all;
  for (size_t i = 0; i < m.pieces.size(); ++i)
    for (const auto& orth : orthant_decomposition(m.pieces[i].atom))
      all.push_back({germ_of_orthant(orth), i});
  std::vector<GermActionEntry> out;
  for (size_t i = 0; i < all.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < all.size() && maximal; ++j) {
      if (i == j) continue;
      if (germ_leq(all[i].germ, all[j].germ) && !(all[i].germ == all[j].germ)) maximal = false;
    }
    if (!maximal) continue;
    const Isometry& iso = m.pieces[all[i].piece].iso;
    out.push_back({all[i].germ, apply_isometry(iso, all[i].germ), iso});
  }
  std::sort(out.begin(), out.end(),
            [](const GermActionEntry& a, const GermActionEntry& b) { return a.from < b.from; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const GermActionEntry& a, const GermActionEntry& b) {
                          return a.from == b.from;
                        }),
            out.end());
  return out;
}

// The isometry a germ-fixing piece induces on the tangent coset
// <germ> ~ Z^rk, coordinates indexed by the sorted direction axes.
inline Isometry induced_tangent_isometry(const Germ& g, const Isometry& iso) {
  int k = g.rank();
  std::vector<int> axes;
  for (const auto& d : g.directions) axes.push_back(d.axis);
  Isometry r;
  r.perm.resize(k);
  r.sign.resize(k);
  r.shift.assign(k, 0);
  for (int i = 0; i < k; ++i) {
    int image_axis = iso.perm[axes[i]];
    auto it = std::find(axes.begin(), axes.end(), image_axis);
    if (it == axes.end())
      throw std::invalid_argument("induced_tangent_isometry: germ is not fixed");
    r.perm[i] = static_cast<int>(it - axes.begin());
    r.sign[i] = iso.sign[axes[i]];
  }
  for (int i = 0; i < k; ++i) r.shift[r.perm[i]] = iso.shift[iso.perm[axes[i]]];
  return r;
}

// Diagonal exponent of a tangent translation: shift = k * u along the
// germ's signed directions, if such k exists.
inline std::optional<coord_t> diagonal_exponent(const Germ& g, const Isometry& tangent) {
  if (!tangent.is_translation()) return std::nullopt;
  if (g.rank() == 0) return 0;
  std::optional<coord_t> k;
  for (int i = 0; i < g.rank(); ++i) {
    coord_t along = tangent.shift[i] * g.directions[i].sign;
    if (!k)
      k = along;
    else if (*k != along)
      return std::nullopt;
  }
  return k;
}

struct GermTranslation {
  Germ germ;
  Isometry tangent;                   // induced isometry of <germ>
  bool translation = false;
  std::optional<coord_t> exponent;    // diagonal exponent when diagonal
};

struct TranslationProfile {
  std::vector<GermTranslation> entries;  // one per maximal germ
  bool all_translations = false;
  bool all_diagonal = false;
  // Component translation lengths, when the domain carries a recognized
  // component structure and the map is super-diagonal over it.
  std::vector<coord_t> lambda;
  bool super_diagonal = false;
};

// Reconstructs the skeleton stack whose regular-point set a given union
// of maximal orthants is, grouping those orthants into components.
struct InteriorComponents {
  SkeletonStack stack;                      // the stack S with interior = input
  std::vector<OrthohedralSet> components;   // component interiors
};

inline std::optional<InteriorComponents> recognize_interior(const OrthohedralSet& s) {
  auto pf = recognize_pure_orthants(s);
  if (!pf) return std::nullopt;
  std::vector<BoxAtom> originals;
  for (const auto& k : pf->orthants) {
    Indicator dirs = k.orthant_directions();
    Point u = diagonal_unit(s.ambient(), dirs);
    originals.push_back(Isometry::translation(scale(u, -1)).apply(k));
  }
  OrthohedralSet whole = OrthohedralSet::from_atoms(s.ambient(), originals);
  auto st = recognize_skeleton_stack(whole);
  if (!st) return std::nullopt;
  InteriorComponents ic;
  ic.stack = *st;
  for (int c = 0; c < st->component_count(); ++c) {
    std::vector<BoxAtom> ints;
    for (const auto& f : st->component_faces(c)) ints.push_back(orthant_interior(f));
    ic.components.push_back(OrthohedralSet::from_atoms(s.ambient(), ints));
  }
  return ic;
}

// Profile of a map fixing all maximal germs of its domain (membership in
// M_0); throws when a maximal germ moves.
inline TranslationProfile kappa(const PiecewiseMap& m) {
  TranslationProfile prof;
  prof.all_translations = true;
  prof.all_diagonal = true;
  auto action = germ_action(m);
  for (const auto& ga : action) {
    if (!(ga.from == ga.to))
      throw std::invalid_argument("kappa: map moves a maximal germ");
    GermTranslation gt;
    gt.germ = ga.from;
    gt.tangent = induced_tangent_isometry(ga.from, ga.piece_iso);
    gt.translation = gt.tangent.is_translation();
    gt.exponent = diagonal_exponent(ga.from, gt.tangent);
    prof.all_translations = prof.all_translations && gt.translation;
    prof.all_diagonal = prof.all_diagonal && gt.exponent.has_value();
    prof.entries.push_back(std::move(gt));
  }
  if (prof.all_diagonal) {
    if (auto ic = recognize_interior(m.domain)) {
      prof.super_diagonal = is_pet(m);
      for (const auto& comp : ic->components) {
        std::optional<coord_t> l;
        for (const auto& gt : prof.entries) {
          OrthohedralSet coset =
              OrthohedralSet::from_atoms(m.ambient(), {gt.germ.tangent_coset()});
          OrthohedralSet inter = set_intersection(coset, comp);
          if (!inter.is_empty() && inter.rank() == gt.germ.rank()) {
            if (!l)
              l = *gt.exponent;
            else if (*l != *gt.exponent)
              prof.super_diagonal = false;
          }
        }
        prof.lambda.push_back(l.value_or(0));
      }
      if (!prof.super_diagonal) prof.lambda.clear();
    } else {
      // Without component structure every germ is its own component.
      prof.super_diagonal = is_pet(m);
      if (prof.super_diagonal)
        for (const auto& gt : prof.entries) prof.lambda.push_back(*gt.exponent);
    }
  }
  return prof;
}

// Full classification; throws on partition failures.
inline MapFlags classify(const PiecewiseMap& m) {
  check_partition(m);
  MapFlags f;
  f.injective = is_injective(m);
  f.pet = is_pet(m);
  if (f.injective) {
    f.bijective_onto_domain = sets_equal(image_set(m), m.domain);
    bool fixes_max_germs = true;
    for (const auto& ga : germ_action(m))
      if (!(ga.from == ga.to)) fixes_max_germs = false;
    if (fixes_max_germs && subset_of(image_set(m), m.domain)) {
      auto prof = kappa(m);
      f.diagonal = prof.all_diagonal;
      f.super_diagonal = prof.super_diagonal;
    }
  }
  return f;
}

// Height of a pei-injection f : S -> S, the number of rank-(n-1) germs of
// S - f(S) where n = rk S.
inline coord_t injection_height(const PiecewiseMap& m) {
  OrthohedralSet img = image_set(m);
  if (!is_injective(m)) throw std::invalid_argument("injection_height: map is not injective");
  if (!subset_of(img, m.domain))
    throw std::invalid_argument("injection_height: image escapes the domain");
  int n = m.domain.rank();
  OrthohedralSet diff = set_difference(m.domain, img);
  if (!diff.is_empty() && diff.rank() >= n)
    throw std::invalid_argument("injection_height: complement of the image has full rank");
  return diff.height_at_rank(n - 1);
}

// h_Y(f): rank-(n-1) germs of S - f(S) parallel to the direction set Y.
inline coord_t parallel_height(const PiecewiseMap& m, const Indicator& y) {
  OrthohedralSet img = image_set(m);
  if (!is_injective(m) || !subset_of(img, m.domain))
    throw std::invalid_argument("parallel_height: not a pei-injection into the domain");
  int n = m.domain.rank();
  if (static_cast<int>(y.size()) != n - 1)
    throw std::invalid_argument("parallel_height: direction set must have rank n-1");
  OrthohedralSet diff = set_difference(m.domain, img);
  coord_t count = 0;
  for (const auto& gw : decomposition_germs(diff))
    if (gw.germ.directions == y) ++count;
  return count;
}

inline bool has_finite_support(const PiecewiseMap& m) {
  for (const auto& pc : m.pieces)
    if (pc.atom.rank() >= 1 && !piece_acts_identically(pc)) return false;
  return true;
}

struct SeriesMembership {
  bool in_k = false;  // pointwise fixes a commensurable suborthant of every rank >= j germ
  bool in_c = false;  // fixes every germ of rank >= j
  std::vector<GermTranslation> fixed_rank_j_germs;  // induced isometries at rank j
};

// Membership in the normal-series subgroups at level j.
inline SeriesMembership series_membership(const PiecewiseMap& m, int j) {
  int n = m.domain.rank();
  if (j < 1 || j > std::max(n, 1))
    throw std::invalid_argument("series_membership: level out of range");
  SeriesMembership r;
  auto in_k_at = [&](int level) {
    for (const auto& pc : m.pieces)
      if (pc.atom.rank() >= level && !piece_acts_identically(pc)) return false;
    return true;
  };
  r.in_k = in_k_at(j);
  r.in_c = in_k_at(j + 1);
  if (r.in_c) {
    for (const auto& pc : m.pieces) {
      if (pc.atom.rank() != j) continue;
      for (const auto& orth : orthant_decomposition(pc.atom)) {
        Germ g = germ_of_orthant(orth);
        if (!(apply_isometry(pc.iso, g) == g)) {
          r.in_c = false;
          break;
        }
        GermTranslation gt;
        gt.germ = g;
        gt.tangent = induced_tangent_isometry(g, pc.iso);
        gt.translation = gt.tangent.is_translation();
        gt.exponent = diagonal_exponent(g, gt.tangent);
        r.fixed_rank_j_germs.push_back(std::move(gt));
      }
      if (!r.in_c) break;
    }
    if (!r.in_c) r.fixed_rank_j_germs.clear();
  }
  return r;
}

inline coord_t max_abs_constant(const PiecewiseMap& m) {
  coord_t v = max_abs_constant(m.domain);
  for (const auto& pc : m.pieces) {
    v = std::max(v, max_abs_constant(pc.atom));
    for (coord_t x : pc.iso.shift) v = std::max(v, std::abs(x));
  }
  return v;
}

// t_L on a maximal orthant L of S, extended by the identity.
inline PiecewiseMap diagonal_unit_map(const OrthohedralSet& s, const BoxAtom& orthant,
                                      coord_t exponent = 1) {
  Indicator dirs = orthant.orthant_directions();
  Point u = scale(diagonal_unit(s.ambient(), dirs), exponent);
  OrthohedralSet inside = OrthohedralSet::from_atoms(s.ambient(), {orthant});
  OrthohedralSet rest = set_difference(s, inside);
  PiecewiseMap m;
  m.domain = s;
  m.pieces.push_back({orthant, Isometry::translation(u)});
  for (const auto& at : rest.atoms()) m.pieces.push_back({at, Isometry::identity(s.ambient())});
  return m;
}

// Transposition of two points of S, identity elsewhere.
inline PiecewiseMap point_transposition(const OrthohedralSet& s, const Point& p, const Point& q) {
  std::vector<Constraint> cp, cq;
  for (coord_t v : p) cp.push_back(Constraint::fixed(v));
  for (coord_t v : q) cq.push_back(Constraint::fixed(v));
  BoxAtom ap(s.ambient(), cp), aq(s.ambient(), cq);
  OrthohedralSet two = OrthohedralSet::from_atoms(s.ambient(), {ap, aq});
  if (!subset_of(two, s))
    throw std::invalid_argument("point_transposition: points outside the set");
  OrthohedralSet rest = set_difference(s, two);
  PiecewiseMap m;
  m.domain = s;
  m.pieces.push_back({ap, Isometry::translation(sub(q, p))});
  m.pieces.push_back({aq, Isometry::translation(sub(p, q))});
  for (const auto& at : rest.atoms()) m.pieces.push_back({at, Isometry::identity(s.ambient())});
  return m;
}

}  // namespace pei
