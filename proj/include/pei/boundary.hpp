#pragma once

#include "pei/normal_form.hpp"

// Boundary at infinity of sets inside the standard orthant, the retract
// homomorphism theta_x with its section sigma_x, link heights, and the
// finiteness-length bound report.

namespace pei {

inline bool inside_standard_orthant(const OrthohedralSet& s) {
  for (const auto& at : s.atoms())
    for (const auto& c : at.axes) {
      switch (c.kind) {
        case Constraint::Kind::Fixed:
        case Constraint::Kind::RayUp:
          if (c.a < 0) return false;
          break;
        case Constraint::Kind::Range:
          if (c.a < 0) return false;
          break;
        default:
          return false;  // RayDown and Free leave N^N
      }
    }
  return true;
}

inline BoxAtom delete_axis(const BoxAtom& at, int axis) {
  BoxAtom b;
  b.ambient = at.ambient - 1;
  for (int j = 0; j < at.ambient; ++j)
    if (j != axis) b.axes.push_back(at.axes[j]);
  return b;
}

inline BoxAtom insert_axis(const BoxAtom& at, int axis, const Constraint& c) {
  BoxAtom b;
  b.ambient = at.ambient + 1;
  for (int j = 0; j < b.ambient; ++j) {
    if (j < axis)
      b.axes.push_back(at.axes[j]);
    else if (j == axis)
      b.axes.push_back(c);
    else
      b.axes.push_back(at.axes[j - 1]);
  }
  return b;
}

// The boundary at infinity in direction x: off-coordinates of the germs
// of x-parallel rays, an orthohedral subset of N^(N-1).
inline OrthohedralSet boundary_direction(const OrthohedralSet& s, int axis) {
  if (!inside_standard_orthant(s))
    throw std::invalid_argument("boundary_direction: set not inside the standard orthant");
  std::vector<BoxAtom> pieces;
  for (const auto& at : s.atoms())
    if (at.axes[axis].kind == Constraint::Kind::RayUp) pieces.push_back(delete_axis(at, axis));
  return OrthohedralSet::from_atoms(s.ambient() - 1, pieces);
}

// Base of the maximal x-ray over each boundary point, as piecewise data:
// disjoint off-atoms with a constant base level each.
struct RayBases {
  int axis = 0;
  std::vector<std::pair<BoxAtom, coord_t>> pieces;  // off-atom, base level

  coord_t base_at(const Point& off) const {
    for (const auto& [at, b] : pieces)
      if (at.contains(off)) return b;
    throw std::invalid_argument("RayBases: point outside the boundary");
  }
};

inline RayBases ray_bases(const OrthohedralSet& s, int axis) {
  if (!inside_standard_orthant(s))
    throw std::invalid_argument("ray_bases: set not inside the standard orthant");
  RayBases rb;
  rb.axis = axis;
  std::vector<std::pair<BoxAtom, coord_t>> work;
  for (const auto& at : s.atoms())
    if (at.axes[axis].kind == Constraint::Kind::RayUp)
      work.emplace_back(delete_axis(at, axis), at.axes[axis].a);
  // extend maximal rays downward through adjoining atoms
  while (!work.empty()) {
    auto [off, base] = work.back();
    work.pop_back();
    if (base == 0) {
      rb.pieces.emplace_back(off, base);
      continue;
    }
    // points of S on the slice x = base-1 over this off-region
    std::vector<BoxAtom> slice;
    for (const auto& at : s.atoms())
      if (at.axes[axis].contains(base - 1)) slice.push_back(delete_axis(at, axis));
    OrthohedralSet covered =
        set_intersection(OrthohedralSet::from_atoms(off.ambient, {off}),
                         OrthohedralSet::from_atoms(off.ambient, slice));
    if (covered.is_empty()) {
      rb.pieces.emplace_back(off, base);
      continue;
    }
    for (const auto& at : covered.atoms()) work.emplace_back(at, base - 1);
    OrthohedralSet remaining =
        set_difference(OrthohedralSet::from_atoms(off.ambient, {off}), covered);
    for (const auto& at : remaining.atoms()) rb.pieces.emplace_back(at, base);
  }
  return rb;
}

// Normal-form structure used by the splitting and link computations: the
// decomposition orthants grouped into an antichain of parallel classes.
struct StackStructure {
  std::map<Indicator, std::vector<BoxAtom>> classes;
};

inline StackStructure normal_form_structure(const OrthohedralSet& s) {
  StackStructure st;
  for (const auto& orth : orthant_decomposition(s))
    st.classes[germ_of_orthant(orth).directions].push_back(orth);
  for (const auto& [a, ua] : st.classes)
    for (const auto& [b, ub] : st.classes)
      if (!(a == b) && indicator_subset(a, b))
        throw std::invalid_argument("normal_form_structure: set is not in pet-normal form");
  return st;
}

// S = S(x) ∪ S^⊥(x): stacks containing x-parallel rays versus the rest.
inline std::pair<OrthohedralSet, OrthohedralSet> split_direction(const OrthohedralSet& s, int axis) {
  StackStructure st = normal_form_structure(s);
  std::vector<BoxAtom> with, without;
  for (const auto& [dirs, orths] : st.classes) {
    bool has = std::binary_search(dirs.begin(), dirs.end(), AxisDirection{axis, +1});
    auto& bucket = has ? with : without;
    bucket.insert(bucket.end(), orths.begin(), orths.end());
  }
  return {OrthohedralSet::from_atoms(s.ambient(), with),
          OrthohedralSet::from_atoms(s.ambient(), without)};
}

// Induced pet-permutation of the boundary: each x-ray germ moves by the
// off-part of the translation of the piece carrying its tail.
inline PiecewiseMap theta(const PiecewiseMap& g, int axis) {
  if (!is_pet(g)) throw std::invalid_argument("theta: map is not a pet-map");
  OrthohedralSet boundary = boundary_direction(g.domain, axis);
  PiecewiseMap m;
  m.domain = boundary;
  for (const auto& pc : g.pieces) {
    if (pc.atom.axes[axis].kind != Constraint::Kind::RayUp) continue;
    Point v;
    for (int j = 0; j < g.ambient(); ++j)
      if (j != axis) v.push_back(pc.iso.shift[j]);
    m.pieces.push_back({delete_axis(pc.atom, axis), Isometry::translation(v)});
  }
  merge_pieces(m);
  return m;
}

// Section of theta: lift a pet-permutation of the boundary to S by
// mapping maximal rays onto maximal rays, identity on the perpendicular
// part.
inline PiecewiseMap sigma_lift(const PiecewiseMap& k, int axis, const OrthohedralSet& s) {
  OrthohedralSet boundary = boundary_direction(s, axis);
  if (!sets_equal(k.domain, boundary))
    throw std::invalid_argument("sigma_lift: map domain is not the boundary");
  RayBases rb = ray_bases(s, axis);
  PiecewiseMap m;
  m.domain = s;
  for (const auto& pc : k.pieces) {
    for (const auto& [src_off, src_base] : rb.pieces) {
      auto cut1 = intersect_atoms_opt(pc.atom, src_off);
      if (!cut1) continue;
      for (const auto& [dst_off, dst_base] : rb.pieces) {
        // preimage of the destination base region under the translation
        Isometry inv = pc.iso.inverse();
        auto cut2 = intersect_atoms_opt(*cut1, inv.apply(dst_off));
        if (!cut2) continue;
        BoxAtom lifted = insert_axis(*cut2, axis, Constraint::ray_up(src_base));
        Point v;
        for (int j = 0, o = 0; j < s.ambient(); ++j) {
          if (j == axis)
            v.push_back(dst_base - src_base);
          else
            v.push_back(pc.iso.shift[o++]);
        }
        m.pieces.push_back({lifted, Isometry::translation(v)});
      }
    }
  }
  // identity off the x-parallel rays
  std::vector<BoxAtom> ray_atoms;
  for (const auto& pc : m.pieces) ray_atoms.push_back(pc.atom);
  OrthohedralSet rays = OrthohedralSet::from_atoms(s.ambient(), ray_atoms);
  OrthohedralSet rest = set_difference(s, rays);
  for (const auto& at : rest.atoms()) m.pieces.push_back({at, Isometry::identity(s.ambient())});
  merge_pieces(m);
  return m;
}

// Height of the union of stacks over the link of an (n-1)-element axis
// set Y: all classes of full rank containing Y contribute their heights.
inline coord_t link_height(const OrthohedralSet& s, const std::vector<int>& y_axes) {
  if (!inside_standard_orthant(s))
    throw std::invalid_argument("link_height: set not inside the standard orthant");
  StackStructure st = normal_form_structure(s);
  int n = s.rank();
  if (static_cast<int>(y_axes.size()) != n - 1)
    throw std::invalid_argument("link_height: direction set must have n-1 axes");
  Indicator y;
  for (int a : y_axes) y.push_back({a, +1});
  std::sort(y.begin(), y.end());
  coord_t h = 0;
  for (const auto& [dirs, orths] : st.classes)
    if (static_cast<int>(dirs.size()) == n && indicator_subset(y, dirs))
      h += static_cast<coord_t>(orths.size());
  return h;
}

struct BoundsReport {
  std::string flavor;  // "pei" | "pet"
  std::optional<coord_t> lower;
  std::optional<coord_t> upper;
  std::vector<std::string> provenance;
  int rank = 0;
  coord_t height = 0;
  std::optional<int> components;
};

// Aggregates the finiteness-length bounds; the length itself is never
// computed, only the applicable inequalities are reported.
inline BoundsReport fl_report(const OrthohedralSet& s, const std::string& flavor) {
  BoundsReport r;
  r.flavor = flavor;
  auto inv = invariants(s);
  r.rank = inv.rank;
  r.height = inv.height;
  if (flavor == "pei") {
    r.lower = inv.height - 1;
    r.provenance.push_back("height-lower-bound: fl(pei(S)) >= h(S) - 1");
    return r;
  }
  if (flavor != "pet") throw std::invalid_argument("fl_report: flavor must be pei or pet");

  auto st = recognize_skeleton_stack(s);
  if (st) {
    r.components = st->component_count();
    r.lower = st->component_count() - 1;
    r.provenance.push_back("component-lower-bound: fl(pet(S)) >= c(S) - 1 for skeleton stacks");
    if (st->n == st->r) {
      r.upper = r.lower;
      r.provenance.push_back("stack-equality: fl(pet(S)) = h(S) - 1 for stacks of orthants");
      return r;
    }
  }
  if (inside_standard_orthant(s)) {
    bool normal = true;
    try {
      normal_form_structure(s);
    } catch (const std::invalid_argument&) {
      normal = false;
    }
    if (normal && s.rank() >= 1) {
      // minimum over (n-1)-subsets of axes with nonempty link
      int n = s.rank();
      std::vector<int> axes(s.ambient());
      std::iota(axes.begin(), axes.end(), 0);
      std::vector<int> pick(s.ambient(), 0);
      if (n - 1 <= s.ambient()) {
        std::fill(pick.begin(), pick.begin() + (n - 1), 1);
        std::sort(pick.begin(), pick.end());
        std::optional<coord_t> best;
        do {
          std::vector<int> y;
          for (int j = 0; j < s.ambient(); ++j)
            if (pick[j]) y.push_back(j);
          coord_t lh = link_height(s, y);
          if (lh > 0 && (!best || lh < *best)) best = lh;
        } while (std::next_permutation(pick.begin(), pick.end()));
        if (best) {
          r.upper = *best - 1;
          r.provenance.push_back("link-upper-bound: fl(pet(S)) <= h(S(Lk(Y))) - 1 over admissible Y");
        }
      }
    }
  }
  if (!r.lower && !r.upper) r.provenance.push_back("no applicable bound rule");
  return r;
}

}  // namespace pei
