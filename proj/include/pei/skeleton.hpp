#pragma once

#include "pei/germ.hpp"

// Skeletons of orthants, stacks of skeleton copies, regular and singular
// points, and the component structure used by the super-diagonal monoid.

namespace pei {

// Union of all rank-k faces of an orthant, disjointified.
inline OrthohedralSet skeleton(const BoxAtom& orthant, int k) {
  if (!orthant.is_orthant())
    throw std::invalid_argument("skeleton: atom has Range or Free axes");
  Indicator dirs = orthant.orthant_directions();
  int r = static_cast<int>(dirs.size());
  if (k < 0 || k > r) throw std::invalid_argument("skeleton: face rank out of range");
  Point base = orthant.anchor();
  for (const auto& d : dirs) base[d.axis] = orthant.axes[d.axis].a;

  std::vector<BoxAtom> faces;
  std::vector<int> pick(r, 0);
  std::fill(pick.begin(), pick.begin() + k, 1);
  std::sort(pick.begin(), pick.end());
  do {
    Indicator sub;
    for (int i = 0; i < r; ++i)
      if (pick[i]) sub.push_back(dirs[i]);
    faces.push_back(make_orthant(orthant.ambient, sub, base));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return OrthohedralSet::from_atoms(orthant.ambient, faces);
}

// L - t_L(L): the finite-direction boundary slabs of an orthant.
inline OrthohedralSet orthant_boundary(const BoxAtom& orthant) {
  Indicator dirs = orthant.orthant_directions();
  Point u = diagonal_unit(orthant.ambient, dirs);
  OrthohedralSet L = OrthohedralSet::from_atoms(orthant.ambient, {orthant});
  return set_difference(L, L.translated(u));
}

// The diagonal-translate interior of an orthant.
inline BoxAtom orthant_interior(const BoxAtom& orthant) {
  Indicator dirs = orthant.orthant_directions();
  return Isometry::translation(diagonal_unit(orthant.ambient, dirs)).apply(orthant);
}

// A stack of parallel copies of the rank-n skeleton of a rank-r orthant.
// For n == r this is an ordinary stack of orthants.
struct SkeletonStack {
  int ambient = 0;
  int r = 0;  // rank of the underlying orthant
  int n = 0;  // skeleton rank; rank of the set
  Indicator directions;          // the r signed directions of the orthant
  std::vector<Point> bases;      // one base point per component
  std::vector<OrthohedralSet> components;  // the skeleton copies

  int component_count() const { return static_cast<int>(bases.size()); }

  // The h(C) = binom(r,n) maximal rank-n faces of one component.
  std::vector<BoxAtom> component_faces(int c) const {
    std::vector<BoxAtom> out;
    int rr = r;
    std::vector<int> pick(rr, 0);
    std::fill(pick.begin(), pick.begin() + n, 1);
    std::sort(pick.begin(), pick.end());
    do {
      Indicator sub;
      for (int i = 0; i < rr; ++i)
        if (pick[i]) sub.push_back(directions[i]);
      out.push_back(make_orthant(ambient, sub, bases[c]));
    } while (std::next_permutation(pick.begin(), pick.end()));
    return out;
  }
};

// Recognizes a stack of rank-n skeleton copies.  Verification is by exact
// set equality against the reconstructed union of faces, so a positive
// answer is always sound.
inline std::optional<SkeletonStack> recognize_skeleton_stack(const OrthohedralSet& s) {
  if (s.is_empty()) return std::nullopt;
  auto germs = max_germs(s);
  int n = s.rank();
  for (const auto& gw : germs)
    if (gw.germ.rank() != n) return std::nullopt;

  // The union of all direction sets must be a single signed r-set.
  std::map<int, int> axis_sign;
  for (const auto& gw : germs)
    for (const auto& d : gw.germ.directions) {
      auto it = axis_sign.find(d.axis);
      if (it == axis_sign.end())
        axis_sign[d.axis] = d.sign;
      else if (it->second != d.sign)
        return std::nullopt;
    }
  Indicator dirs;
  for (const auto& [axis, sign] : axis_sign) dirs.push_back({axis, sign});
  std::sort(dirs.begin(), dirs.end());
  int r = static_cast<int>(dirs.size());
  if (n > r) return std::nullopt;

  std::set<int> dir_axes;
  for (const auto& d : dirs) dir_axes.insert(d.axis);

  // Group germs by their coordinates on the axes outside the direction
  // set; each group is one candidate component.
  std::map<std::vector<coord_t>, std::vector<const GermWitness*>> groups;
  for (const auto& gw : germs) {
    std::vector<coord_t> key;
    for (const auto& [axis, v] : gw.germ.off)
      if (!dir_axes.count(axis)) key.push_back(v);
    groups[key].push_back(&gw);
  }

  SkeletonStack st;
  st.ambient = s.ambient();
  st.r = r;
  st.n = n;
  st.directions = dirs;

  for (auto& [key, members] : groups) {
    // Infer the component base.  Off-coordinates on direction axes must be
    // consistent across the member germs; for n == r they do not occur and
    // the base is read off the maximal representative instead.
    Point base(s.ambient(), 0);
    size_t ki = 0;
    for (int axis = 0; axis < s.ambient(); ++axis)
      if (!dir_axes.count(axis)) base[axis] = key[ki++];
    if (n == r) {
      if (members.size() != 1) return std::nullopt;
      OrthohedralSet coset =
          OrthohedralSet::from_atoms(s.ambient(), {members[0]->germ.tangent_coset()});
      OrthohedralSet k = set_intersection(coset, s).coalesced();
      if (k.atoms().size() != 1 || !k.atoms()[0].is_orthant()) return std::nullopt;
      base = k.atoms()[0].anchor();
    } else {
      std::map<int, coord_t> on_dir_axes;
      for (const auto* gw : members)
        for (const auto& [axis, v] : gw->germ.off)
          if (dir_axes.count(axis)) {
            auto it = on_dir_axes.find(axis);
            if (it == on_dir_axes.end())
              on_dir_axes[axis] = v;
            else if (it->second != v)
              return std::nullopt;
          }
      if (static_cast<int>(on_dir_axes.size()) != r) return std::nullopt;
      for (const auto& [axis, v] : on_dir_axes) base[axis] = v;
    }
    st.bases.push_back(base);
  }
  std::sort(st.bases.begin(), st.bases.end());

  // Reconstruct and verify.
  std::vector<BoxAtom> all_faces;
  for (int c = 0; c < st.component_count(); ++c) {
    auto faces = st.component_faces(c);
    st.components.push_back(OrthohedralSet::from_atoms(s.ambient(), faces));
    all_faces.insert(all_faces.end(), faces.begin(), faces.end());
  }
  if (!sets_equal(s, OrthohedralSet::from_atoms(s.ambient(), all_faces))) return std::nullopt;
  return st;
}

// A set that is a disjoint union of maximal rank-n orthants, one per
// maximal germ; covers both stacks of orthants and skeleton interiors.
struct PureOrthantForm {
  int ambient = 0;
  int n = 0;
  std::vector<BoxAtom> orthants;  // the maximal orthants
};

inline std::optional<PureOrthantForm> recognize_pure_orthants(const OrthohedralSet& s) {
  if (s.is_empty()) return std::nullopt;
  auto germs = max_germs(s);
  int n = s.rank();
  PureOrthantForm form;
  form.ambient = s.ambient();
  form.n = n;
  std::vector<BoxAtom> pieces;
  for (const auto& gw : germs) {
    if (gw.germ.rank() != n) return std::nullopt;
    OrthohedralSet coset = OrthohedralSet::from_atoms(s.ambient(), {gw.germ.tangent_coset()});
    OrthohedralSet k = set_intersection(coset, s).coalesced();
    if (k.atoms().size() != 1) return std::nullopt;
    const BoxAtom& orth = k.atoms()[0];
    if (!orth.is_orthant() || orth.rank() != n) return std::nullopt;
    form.orthants.push_back(orth);
    pieces.push_back(orth);
  }
  if (!sets_equal(s, OrthohedralSet::from_atoms(s.ambient(), pieces))) return std::nullopt;
  return form;
}

struct RegularPointData {
  OrthohedralSet interior;
  OrthohedralSet singular;
  int component_count = 0;
};

// Regular and singular points of a skeleton stack (or of a disjoint union
// of maximal orthants, where every orthant counts as its own component).
inline RegularPointData regular_points(const OrthohedralSet& s) {
  if (s.is_empty()) return {s, s, 0};
  if (auto st = recognize_skeleton_stack(s)) {
    std::vector<BoxAtom> interiors;
    for (int c = 0; c < st->component_count(); ++c)
      for (const auto& f : st->component_faces(c)) interiors.push_back(orthant_interior(f));
    RegularPointData d;
    d.interior = OrthohedralSet::from_atoms(s.ambient(), interiors);
    d.singular = set_difference(s, d.interior);
    d.component_count = st->component_count();
    return d;
  }
  if (auto pf = recognize_pure_orthants(s)) {
    std::vector<BoxAtom> interiors;
    for (const auto& k : pf->orthants) interiors.push_back(orthant_interior(k));
    RegularPointData d;
    d.interior = OrthohedralSet::from_atoms(s.ambient(), interiors);
    d.singular = set_difference(s, d.interior);
    d.component_count = static_cast<int>(pf->orthants.size());
    return d;
  }
  throw std::invalid_argument("regular_points: set is not a skeleton stack");
}

}  // namespace pei
