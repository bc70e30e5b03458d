#pragma once

#include "pei/map.hpp"

// pet- and pei-normal forms with explicit witness bijections, plus the
// isomorphism decision procedures built on them.
//
// A pet-normal form is a disjoint union of stacks of parallel orthants
// whose direction sets form an antichain; a pei-normal form is a single
// stack of rank-rkS orthants.  Witnesses are assembled from elementary
// verified moves: simultaneous translation of one parallel class to a
// stacked position, and recursive feeding of a lower-rank orthant into a
// higher-rank one.

namespace pei {

struct NormalFormResult {
  OrthohedralSet normalized;
  PiecewiseMap witness;  // bijection input -> normalized
  enum class Kind { pet, pei } kind = Kind::pet;
};

namespace nf_detail {

// Isometry mapping orthant A exactly onto orthant B (equal ranks).  The
// direction axes map in sorted order, the remaining axes likewise.
inline Isometry orthant_onto(const BoxAtom& a, const BoxAtom& b) {
  Indicator da = a.orthant_directions(), db = b.orthant_directions();
  if (da.size() != db.size()) throw std::invalid_argument("orthant_onto: rank mismatch");
  int n = a.ambient;
  std::vector<bool> a_dir(n, false), b_dir(n, false);
  for (const auto& d : da) a_dir[d.axis] = true;
  for (const auto& d : db) b_dir[d.axis] = true;
  Isometry t = Isometry::identity(n);
  for (size_t i = 0; i < da.size(); ++i) {
    t.perm[da[i].axis] = db[i].axis;
    t.sign[da[i].axis] = da[i].sign * db[i].sign;
  }
  std::vector<int> rest_a, rest_b;
  for (int j = 0; j < n; ++j) {
    if (!a_dir[j]) rest_a.push_back(j);
    if (!b_dir[j]) rest_b.push_back(j);
  }
  for (size_t i = 0; i < rest_a.size(); ++i) {
    t.perm[rest_a[i]] = rest_b[i];
    t.sign[rest_a[i]] = +1;
  }
  t.shift.assign(n, 0);
  Point img = t.apply(a.anchor());
  Point want = b.anchor();
  for (int j = 0; j < n; ++j) t.shift[j] = want[j] - img[j];
  BoxAtom check = t.apply(a);
  if (!(check == b)) throw std::logic_error("orthant_onto: construction failed");
  return t;
}

// Pieces of a pet/pei-bijection (orthant ⊔ target) -> target.  The target
// sheds one slab per recursion level along a direction missing from the
// fed orthant; the base case maps the orthant onto the final slab.
inline std::vector<Piece> feed_pieces(const BoxAtom& orthant, const BoxAtom& target, bool pei_mode) {
  Indicator od = orthant.orthant_directions();
  Indicator td = target.orthant_directions();
  bool subset = pei_mode ? od.size() < td.size() : (indicator_subset(od, td) && od.size() < td.size());
  if (!subset)
    throw std::invalid_argument("feed: orthant is not parallel to a proper suborthant of the target");
  // peel direction: first target direction not in the fed orthant
  AxisDirection y{-1, 0};
  for (const auto& d : td) {
    if (pei_mode) {
      // peel the last direction until ranks match; deterministic choice
      y = td.back();
      break;
    }
    if (!std::binary_search(od.begin(), od.end(), d)) {
      y = d;
      break;
    }
  }
  BoxAtom slab = target;
  slab.axes[y.axis] = Constraint::fixed(target.axes[y.axis].a);
  if (static_cast<int>(od.size()) == slab.rank()) {
    std::vector<Piece> out;
    Point u(target.ambient, 0);
    u[y.axis] = y.sign;
    out.push_back({target, Isometry::translation(u)});
    out.push_back({orthant, orthant_onto(orthant, slab)});
    if (!pei_mode && !out.back().iso.is_translation())
      throw std::invalid_argument("feed: orthant is not parallel to the receiving slab");
    return out;
  }
  std::vector<Piece> out = feed_pieces(orthant, slab, pei_mode);
  BoxAtom rest = target;
  rest.axes[y.axis] =
      y.sign > 0 ? Constraint::ray_up(target.axes[y.axis].a + 1)
                 : Constraint::ray_down(target.axes[y.axis].a - 1);
  out.push_back({rest, Isometry::identity(target.ambient)});
  return out;
}

struct TrackedClass {
  Indicator dirs;
  std::vector<BoxAtom> members;  // current positions
  bool surviving = false;
};

inline coord_t placement_budget(const std::vector<BoxAtom>& atoms) {
  coord_t m = 16;
  for (const auto& at : atoms) m += 2 * max_abs_constant(at) + 4;
  return m;
}

}  // namespace nf_detail

// pet-bijection S_i ∪ S_j -> S_j feeding every orthant of S_i into the
// stack S_j.  Requires the stacks disjoint and every orthant of S_i
// parallel to a proper suborthant of an orthant of S_j.
inline PiecewiseMap feed_stack(const OrthohedralSet& si, const OrthohedralSet& sj) {
  if (!sets_disjoint(si, sj)) throw std::invalid_argument("feed_stack: stacks are not disjoint");
  OrthohedralSet current = set_union(si, sj);
  PiecewiseMap w = identity_map(current);
  std::vector<BoxAtom> targets = orthant_decomposition(sj);
  for (const auto& orth : orthant_decomposition(si)) {
    Indicator od = germ_of_orthant(orth).directions;
    const BoxAtom* tgt = nullptr;
    for (const auto& t : targets) {
      Indicator td = germ_of_orthant(t).directions;
      if (indicator_subset(od, td) && od.size() < td.size()) {
        tgt = &t;
        break;
      }
    }
    if (!tgt) throw std::invalid_argument("feed_stack: no receiving orthant for a fed piece");
    auto pieces = nf_detail::feed_pieces(orth, *tgt, /*pei_mode=*/false);
    PiecewiseMap step;
    step.domain = current;
    step.pieces = pieces;
    OrthohedralSet touched = OrthohedralSet::from_atoms(current.ambient(), {orth, *tgt});
    OrthohedralSet untouched = set_difference(current, touched);
    for (const auto& at : untouched.atoms())
      step.pieces.push_back({at, Isometry::identity(current.ambient())});
    w = compose(w, step);
    current = set_difference(current, OrthohedralSet::from_atoms(current.ambient(), {orth}));
  }
  return w;
}

inline NormalFormResult pet_normal_form(const OrthohedralSet& input) {
  using nf_detail::TrackedClass;
  bool embedded = !input.is_empty() && input.rank() == input.ambient();
  OrthohedralSet s = embedded ? input.embedded() : input;
  int ambient = s.ambient();

  NormalFormResult res;
  res.kind = NormalFormResult::Kind::pet;
  if (input.is_empty()) {
    res.normalized = input;
    res.witness = identity_map(input);
    return res;
  }

  // Group the orthant decomposition into parallel classes.
  std::map<Indicator, std::vector<BoxAtom>> by_dirs;
  for (const auto& orth : orthant_decomposition(s))
    by_dirs[germ_of_orthant(orth).directions].push_back(orth);
  std::vector<TrackedClass> classes;
  for (auto& [dirs, members] : by_dirs) {
    TrackedClass c;
    c.dirs = dirs;
    std::sort(members.begin(), members.end(),
              [](const BoxAtom& a, const BoxAtom& b) { return a.anchor() < b.anchor(); });
    c.members = members;
    c.surviving = true;
    for (const auto& [other, unused] : by_dirs)
      if (!(other == dirs) && indicator_subset(dirs, other)) c.surviving = false;
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(), [](const TrackedClass& a, const TrackedClass& b) {
    if (a.dirs.size() != b.dirs.size()) return a.dirs.size() > b.dirs.size();
    return a.dirs < b.dirs;
  });

  PiecewiseMap w = identity_map(s);
  OrthohedralSet current = s;

  // Assemble each surviving class into a stack along the first axis
  // outside its directions, retreating along the class diagonal until the
  // placement is disjoint from everything else.
  for (auto& cls : classes) {
    if (!cls.surviving) continue;
    std::set<int> dir_axes;
    for (const auto& d : cls.dirs) dir_axes.insert(d.axis);
    int stack_axis = 0;
    while (dir_axes.count(stack_axis)) ++stack_axis;
    if (stack_axis >= ambient) throw std::logic_error("pet_normal_form: no stack axis available");
    Point u = diagonal_unit(ambient, cls.dirs);
    Point anchor = cls.members.front().anchor();

    OrthohedralSet touched = OrthohedralSet::from_atoms(ambient, cls.members);
    OrthohedralSet rest = set_difference(current, touched);
    coord_t budget = nf_detail::placement_budget(current.atoms());
    std::vector<BoxAtom> targets;
    for (coord_t t = 0;; ++t) {
      if (t > budget) throw std::logic_error("pet_normal_form: placement search exhausted");
      targets.clear();
      bool ok = true;
      for (size_t k = 0; k < cls.members.size() && ok; ++k) {
        Point base = add(anchor, scale(u, t));
        base[stack_axis] = anchor[stack_axis] + static_cast<coord_t>(k);
        BoxAtom tgt = make_orthant(ambient, cls.dirs, base);
        for (const auto& at : rest.atoms())
          if (intersect_atoms_opt(tgt, at)) {
            ok = false;
            break;
          }
        targets.push_back(std::move(tgt));
      }
      if (ok) break;
    }
    PiecewiseMap step;
    step.domain = current;
    for (size_t k = 0; k < cls.members.size(); ++k) {
      Point v = sub(targets[k].anchor(), cls.members[k].anchor());
      step.pieces.push_back({cls.members[k], Isometry::translation(v)});
    }
    for (const auto& at : rest.atoms()) step.pieces.push_back({at, Isometry::identity(ambient)});
    w = compose(w, step);
    cls.members = targets;
    std::vector<BoxAtom> all;
    for (const auto& c2 : classes) all.insert(all.end(), c2.members.begin(), c2.members.end());
    current = OrthohedralSet::from_atoms(ambient, all);
  }

  // Feed the subsumed classes into their surviving superclasses.
  for (auto& cls : classes) {
    if (cls.surviving) continue;
    const TrackedClass* host = nullptr;
    for (const auto& c2 : classes)
      if (c2.surviving && indicator_subset(cls.dirs, c2.dirs) && cls.dirs.size() < c2.dirs.size()) {
        host = &c2;
        break;
      }
    if (!host) throw std::logic_error("pet_normal_form: subsumed class without a host");
    for (const auto& orth : cls.members) {
      auto pieces = nf_detail::feed_pieces(orth, host->members.front(), /*pei_mode=*/false);
      PiecewiseMap step;
      step.domain = current;
      step.pieces = pieces;
      OrthohedralSet touched =
          OrthohedralSet::from_atoms(ambient, {orth, host->members.front()});
      OrthohedralSet untouched = set_difference(current, touched);
      for (const auto& at : untouched.atoms())
        step.pieces.push_back({at, Isometry::identity(ambient)});
      w = compose(w, step);
      current = set_difference(current, OrthohedralSet::from_atoms(ambient, {orth}));
    }
    cls.members.clear();
  }

  if (embedded) {
    current = current.stripped();
    PiecewiseMap stripped_w;
    stripped_w.domain = input;
    for (const auto& pc : w.pieces) {
      BoxAtom at = pc.atom;
      if (!(at.axes.back() == Constraint::fixed(0)))
        throw std::logic_error("pet_normal_form: witness leaves the hyperplane");
      Isometry t = pc.iso;
      if (t.perm.back() != ambient - 1 || t.shift.back() != 0)
        throw std::logic_error("pet_normal_form: witness moves the appended axis");
      at.ambient -= 1;
      at.axes.pop_back();
      t.perm.pop_back();
      t.sign.pop_back();
      t.shift.pop_back();
      stripped_w.pieces.push_back({at, t});
    }
    w = stripped_w;
  }
  res.normalized = current;
  res.witness = w;
  return res;
}

inline NormalFormResult pei_normal_form(const OrthohedralSet& input) {
  NormalFormResult res;
  res.kind = NormalFormResult::Kind::pei;
  if (input.is_empty()) {
    res.normalized = input;
    res.witness = identity_map(input);
    return res;
  }
  bool embedded = input.rank() == input.ambient();
  OrthohedralSet s = embedded ? input.embedded() : input;
  int ambient = s.ambient();
  int n = s.rank();

  std::vector<BoxAtom> maximal, junk;
  for (const auto& orth : orthant_decomposition(s))
    (orth.rank() == n ? maximal : junk).push_back(orth);
  std::sort(maximal.begin(), maximal.end());
  std::sort(junk.begin(), junk.end());

  Indicator std_dirs;
  for (int j = 0; j < n; ++j) std_dirs.push_back({j, +1});
  int stack_axis = n;  // first axis outside the standard directions
  Point u = diagonal_unit(ambient, std_dirs);

  std::sort(maximal.begin(), maximal.end(),
            [](const BoxAtom& a, const BoxAtom& b) { return a.anchor() < b.anchor(); });
  Point anchor0 = maximal.front().anchor();

  OrthohedralSet current = s;
  OrthohedralSet rest = set_difference(
      current, OrthohedralSet::from_atoms(ambient, maximal));
  coord_t budget = nf_detail::placement_budget(current.atoms());
  std::vector<BoxAtom> targets;
  for (coord_t t = 0;; ++t) {
    if (t > budget) throw std::logic_error("pei_normal_form: placement search exhausted");
    targets.clear();
    bool ok = true;
    for (size_t k = 0; k < maximal.size() && ok; ++k) {
      Point base = add(anchor0, scale(u, t));
      base[stack_axis] = anchor0[stack_axis] + static_cast<coord_t>(k);
      BoxAtom tgt = make_orthant(ambient, std_dirs, base);
      for (const auto& at : rest.atoms())
        if (intersect_atoms_opt(tgt, at)) {
          ok = false;
          break;
        }
      targets.push_back(std::move(tgt));
    }
    if (ok) break;
  }

  PiecewiseMap step;
  step.domain = current;
  for (size_t k = 0; k < maximal.size(); ++k)
    step.pieces.push_back({maximal[k], nf_detail::orthant_onto(maximal[k], targets[k])});
  for (const auto& at : rest.atoms()) step.pieces.push_back({at, Isometry::identity(ambient)});
  PiecewiseMap w = step;
  std::vector<BoxAtom> all = targets;
  all.insert(all.end(), junk.begin(), junk.end());
  current = OrthohedralSet::from_atoms(ambient, all);

  for (const auto& orth : junk) {
    auto pieces = nf_detail::feed_pieces(orth, targets[0], /*pei_mode=*/true);
    PiecewiseMap fstep;
    fstep.domain = current;
    fstep.pieces = pieces;
    OrthohedralSet touched = OrthohedralSet::from_atoms(ambient, {orth, targets[0]});
    OrthohedralSet untouched = set_difference(current, touched);
    for (const auto& at : untouched.atoms())
      fstep.pieces.push_back({at, Isometry::identity(ambient)});
    w = compose(w, fstep);
    current = set_difference(current, OrthohedralSet::from_atoms(ambient, {orth}));
  }

  if (embedded && current.atoms().size() <= 1) {
    // A single full-rank orthant fits back into the original ambient.
    bool strippable = true;
    for (const auto& pc : w.pieces)
      if (pc.iso.perm.back() != ambient - 1 || pc.iso.shift.back() != 0) strippable = false;
    for (const auto& at : current.atoms())
      if (!(at.axes.back() == Constraint::fixed(0))) strippable = false;
    if (strippable) {
      current = current.stripped();
      PiecewiseMap sw;
      sw.domain = input;
      for (const auto& pc : w.pieces) {
        BoxAtom at = pc.atom;
        at.ambient -= 1;
        at.axes.pop_back();
        Isometry t = pc.iso;
        t.perm.pop_back();
        t.sign.pop_back();
        t.shift.pop_back();
        sw.pieces.push_back({at, t});
      }
      w = sw;
    }
  }
  res.normalized = current;
  res.witness = w;
  return res;
}

// Heights per parallel class of a pet-normal form.
inline std::map<Indicator, coord_t> stack_heights(const OrthohedralSet& normal) {
  std::map<Indicator, coord_t> h;
  for (const auto& orth : orthant_decomposition(normal)) h[germ_of_orthant(orth).directions] += 1;
  return h;
}

// Translation alignment between two normal forms with equal class heights.
inline PiecewiseMap align_stacks(const OrthohedralSet& a, const OrthohedralSet& b) {
  std::map<Indicator, std::vector<BoxAtom>> ga, gb;
  for (const auto& orth : orthant_decomposition(a)) ga[germ_of_orthant(orth).directions].push_back(orth);
  for (const auto& orth : orthant_decomposition(b)) gb[germ_of_orthant(orth).directions].push_back(orth);
  PiecewiseMap m;
  m.domain = a;
  for (auto& [dirs, mem] : ga) {
    auto it = gb.find(dirs);
    if (it == gb.end() || it->second.size() != mem.size())
      throw std::invalid_argument("align_stacks: class heights differ");
    std::sort(mem.begin(), mem.end());
    std::sort(it->second.begin(), it->second.end());
    for (size_t k = 0; k < mem.size(); ++k) {
      Point v = sub(it->second[k].anchor(), mem[k].anchor());
      m.pieces.push_back({mem[k], Isometry::translation(v)});
    }
  }
  return m;
}

// Isometry alignment between two pei-normal stacks of equal rank/height.
inline PiecewiseMap align_stacks_pei(const OrthohedralSet& a, const OrthohedralSet& b) {
  auto da = orthant_decomposition(a);
  auto db = orthant_decomposition(b);
  if (da.size() != db.size()) throw std::invalid_argument("align_stacks_pei: heights differ");
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  PiecewiseMap m;
  m.domain = a;
  for (size_t k = 0; k < da.size(); ++k)
    m.pieces.push_back({da[k], nf_detail::orthant_onto(da[k], db[k])});
  return m;
}

// Decides pet-isomorphism via normal-form stack heights; on success the
// witness is the composite through both normal forms.
inline std::optional<PiecewiseMap> are_pet_isomorphic(const OrthohedralSet& s1,
                                                      const OrthohedralSet& s2) {
  if (s1.ambient() != s2.ambient())
    throw std::invalid_argument("are_pet_isomorphic: ambient dimension mismatch");
  auto n1 = pet_normal_form(s1);
  auto n2 = pet_normal_form(s2);
  if (stack_heights(n1.normalized) != stack_heights(n2.normalized)) return std::nullopt;
  PiecewiseMap align = align_stacks(n1.normalized, n2.normalized);
  return compose(compose(n1.witness, align), invert(n2.witness));
}

// Decides pei-isomorphism via (rank, height).  The witness may live in
// ambient N+1 when the normal forms needed the embedding.
inline std::optional<PiecewiseMap> are_pei_isomorphic(const OrthohedralSet& s1,
                                                      const OrthohedralSet& s2) {
  if (s1.ambient() != s2.ambient())
    throw std::invalid_argument("are_pei_isomorphic: ambient dimension mismatch");
  auto i1 = invariants(s1);
  auto i2 = invariants(s2);
  if (i1.rank != i2.rank || i1.height != i2.height) return std::nullopt;
  auto n1 = pei_normal_form(s1);
  auto n2 = pei_normal_form(s2);
  if (n1.normalized.ambient() != n2.normalized.ambient())
    throw std::logic_error("are_pei_isomorphic: normal-form ambients diverge");
  PiecewiseMap align = align_stacks_pei(n1.normalized, n2.normalized);
  return compose(compose(n1.witness, align), invert(n2.witness));
}

}  // namespace pei
