#pragma once

#include <cassert>
#include <map>
#include <numeric>
#include <set>

#include "pei/core.hpp"

// Orthohedral sets: finite disjoint unions of box atoms with exact set
// algebra.  The stored form is canonical in the sense of the library:
// pairwise disjoint atoms sorted by (rank, constraints).  Equality is
// semantic (empty symmetric difference), never representational.

namespace pei {

inline std::optional<BoxAtom> intersect_atoms_opt(const BoxAtom& x, const BoxAtom& y) {
  if (x.ambient != y.ambient)
    throw std::invalid_argument("intersect_atoms: ambient dimension mismatch");
  std::vector<Constraint> cs(x.ambient);
  for (int j = 0; j < x.ambient; ++j) {
    auto m = x.axes[j].meet(y.axes[j]);
    if (!m) return std::nullopt;
    cs[j] = *m;
  }
  return BoxAtom(x.ambient, std::move(cs));
}

// x - y as a disjoint list of atoms, by the usual per-axis sweep.
inline std::vector<BoxAtom> subtract_atom(const BoxAtom& x, const BoxAtom& y) {
  if (x.ambient != y.ambient)
    throw std::invalid_argument("subtract_atom: ambient dimension mismatch");
  auto common = intersect_atoms_opt(x, y);
  if (!common) return {x};
  std::vector<BoxAtom> out;
  BoxAtom rest = x;  // axes < j already clipped to the intersection
  for (int j = 0; j < x.ambient; ++j) {
    const Constraint& cx = rest.axes[j];
    const Constraint& cy = y.axes[j];
    // pieces of cx outside cy
    std::vector<Constraint> outside;
    auto push_meet = [&](const Constraint& half) {
      if (auto m = cx.meet(half)) outside.push_back(*m);
    };
    switch (cy.kind) {
      case Constraint::Kind::Fixed:
        push_meet(Constraint::ray_down(cy.a - 1));
        push_meet(Constraint::ray_up(cy.a + 1));
        break;
      case Constraint::Kind::RayUp:
        push_meet(Constraint::ray_down(cy.a - 1));
        break;
      case Constraint::Kind::RayDown:
        push_meet(Constraint::ray_up(cy.a + 1));
        break;
      case Constraint::Kind::Range:
        push_meet(Constraint::ray_down(cy.a - 1));
        push_meet(Constraint::ray_up(cy.b + 1));
        break;
      case Constraint::Kind::Free:
        break;
    }
    for (const auto& oc : outside) {
      BoxAtom piece = rest;
      piece.axes[j] = oc;
      out.push_back(std::move(piece));
    }
    rest.axes[j] = *cx.meet(cy);
  }
  return out;
}

// Best-effort merge of two disjoint atoms into one; succeeds when they
// agree on all axes but one and the odd axis constraints are adjacent.
inline std::optional<BoxAtom> merge_atoms(const BoxAtom& x, const BoxAtom& y) {
  if (x.ambient != y.ambient) return std::nullopt;
  int odd = -1;
  for (int j = 0; j < x.ambient; ++j) {
    if (x.axes[j] == y.axes[j]) continue;
    if (odd >= 0) return std::nullopt;
    odd = j;
  }
  if (odd < 0) return std::nullopt;  // identical atoms never coexist
  const Constraint& a = x.axes[odd];
  const Constraint& b = y.axes[odd];
  using K = Constraint::Kind;
  auto lo_of = [](const Constraint& c) -> std::optional<coord_t> {
    if (c.kind == K::Fixed) return c.a;
    if (c.kind == K::Range) return c.a;
    if (c.kind == K::RayUp) return c.a;
    return std::nullopt;
  };
  auto hi_of = [](const Constraint& c) -> std::optional<coord_t> {
    if (c.kind == K::Fixed) return c.a;
    if (c.kind == K::Range) return c.b;
    if (c.kind == K::RayDown) return c.a;
    return std::nullopt;
  };
  // order so that a sits below b
  const Constraint *p = &a, *q = &b;
  auto pa = hi_of(a), qb = lo_of(b);
  if (!(pa && qb && *pa + 1 == *qb)) {
    p = &b;
    q = &a;
    pa = hi_of(b);
    qb = lo_of(a);
    if (!(pa && qb && *pa + 1 == *qb)) return std::nullopt;
  }
  Constraint merged;
  bool lo_open = (p->kind == K::RayDown) || (p->kind == K::Free);
  bool hi_open = (q->kind == K::RayUp) || (q->kind == K::Free);
  if (lo_open && hi_open)
    merged = Constraint::free();
  else if (lo_open)
    merged = Constraint::ray_down(*hi_of(*q));
  else if (hi_open)
    merged = Constraint::ray_up(*lo_of(*p));
  else
    merged = Constraint::range(*lo_of(*p), *hi_of(*q));
  BoxAtom r = x;
  r.axes[odd] = merged;
  return r;
}

class OrthohedralSet {
 public:
  OrthohedralSet() = default;
  explicit OrthohedralSet(int ambient) : ambient_(ambient) {}

  // Canonicalizes an arbitrary atom list: disjointify by sequential
  // subtraction in input order, then sort.
  static OrthohedralSet from_atoms(int ambient, const std::vector<BoxAtom>& atoms) {
    OrthohedralSet s(ambient);
    for (const auto& at : atoms) {
      if (at.ambient != ambient)
        throw std::invalid_argument("from_atoms: ambient dimension mismatch");
      std::vector<BoxAtom> pieces{at};
      for (const auto& have : s.atoms_) {
        std::vector<BoxAtom> next;
        for (const auto& pc : pieces) {
          auto sub = subtract_atom(pc, have);
          next.insert(next.end(), sub.begin(), sub.end());
        }
        pieces.swap(next);
        if (pieces.empty()) break;
      }
      s.atoms_.insert(s.atoms_.end(), pieces.begin(), pieces.end());
    }
    s.sort_atoms();
    return s;
  }

  // Accepts an already pairwise-disjoint decomposition verbatim (sorted,
  // not coalesced).  The disjointness is checked.
  static OrthohedralSet from_disjoint_atoms(int ambient, std::vector<BoxAtom> atoms) {
    OrthohedralSet s(ambient);
    for (size_t i = 0; i < atoms.size(); ++i)
      for (size_t j = i + 1; j < atoms.size(); ++j)
        if (intersect_atoms_opt(atoms[i], atoms[j]))
          throw std::invalid_argument("from_disjoint_atoms: atoms overlap");
    s.atoms_ = std::move(atoms);
    s.sort_atoms();
    return s;
  }

  static OrthohedralSet empty(int ambient) { return OrthohedralSet(ambient); }
  static OrthohedralSet whole_space(int ambient) {
    return from_atoms(ambient, {BoxAtom::whole_space(ambient)});
  }

  int ambient() const { return ambient_; }
  bool is_empty() const { return atoms_.empty(); }
  const std::vector<BoxAtom>& atoms() const { return atoms_; }

  bool contains(const Point& p) const {
    for (const auto& at : atoms_)
      if (at.contains(p)) return true;
    return false;
  }

  int rank() const {
    int r = 0;
    for (const auto& at : atoms_) r = std::max(r, at.rank());
    return r;
  }

  // Number of maximal-rank germs; decomposition independent.
  coord_t height() const {
    if (atoms_.empty()) return 0;
    int r = rank();
    coord_t h = 0;
    for (const auto& at : atoms_)
      if (at.rank() == r) h += at.germ_count();
    return h;
  }

  // Number of germs of rank exactly k, for k >= rank(): zero, and for
  // sets of rank <= k these are all maximal.  Used for injection heights.
  coord_t height_at_rank(int k) const {
    coord_t h = 0;
    for (const auto& at : atoms_)
      if (at.rank() == k) h += at.germ_count();
    return h;
  }

  // Merge adjacent atoms with equal remaining axes.  Optional and purely
  // representational; keeps complements and compositions small.
  OrthohedralSet coalesced() const {
    std::vector<BoxAtom> work = atoms_;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < work.size() && !changed; ++i) {
        for (size_t j = i + 1; j < work.size() && !changed; ++j) {
          if (auto m = merge_atoms(work[i], work[j])) {
            work[j] = *m;
            work.erase(work.begin() + i);
            changed = true;
          }
        }
      }
    }
    OrthohedralSet s(ambient_);
    s.atoms_ = std::move(work);
    s.sort_atoms();
    return s;
  }

  friend OrthohedralSet set_union(const OrthohedralSet& x, const OrthohedralSet& y) {
    check_same_ambient(x, y);
    std::vector<BoxAtom> all = x.atoms_;
    all.insert(all.end(), y.atoms_.begin(), y.atoms_.end());
    return from_atoms(x.ambient_, all);
  }

  friend OrthohedralSet set_intersection(const OrthohedralSet& x, const OrthohedralSet& y) {
    check_same_ambient(x, y);
    std::vector<BoxAtom> out;
    for (const auto& ax : x.atoms_)
      for (const auto& ay : y.atoms_)
        if (auto m = intersect_atoms_opt(ax, ay)) out.push_back(*m);
    OrthohedralSet s(x.ambient_);
    s.atoms_ = std::move(out);  // meets of disjoint families stay disjoint
    s.sort_atoms();
    return s;
  }

  friend OrthohedralSet set_difference(const OrthohedralSet& x, const OrthohedralSet& y) {
    check_same_ambient(x, y);
    std::vector<BoxAtom> pieces = x.atoms_;
    for (const auto& ay : y.atoms_) {
      std::vector<BoxAtom> next;
      for (const auto& pc : pieces) {
        auto sub = subtract_atom(pc, ay);
        next.insert(next.end(), sub.begin(), sub.end());
      }
      pieces.swap(next);
      if (pieces.empty()) break;
    }
    OrthohedralSet s(x.ambient_);
    s.atoms_ = std::move(pieces);
    s.sort_atoms();
    return s.coalesced();
  }

  friend OrthohedralSet set_complement(const OrthohedralSet& x) {
    return set_difference(whole_space(x.ambient_), x);
  }

  friend bool subset_of(const OrthohedralSet& x, const OrthohedralSet& y) {
    return set_difference(x, y).is_empty();
  }

  friend bool sets_equal(const OrthohedralSet& x, const OrthohedralSet& y) {
    if (x.ambient_ != y.ambient_) return false;
    if (x.atoms_ == y.atoms_) return true;
    return subset_of(x, y) && subset_of(y, x);
  }

  friend bool sets_disjoint(const OrthohedralSet& x, const OrthohedralSet& y) {
    check_same_ambient(x, y);
    for (const auto& ax : x.atoms_)
      for (const auto& ay : y.atoms_)
        if (intersect_atoms_opt(ax, ay)) return false;
    return true;
  }

  // Pairwise disjointness of the stored atoms; a structural invariant.
  bool validate_disjoint() const {
    for (size_t i = 0; i < atoms_.size(); ++i)
      for (size_t j = i + 1; j < atoms_.size(); ++j)
        if (intersect_atoms_opt(atoms_[i], atoms_[j])) return false;
    return true;
  }

  OrthohedralSet translated(const Point& v) const {
    Isometry t = Isometry::translation(v);
    return transformed(t);
  }

  OrthohedralSet transformed(const Isometry& t) const {
    OrthohedralSet s(ambient_);
    for (const auto& at : atoms_) s.atoms_.push_back(t.apply(at));
    s.sort_atoms();
    return s;
  }

  // Appends a Fixed(0) axis; the embedding Z^N -> Z^(N+1).
  OrthohedralSet embedded() const {
    OrthohedralSet s(ambient_ + 1);
    for (const auto& at : atoms_) {
      BoxAtom b = at;
      b.ambient = ambient_ + 1;
      b.axes.push_back(Constraint::fixed(0));
      s.atoms_.push_back(std::move(b));
    }
    s.sort_atoms();
    return s;
  }

  // Drops the last axis; requires every atom to be Fixed(0) there.
  OrthohedralSet stripped() const {
    OrthohedralSet s(ambient_ - 1);
    for (const auto& at : atoms_) {
      if (!(at.axes.back() == Constraint::fixed(0)))
        throw std::invalid_argument("stripped: set leaves the hyperplane");
      BoxAtom b = at;
      b.ambient = ambient_ - 1;
      b.axes.pop_back();
      s.atoms_.push_back(std::move(b));
    }
    s.sort_atoms();
    return s;
  }

 private:
  static void check_same_ambient(const OrthohedralSet& x, const OrthohedralSet& y) {
    if (x.ambient_ != y.ambient_)
      throw std::invalid_argument("set operation: ambient dimension mismatch");
  }
  void sort_atoms() { std::sort(atoms_.begin(), atoms_.end()); }

  int ambient_ = 0;
  std::vector<BoxAtom> atoms_;
};

inline OrthohedralSet intersect_atoms(const BoxAtom& x, const BoxAtom& y) {
  OrthohedralSet s(x.ambient);
  if (auto m = intersect_atoms_opt(x, y)) return OrthohedralSet::from_atoms(x.ambient, {*m});
  return s;
}

// Splits an atom into orthants: one per Range value and Free half-line.
inline std::vector<BoxAtom> orthant_decomposition(const BoxAtom& at) {
  BoxAtom seed;
  seed.ambient = at.ambient;
  std::vector<BoxAtom> out{seed};
  out[0].axes.reserve(at.ambient);
  for (int j = 0; j < at.ambient; ++j) {
    const Constraint& c = at.axes[j];
    std::vector<Constraint> options;
    switch (c.kind) {
      case Constraint::Kind::Fixed:
      case Constraint::Kind::RayUp:
      case Constraint::Kind::RayDown:
        options.push_back(c);
        break;
      case Constraint::Kind::Range:
        for (coord_t v = c.a; v <= c.b; ++v) options.push_back(Constraint::fixed(v));
        break;
      case Constraint::Kind::Free:
        options.push_back(Constraint::ray_up(0));
        options.push_back(Constraint::ray_down(-1));
        break;
    }
    std::vector<BoxAtom> next;
    next.reserve(out.size() * options.size());
    for (const auto& partial : out)
      for (const auto& opt : options) {
        BoxAtom b = partial;
        b.axes.push_back(opt);
        next.push_back(std::move(b));
      }
    out.swap(next);
  }
  return out;
}

inline std::vector<BoxAtom> orthant_decomposition(const OrthohedralSet& s) {
  std::vector<BoxAtom> out;
  for (const auto& at : s.atoms()) {
    auto d = orthant_decomposition(at);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

inline coord_t max_abs_constant(const BoxAtom& at) {
  coord_t m = 0;
  for (const auto& c : at.axes) {
    switch (c.kind) {
      case Constraint::Kind::Fixed:
      case Constraint::Kind::RayUp:
      case Constraint::Kind::RayDown:
        m = std::max(m, std::abs(c.a));
        break;
      case Constraint::Kind::Range:
        m = std::max({m, std::abs(c.a), std::abs(c.b)});
        break;
      case Constraint::Kind::Free:
        break;
    }
  }
  return m;
}

inline coord_t max_abs_constant(const OrthohedralSet& s) {
  coord_t m = 0;
  for (const auto& at : s.atoms()) m = std::max(m, max_abs_constant(at));
  return m;
}

// Invariants (rank, height) of an orthohedral set.
struct SetInvariants {
  int rank = 0;
  coord_t height = 0;
};

inline SetInvariants invariants(const OrthohedralSet& s) {
  if (s.is_empty()) return {0, 0};
  return {s.rank(), s.height()};
}

}  // namespace pei
