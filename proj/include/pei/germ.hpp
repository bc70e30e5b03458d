#pragma once

#include <map>

#include "pei/set.hpp"

// Germs of orthants: commensurability classes.  Two orthants are
// commensurable exactly when they have the same signed directions and the
// same coordinates on the remaining axes, so a germ is that data.

namespace pei {

struct Germ {
  int ambient = 0;
  Indicator directions;                          // sorted by axis
  std::vector<std::pair<int, coord_t>> off;      // axis -> coordinate, sorted, complement of directions

  int rank() const { return static_cast<int>(directions.size()); }

  Indicator indicator() const { return directions; }

  // The tangent coset <germ>: all points matching the off coordinates.
  BoxAtom tangent_coset() const {
    std::vector<Constraint> cs(ambient, Constraint::free());
    for (const auto& [axis, v] : off) cs[axis] = Constraint::fixed(v);
    return BoxAtom(ambient, std::move(cs));
  }

  // A representative orthant based at the given coordinates along the
  // direction axes (base must match off-coordinates elsewhere).
  BoxAtom representative(const Point& base) const {
    return make_orthant(ambient, directions, base);
  }

  BoxAtom canonical_representative() const {
    Point base(ambient, 0);
    for (const auto& [axis, v] : off) base[axis] = v;
    return representative(base);
  }

  friend bool operator==(const Germ& a, const Germ& b) {
    return a.ambient == b.ambient && a.directions == b.directions && a.off == b.off;
  }
  friend bool operator<(const Germ& a, const Germ& b) {
    if (a.directions != b.directions) return a.directions < b.directions;
    return a.off < b.off;
  }
};

// Germ of an orthant atom.
inline Germ germ_of_orthant(const BoxAtom& at) {
  Germ g;
  g.ambient = at.ambient;
  for (int j = 0; j < at.ambient; ++j) {
    switch (at.axes[j].kind) {
      case Constraint::Kind::RayUp: g.directions.push_back({j, +1}); break;
      case Constraint::Kind::RayDown: g.directions.push_back({j, -1}); break;
      case Constraint::Kind::Fixed: g.off.emplace_back(j, at.axes[j].a); break;
      default: throw std::invalid_argument("germ_of_orthant: atom is not an orthant");
    }
  }
  return g;
}

inline Germ apply_isometry(const Isometry& t, const Germ& g) {
  Germ r;
  r.ambient = g.ambient;
  for (const auto& d : g.directions) r.directions.push_back(t.apply(d));
  std::sort(r.directions.begin(), r.directions.end());
  for (const auto& [axis, v] : g.off) {
    int i = t.perm[axis];
    r.off.emplace_back(i, t.sign[axis] * v + t.shift[i]);
  }
  std::sort(r.off.begin(), r.off.end());
  return r;
}

// Partial order on germs: g <= g' iff g has a representative inside a
// representative of g'.  Criterion: directions(g) is a signed subset of
// directions(g') and the off-coordinates agree on every axis outside
// directions(g').
inline bool germ_leq(const Germ& g, const Germ& gp) {
  if (g.ambient != gp.ambient)
    throw std::invalid_argument("germ_leq: ambient dimension mismatch");
  if (!indicator_subset(g.directions, gp.directions)) return false;
  std::map<int, coord_t> og(g.off.begin(), g.off.end());
  for (const auto& [axis, v] : gp.off) {
    auto it = og.find(axis);
    if (it == og.end() || it->second != v) return false;
  }
  return true;
}

// A decomposition germ together with a representative orthant.
struct GermWitness {
  Germ germ;
  BoxAtom rep;         // orthant representative inside the set
  size_t atom_index;   // which stored atom it came from
};

inline std::vector<GermWitness> decomposition_germs(const OrthohedralSet& s) {
  std::vector<GermWitness> out;
  for (size_t i = 0; i < s.atoms().size(); ++i) {
    for (const auto& orth : orthant_decomposition(s.atoms()[i]))
      out.push_back({germ_of_orthant(orth), orth, i});
  }
  return out;
}

// The finite set of maximal germs of S, with representatives.
inline std::vector<GermWitness> max_germs(const OrthohedralSet& s) {
  auto all = decomposition_germs(s);
  std::vector<GermWitness> out;
  for (size_t i = 0; i < all.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < all.size() && maximal; ++j) {
      if (i == j) continue;
      if (germ_leq(all[i].germ, all[j].germ) && !(all[i].germ == all[j].germ)) maximal = false;
    }
    if (maximal) out.push_back(all[i]);
  }
  std::sort(out.begin(), out.end(),
            [](const GermWitness& a, const GermWitness& b) { return a.germ < b.germ; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const GermWitness& a, const GermWitness& b) { return a.germ == b.germ; }),
            out.end());
  return out;
}

// The height function h_S on indicators, counting maximal germs per
// indicator, together with the indicator image and quasi-normality.
struct IndicatorData {
  OrthohedralSet s_tau;                 // union of indicators of all orthants of S
  std::map<Indicator, coord_t> h;       // height function, zero entries omitted
  std::vector<Indicator> max_indicators;  // maximal elements of Gamma_0^*(S_tau)
  bool quasi_normal = false;
};

// Per-atom maximal direction sets: Ray axes keep their sign, each Free
// axis chooses one of two signs.
inline std::vector<Indicator> atom_max_direction_sets(const BoxAtom& at) {
  std::vector<Indicator> out{{}};
  for (int j = 0; j < at.ambient; ++j) {
    switch (at.axes[j].kind) {
      case Constraint::Kind::RayUp:
        for (auto& ind : out) ind.push_back({j, +1});
        break;
      case Constraint::Kind::RayDown:
        for (auto& ind : out) ind.push_back({j, -1});
        break;
      case Constraint::Kind::Free: {
        std::vector<Indicator> next;
        for (const auto& ind : out) {
          Indicator up = ind, down = ind;
          up.push_back({j, +1});
          down.push_back({j, -1});
          next.push_back(std::move(up));
          next.push_back(std::move(down));
        }
        out.swap(next);
        break;
      }
      default: break;
    }
  }
  for (auto& ind : out) std::sort(ind.begin(), ind.end());
  return out;
}

inline IndicatorData indicator_data(const OrthohedralSet& s) {
  IndicatorData d;
  std::set<Indicator> families;
  for (const auto& at : s.atoms())
    for (auto& ind : atom_max_direction_sets(at)) families.insert(ind);

  std::vector<BoxAtom> tau_atoms;
  Point origin(s.ambient(), 0);
  for (const auto& ind : families) tau_atoms.push_back(make_orthant(s.ambient(), ind, origin));
  d.s_tau = OrthohedralSet::from_atoms(s.ambient(), tau_atoms);

  for (const auto& gw : max_germs(s)) d.h[gw.germ.indicator()] += 1;

  for (const auto& ind : families) {
    bool maximal = true;
    for (const auto& other : families)
      if (!(other == ind) && indicator_subset(ind, other)) {
        maximal = false;
        break;
      }
    if (maximal) d.max_indicators.push_back(ind);
  }
  std::sort(d.max_indicators.begin(), d.max_indicators.end());

  std::vector<Indicator> support;
  for (const auto& [ind, cnt] : d.h)
    if (cnt > 0) support.push_back(ind);
  std::sort(support.begin(), support.end());
  d.quasi_normal = (support == d.max_indicators);
  return d;
}

// All 3^N origin-based indicators of Z^N.
inline std::vector<Indicator> enumerate_indicators(int ambient) {
  std::vector<Indicator> out{{}};
  for (int j = 0; j < ambient; ++j) {
    std::vector<Indicator> next;
    for (const auto& ind : out) {
      next.push_back(ind);
      Indicator up = ind, down = ind;
      up.push_back({j, +1});
      down.push_back({j, -1});
      next.push_back(std::move(up));
      next.push_back(std::move(down));
    }
    out.swap(next);
  }
  return out;
}

}  // namespace pei
