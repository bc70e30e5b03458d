#pragma once

#include "pei/normal_form.hpp"

// The diagonal and super-diagonal monoid machinery: unit translations on
// regions (maximal orthants, or components of a skeleton interior), the
// induced partial order t*f = f', maximal elements below f with their
// boundary decompositions, and largest common lower bounds.  Both region
// flavours share one engine.

namespace pei {

struct UnitRegion {
  OrthohedralSet region;            // one maximal orthant, or one component interior
  std::vector<BoxAtom> orthants;    // maximal orthants of the region
  coord_t unit_height = 0;          // n per orthant, n*h(C) per component
};

struct UnitBasis {
  enum class Kind { orthant, component };
  Kind kind = Kind::orthant;
  OrthohedralSet domain;  // S
  std::vector<UnitRegion> regions;

  int region_count() const { return static_cast<int>(regions.size()); }
};

using ExponentVector = std::vector<coord_t>;

// Orthant-level units: one region per maximal orthant of a set that is a
// disjoint union of maximal orthants (e.g. a stack).
inline UnitBasis orthant_units(const OrthohedralSet& s) {
  auto pf = recognize_pure_orthants(s);
  if (!pf) throw std::invalid_argument("orthant_units: set is not a union of maximal orthants");
  UnitBasis basis;
  basis.kind = UnitBasis::Kind::orthant;
  basis.domain = s;
  for (const auto& orth : pf->orthants) {
    UnitRegion r;
    r.region = OrthohedralSet::from_atoms(s.ambient(), {orth});
    r.orthants = {orth};
    r.unit_height = orth.rank();
    basis.regions.push_back(std::move(r));
  }
  return basis;
}

// Component-level units over the regular-point set of a skeleton stack:
// t_C translates every maximal orthant of the component diagonally.
inline UnitBasis component_units(const OrthohedralSet& s_interior) {
  auto ic = recognize_interior(s_interior);
  if (!ic) throw std::invalid_argument("component_units: set is not a skeleton-stack interior");
  UnitBasis basis;
  basis.kind = UnitBasis::Kind::component;
  basis.domain = s_interior;
  for (const auto& comp : ic->components) {
    UnitRegion r;
    r.region = comp;
    auto pf = recognize_pure_orthants(comp);
    if (!pf) throw std::logic_error("component_units: component is not a union of orthants");
    r.orthants = pf->orthants;
    r.unit_height = static_cast<coord_t>(ic->stack.n) * static_cast<coord_t>(pf->orthants.size());
    basis.regions.push_back(std::move(r));
  }
  return basis;
}

// The map prod_i t_i^(e_i), translating each region orthant by its
// diagonal times the exponent; identity elsewhere.
inline PiecewiseMap realize(const UnitBasis& basis, const ExponentVector& e) {
  if (e.size() != basis.regions.size())
    throw std::invalid_argument("realize: exponent count mismatch");
  PiecewiseMap m;
  m.domain = basis.domain;
  OrthohedralSet rest = basis.domain;
  for (size_t i = 0; i < basis.regions.size(); ++i) {
    if (e[i] < 0) throw std::invalid_argument("realize: negative exponent");
    for (const auto& orth : basis.regions[i].orthants) {
      Point u = scale(diagonal_unit(basis.domain.ambient(), orth.orthant_directions()), e[i]);
      m.pieces.push_back({orth, Isometry::translation(u)});
    }
    rest = set_difference(rest, basis.regions[i].region);
  }
  for (const auto& at : rest.atoms())
    m.pieces.push_back({at, Isometry::identity(basis.domain.ambient())});
  return m;
}

inline PiecewiseMap unit_map(const UnitBasis& basis, size_t region_index) {
  ExponentVector e(basis.regions.size(), 0);
  e[region_index] = 1;
  return realize(basis, e);
}

inline coord_t exponent_height(const UnitBasis& basis, const ExponentVector& e) {
  coord_t h = 0;
  for (size_t i = 0; i < e.size(); ++i) h += e[i] * basis.regions[i].unit_height;
  return h;
}

// Boundary of a region: region minus its unit translate.
inline OrthohedralSet region_boundary(const UnitBasis& basis, size_t region_index) {
  const UnitRegion& r = basis.regions[region_index];
  std::vector<BoxAtom> shifted;
  for (const auto& orth : r.orthants) shifted.push_back(orthant_interior(orth));
  return set_difference(r.region, OrthohedralSet::from_atoms(basis.domain.ambient(), shifted));
}

// Decides f <= f' in the monoid order: returns t in mon(T) with
// f'(x) = f(t(x)) when it exists.  Candidate exponents are read off
// region by region from one sample point and then verified by maps_equal.
inline std::optional<ExponentVector> leq(const UnitBasis& basis, const PiecewiseMap& f,
                                         const PiecewiseMap& fp) {
  ExponentVector e(basis.regions.size(), 0);
  for (size_t i = 0; i < basis.regions.size(); ++i) {
    const UnitRegion& r = basis.regions[i];
    // sample x in the region, read t(x) as the f-preimage of f'(x)
    const BoxAtom& orth = r.orthants.front();
    Point x = orth.anchor();
    Point y = pei::apply(fp, x);
    std::optional<Point> z;
    for (const auto& pc : f.pieces) {
      Point cand = pc.iso.inverse().apply(y);
      if (pc.atom.contains(cand)) {
        z = cand;
        break;
      }
    }
    if (!z) return std::nullopt;
    AxisDirection d = orth.orthant_directions().front();
    coord_t k = ((*z)[d.axis] - x[d.axis]) * d.sign;
    if (k < 0) return std::nullopt;
    e[i] = k;
  }
  PiecewiseMap composed = compose(realize(basis, e), f);
  if (!maps_equal(composed, fp)) return std::nullopt;
  return e;
}

inline bool strictly_below(const UnitBasis& basis, const PiecewiseMap& f, const PiecewiseMap& fp) {
  auto e = leq(basis, f, fp);
  if (!e) return false;
  for (coord_t v : *e)
    if (v != 0) return true;
  return false;
}

// b maximal below f: the connecting translation is a single unit; the
// boundary part b' maps the region boundary into S - Sf, the residual b''
// agrees with t^{-1} f off the boundary.
struct MaximalDecomposition {
  size_t region_index = 0;
  PiecewiseMap boundary_part;  // domain: region boundary
  PiecewiseMap residual_part;  // domain: S minus the boundary
};

inline std::optional<MaximalDecomposition> maximal_decompose(const UnitBasis& basis,
                                                             const PiecewiseMap& b,
                                                             const PiecewiseMap& f) {
  auto e = leq(basis, b, f);
  if (!e) return std::nullopt;
  size_t idx = 0;
  int nonzero = 0;
  coord_t total = 0;
  for (size_t i = 0; i < e->size(); ++i) {
    total += (*e)[i];
    if ((*e)[i] != 0) {
      idx = i;
      ++nonzero;
    }
  }
  if (nonzero != 1 || total != 1) return std::nullopt;  // not maximal
  MaximalDecomposition d;
  d.region_index = idx;
  OrthohedralSet boundary = region_boundary(basis, idx);
  d.boundary_part = restrict_map(b, boundary);
  d.residual_part = restrict_map(b, set_difference(basis.domain, boundary));
  return d;
}

// Assembles the maximal element c = c' ∪ (t^{-1} f)|_{S - boundary} below
// f from an arbitrary boundary injection c' into S - Sf.
inline PiecewiseMap make_maximal(const UnitBasis& basis, const PiecewiseMap& f,
                                 size_t region_index, const PiecewiseMap& boundary_injection) {
  OrthohedralSet boundary = region_boundary(basis, region_index);
  if (!sets_equal(boundary_injection.domain, boundary))
    throw std::invalid_argument("make_maximal: boundary injection has the wrong domain");
  OrthohedralSet complement = set_difference(basis.domain, image_set(f));
  if (!subset_of(image_set(boundary_injection), complement))
    throw std::invalid_argument("make_maximal: boundary image meets the image of f");
  PiecewiseMap unit = unit_map(basis, region_index);
  PiecewiseMap residual = compose(invert(unit), f);  // domain: S minus the boundary
  PiecewiseMap c = union_map({boundary_injection, residual});
  if (!is_injective(c)) throw std::invalid_argument("make_maximal: assembled map is not injective");
  return c;
}

// Largest common lower bound of a finite set of maximal elements below f,
// when the units are pairwise distinct and the boundary images pairwise
// disjoint; none otherwise.
inline std::optional<PiecewiseMap> common_lower_bound(const UnitBasis& basis,
                                                      const std::vector<PiecewiseMap>& bs,
                                                      const PiecewiseMap& f) {
  std::vector<MaximalDecomposition> decs;
  for (const auto& b : bs) {
    auto d = maximal_decompose(basis, b, f);
    if (!d) throw std::invalid_argument("common_lower_bound: element is not maximal below f");
    decs.push_back(std::move(*d));
  }
  for (size_t i = 0; i < decs.size(); ++i)
    for (size_t j = i + 1; j < decs.size(); ++j) {
      if (decs[i].region_index == decs[j].region_index) return std::nullopt;
      if (!sets_disjoint(image_set(decs[i].boundary_part), image_set(decs[j].boundary_part)))
        return std::nullopt;
    }

  std::vector<PiecewiseMap> parts;
  OrthohedralSet rest = basis.domain;
  for (size_t i = 0; i < bs.size(); ++i) {
    size_t idx = decs[i].region_index;
    OrthohedralSet boundary = region_boundary(basis, idx);
    OrthohedralSet shifted = set_difference(basis.regions[idx].region, boundary);
    PiecewiseMap unit = unit_map(basis, idx);
    parts.push_back(restrict_map(compose(invert(unit), f), shifted));
    parts.push_back(decs[i].boundary_part);
    rest = set_difference(rest, basis.regions[idx].region);
  }
  parts.push_back(restrict_map(f, rest));
  PiecewiseMap delta = union_map(parts);
  if (!is_injective(delta)) return std::nullopt;
  return delta;
}

// Checks that delta dominates every candidate common lower bound.
inline bool is_largest_lower_bound(const UnitBasis& basis, const PiecewiseMap& delta,
                                   const std::vector<PiecewiseMap>& bs,
                                   const std::vector<PiecewiseMap>& candidates) {
  for (const auto& b : bs)
    if (!leq(basis, delta, b)) throw std::invalid_argument("is_largest_lower_bound: delta is not a common lower bound");
  for (const auto& g : candidates) {
    bool common = true;
    for (const auto& b : bs)
      if (!leq(basis, g, b)) {
        common = false;
        break;
      }
    if (common && !leq(basis, g, delta)) return false;
  }
  return true;
}

// Refutation certificates for the nonexistence of a common lower bound.
// With a shared unit, any bound would force the two elements equal; with
// overlapping boundary images, it would break injectivity.
enum class BoundObstruction { none, shared_unit, boundary_overlap };

inline BoundObstruction refute_common_lower_bound(const UnitBasis& basis,
                                                  const std::vector<PiecewiseMap>& bs,
                                                  const PiecewiseMap& f) {
  std::vector<MaximalDecomposition> decs;
  for (const auto& b : bs) {
    auto d = maximal_decompose(basis, b, f);
    if (!d) throw std::invalid_argument("refute_common_lower_bound: element is not maximal below f");
    decs.push_back(std::move(*d));
  }
  for (size_t i = 0; i < decs.size(); ++i)
    for (size_t j = i + 1; j < decs.size(); ++j) {
      if (decs[i].region_index == decs[j].region_index && !maps_equal(bs[i], bs[j]))
        return BoundObstruction::shared_unit;
      if (decs[i].region_index != decs[j].region_index &&
          !sets_disjoint(image_set(decs[i].boundary_part), image_set(decs[j].boundary_part)))
        return BoundObstruction::boundary_overlap;
    }
  return BoundObstruction::none;
}

// Height slice predicate M^[r,s].
struct Slice {
  coord_t lo = 0;
  coord_t hi = 0;
  bool contains(const PiecewiseMap& f) const {
    coord_t h = injection_height(f);
    return lo <= h && h <= hi;
  }
};

}  // namespace pei
