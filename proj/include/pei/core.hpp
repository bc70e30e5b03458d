#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Core lattice types: per-axis constraints, box atoms, signed-permutation
// isometries of Z^N.  Everything is an immutable value; all arithmetic is
// exact 64-bit (desk-scale inputs stay far below the overflow range).

namespace pei {

using coord_t = long long;
using Point = std::vector<coord_t>;

// A signed coordinate direction: +axis or -axis.
struct AxisDirection {
  int axis = 0;
  int sign = +1;  // +1 or -1

  friend bool operator==(const AxisDirection& a, const AxisDirection& b) {
    return a.axis == b.axis && a.sign == b.sign;
  }
  friend bool operator<(const AxisDirection& a, const AxisDirection& b) {
    if (a.axis != b.axis) return a.axis < b.axis;
    return a.sign < b.sign;
  }
};

// A set of signed directions with pairwise distinct axes, kept sorted.
// This is at once the direction data of an orthant and its indicator
// (the parallel translate based at the origin).
using Indicator = std::vector<AxisDirection>;

inline bool indicator_subset(const Indicator& a, const Indicator& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// One axis of a box atom.
struct Constraint {
  enum class Kind { Fixed, RayUp, RayDown, Range, Free };
  Kind kind = Kind::Free;
  coord_t a = 0;  // Fixed value, ray base, or range lower end
  coord_t b = 0;  // range upper end

  static Constraint fixed(coord_t v) { return {Kind::Fixed, v, v}; }
  static Constraint ray_up(coord_t v) { return {Kind::RayUp, v, 0}; }
  static Constraint ray_down(coord_t v) { return {Kind::RayDown, v, 0}; }
  static Constraint range(coord_t lo, coord_t hi) {
    if (lo > hi) throw std::invalid_argument("range needs lo <= hi");
    if (lo == hi) return fixed(lo);
    return {Kind::Range, lo, hi};
  }
  static Constraint free() { return {Kind::Free, 0, 0}; }

  bool contains(coord_t x) const {
    switch (kind) {
      case Kind::Fixed: return x == a;
      case Kind::RayUp: return x >= a;
      case Kind::RayDown: return x <= a;
      case Kind::Range: return a <= x && x <= b;
      case Kind::Free: return true;
    }
    return false;
  }

  // Axes of kind RayUp/RayDown/Free count toward the rank of an atom.
  bool is_unbounded() const {
    return kind == Kind::RayUp || kind == Kind::RayDown || kind == Kind::Free;
  }
  bool has_at_least_two_points() const { return kind != Kind::Fixed; }

  // Number of points, when finite.
  std::optional<coord_t> size() const {
    if (kind == Kind::Fixed) return 1;
    if (kind == Kind::Range) return b - a + 1;
    return std::nullopt;
  }

  // Exact meet of two constraints on one axis; nullopt when empty.
  std::optional<Constraint> meet(const Constraint& o) const {
    coord_t lo = std::numeric_limits<coord_t>::min();
    coord_t hi = std::numeric_limits<coord_t>::max();
    bool has_lo = false, has_hi = false;
    auto take = [&](const Constraint& c) {
      switch (c.kind) {
        case Kind::Fixed:
          if (!has_lo || c.a > lo) lo = c.a;
          if (!has_hi || c.a < hi) hi = c.a;
          has_lo = has_hi = true;
          break;
        case Kind::RayUp:
          if (!has_lo || c.a > lo) lo = c.a;
          has_lo = true;
          break;
        case Kind::RayDown:
          if (!has_hi || c.a < hi) hi = c.a;
          has_hi = true;
          break;
        case Kind::Range:
          if (!has_lo || c.a > lo) lo = c.a;
          if (!has_hi || c.b < hi) hi = c.b;
          has_lo = has_hi = true;
          break;
        case Kind::Free:
          break;
      }
    };
    take(*this);
    take(o);
    if (has_lo && has_hi) {
      if (lo > hi) return std::nullopt;
      return range(lo, hi);
    }
    if (has_lo) return ray_up(lo);
    if (has_hi) return ray_down(hi);
    return free();
  }

  // A canonical point of the constraint: Fixed/RayUp/Range use the lower
  // end, RayDown its upper end, Free the origin.
  coord_t anchor() const {
    switch (kind) {
      case Kind::Fixed: return a;
      case Kind::RayUp: return a;
      case Kind::RayDown: return a;
      case Kind::Range: return a;
      case Kind::Free: return 0;
    }
    return 0;
  }

  // Direction of a second in-constraint point next to the anchor.
  // Zero for singletons.
  int probe_step() const {
    switch (kind) {
      case Kind::Fixed: return 0;
      case Kind::RayUp: return +1;
      case Kind::RayDown: return -1;
      case Kind::Range: return +1;
      case Kind::Free: return +1;
    }
    return 0;
  }

  friend bool operator==(const Constraint& x, const Constraint& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case Kind::Fixed:
      case Kind::RayUp:
      case Kind::RayDown: return x.a == y.a;
      case Kind::Range: return x.a == y.a && x.b == y.b;
      case Kind::Free: return true;
    }
    return false;
  }
  friend bool operator<(const Constraint& x, const Constraint& y) {
    if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

// Per-axis constrained integer box in Z^N.  An atom with only Fixed and
// Ray axes is an orthant; Range and Free arise from set algebra.
struct BoxAtom {
  int ambient = 0;
  std::vector<Constraint> axes;

  BoxAtom() = default;
  BoxAtom(int n, std::vector<Constraint> cs) : ambient(n), axes(std::move(cs)) {
    if (static_cast<int>(axes.size()) != n)
      throw std::invalid_argument("atom constraint count != ambient dimension");
  }

  static BoxAtom whole_space(int n) {
    return BoxAtom(n, std::vector<Constraint>(n, Constraint::free()));
  }

  int rank() const {
    int r = 0;
    for (const auto& c : axes) r += c.is_unbounded() ? 1 : 0;
    return r;
  }

  bool is_orthant() const {
    for (const auto& c : axes)
      if (c.kind == Constraint::Kind::Range || c.kind == Constraint::Kind::Free) return false;
    return true;
  }

  bool contains(const Point& p) const {
    for (int j = 0; j < ambient; ++j)
      if (!axes[j].contains(p[j])) return false;
    return true;
  }

  // Height carried by the atom among its own maximal-rank germs:
  // (product of Range sizes) * 2^(number of Free axes).
  coord_t germ_count() const {
    coord_t g = 1;
    for (const auto& c : axes) {
      if (c.kind == Constraint::Kind::Range) g *= (c.b - c.a + 1);
      if (c.kind == Constraint::Kind::Free) g *= 2;
    }
    return g;
  }

  Point anchor() const {
    Point p(ambient);
    for (int j = 0; j < ambient; ++j) p[j] = axes[j].anchor();
    return p;
  }

  // Directions of an orthant atom.  Throws on Range/Free axes.
  Indicator orthant_directions() const {
    Indicator dirs;
    for (int j = 0; j < ambient; ++j) {
      switch (axes[j].kind) {
        case Constraint::Kind::RayUp: dirs.push_back({j, +1}); break;
        case Constraint::Kind::RayDown: dirs.push_back({j, -1}); break;
        case Constraint::Kind::Fixed: break;
        default: throw std::invalid_argument("orthant_directions: atom is not an orthant");
      }
    }
    return dirs;
  }

  friend bool operator==(const BoxAtom& x, const BoxAtom& y) {
    return x.ambient == y.ambient && x.axes == y.axes;
  }
  friend bool operator<(const BoxAtom& x, const BoxAtom& y) {
    int rx = x.rank(), ry = y.rank();
    if (rx != ry) return rx < ry;
    return x.axes < y.axes;
  }
};

// Builds the orthant a + <dirs>: Ray along each signed direction, Fixed
// elsewhere at the base point's coordinate.
inline BoxAtom make_orthant(int ambient, const Indicator& dirs, const Point& base) {
  std::vector<Constraint> cs(ambient);
  std::vector<int> dir_sign(ambient, 0);
  for (const auto& d : dirs) dir_sign[d.axis] = d.sign;
  for (int j = 0; j < ambient; ++j) {
    if (dir_sign[j] > 0)
      cs[j] = Constraint::ray_up(base[j]);
    else if (dir_sign[j] < 0)
      cs[j] = Constraint::ray_down(base[j]);
    else
      cs[j] = Constraint::fixed(base[j]);
  }
  return BoxAtom(ambient, std::move(cs));
}

// Affine-orthogonal transformation x -> a + Ax with A a signed permutation
// matrix.  perm[j] is the image axis of input axis j; sign[j] the sign:
// y[perm[j]] = sign[j] * x[j] + shift[perm[j]].
struct Isometry {
  std::vector<int> perm;
  std::vector<int> sign;
  Point shift;

  static Isometry identity(int n) {
    Isometry t;
    t.perm.resize(n);
    t.sign.assign(n, +1);
    t.shift.assign(n, 0);
    for (int j = 0; j < n; ++j) t.perm[j] = j;
    return t;
  }
  static Isometry translation(const Point& v) {
    Isometry t = identity(static_cast<int>(v.size()));
    t.shift = v;
    return t;
  }

  int dim() const { return static_cast<int>(perm.size()); }

  bool is_translation() const {
    for (int j = 0; j < dim(); ++j)
      if (perm[j] != j || sign[j] != +1) return false;
    return true;
  }
  bool is_identity() const {
    if (!is_translation()) return false;
    for (coord_t v : shift)
      if (v != 0) return false;
    return true;
  }

  Point apply(const Point& x) const {
    Point y = shift;
    for (int j = 0; j < dim(); ++j) y[perm[j]] += sign[j] * x[j];
    return y;
  }

  Isometry inverse() const {
    Isometry r;
    int n = dim();
    r.perm.resize(n);
    r.sign.resize(n);
    r.shift.assign(n, 0);
    for (int j = 0; j < n; ++j) {
      r.perm[perm[j]] = j;
      r.sign[perm[j]] = sign[j];
    }
    for (int j = 0; j < n; ++j) r.shift[r.perm[j]] = -r.sign[j] * shift[j];
    return r;
  }

  // this after other: (compose_after(f))(x) = this(f(x)).
  Isometry compose_after(const Isometry& f) const {
    int n = dim();
    Isometry r;
    r.perm.resize(n);
    r.sign.resize(n);
    r.shift = shift;
    for (int j = 0; j < n; ++j) {
      r.perm[j] = perm[f.perm[j]];
      r.sign[j] = sign[f.perm[j]] * f.sign[j];
      r.shift[perm[f.perm[j]]] += sign[f.perm[j]] * f.shift[f.perm[j]];
    }
    return r;
  }

  // Exact image of an atom; always again an atom.
  BoxAtom apply(const BoxAtom& at) const {
    std::vector<Constraint> cs(dim());
    for (int j = 0; j < dim(); ++j) {
      const Constraint& c = at.axes[j];
      int i = perm[j];
      coord_t t = shift[i];
      int s = sign[j];
      switch (c.kind) {
        case Constraint::Kind::Fixed: cs[i] = Constraint::fixed(s * c.a + t); break;
        case Constraint::Kind::RayUp:
          cs[i] = s > 0 ? Constraint::ray_up(c.a + t) : Constraint::ray_down(-c.a + t);
          break;
        case Constraint::Kind::RayDown:
          cs[i] = s > 0 ? Constraint::ray_down(c.a + t) : Constraint::ray_up(-c.a + t);
          break;
        case Constraint::Kind::Range:
          cs[i] = s > 0 ? Constraint::range(c.a + t, c.b + t) : Constraint::range(-c.b + t, -c.a + t);
          break;
        case Constraint::Kind::Free: cs[i] = Constraint::free(); break;
      }
    }
    return BoxAtom(at.ambient, std::move(cs));
  }

  AxisDirection apply(const AxisDirection& d) const {
    return {perm[d.axis], sign[d.axis] * d.sign};
  }

  friend bool operator==(const Isometry& x, const Isometry& y) {
    return x.perm == y.perm && x.sign == y.sign && x.shift == y.shift;
  }
};

// Diagonal element of a direction set: the sum of its signed unit vectors.
inline Point diagonal_unit(int ambient, const Indicator& dirs) {
  Point u(ambient, 0);
  for (const auto& d : dirs) u[d.axis] = d.sign;
  return u;
}

inline Point scale(const Point& p, coord_t k) {
  Point q = p;
  for (auto& v : q) v *= k;
  return q;
}

inline Point add(const Point& p, const Point& q) {
  Point r = p;
  for (size_t i = 0; i < r.size(); ++i) r[i] += q[i];
  return r;
}

inline Point sub(const Point& p, const Point& q) {
  Point r = p;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= q[i];
  return r;
}

}  // namespace pei
