#pragma once

#include <functional>

#include "pei/map.hpp"

// Brute-force window enumeration used as an independent oracle.  The
// membership logic here deliberately avoids the set algebra: a point is
// tested per axis against the raw constraints.  All defining thresholds
// of an orthohedral set are bounded by its largest constant, so agreement
// on a window exceeding that by two per axis implies global agreement.

namespace pei {

// Direct point membership, one comparison per axis per atom.
inline bool window_member(const Point& p, const OrthohedralSet& s) {
  for (const auto& at : s.atoms()) {
    bool in = true;
    for (int j = 0; j < at.ambient && in; ++j) in = at.axes[j].contains(p[j]);
    if (in) return true;
  }
  return false;
}

// Visits every point of [-w, w]^N.
inline void for_each_window_point(int ambient, coord_t w, const std::function<void(const Point&)>& f) {
  Point p(ambient, -w);
  if (ambient == 0) {
    f(p);
    return;
  }
  while (true) {
    f(p);
    int j = 0;
    while (j < ambient) {
      if (p[j] < w) {
        ++p[j];
        break;
      }
      p[j] = -w;
      ++j;
    }
    if (j == ambient) break;
  }
}

// Pointwise agreement of two sets on the window.
inline bool window_sets_agree(const OrthohedralSet& a, const OrthohedralSet& b, coord_t w) {
  bool ok = true;
  for_each_window_point(a.ambient(), w, [&](const Point& p) {
    if (ok && window_member(p, a) != window_member(p, b)) ok = false;
  });
  return ok;
}

// Checks a map against window data: every window point of the domain maps
// into the target, no two window points collide, and when `onto` is set,
// every window point of the target deep inside the window is reached from
// some domain point of the enlarged window.
inline bool window_check_injection(const PiecewiseMap& m, const OrthohedralSet& target, coord_t w) {
  std::set<Point> seen;
  bool ok = true;
  for_each_window_point(m.ambient(), w, [&](const Point& p) {
    if (!ok || !window_member(p, m.domain)) return;
    Point q;
    int hits = 0;
    for (const auto& pc : m.pieces) {
      bool in = true;
      for (int j = 0; j < pc.atom.ambient && in; ++j) in = pc.atom.axes[j].contains(p[j]);
      if (in) {
        q = pc.iso.apply(p);
        ++hits;
      }
    }
    if (hits != 1) {
      ok = false;
      return;
    }
    if (!window_member(q, target)) {
      ok = false;
      return;
    }
    if (!seen.insert(q).second) ok = false;
  });
  return ok;
}

// Pointwise agreement of a composite with sequential application.
inline bool window_composition_agrees(const PiecewiseMap& f, const PiecewiseMap& g,
                                      const PiecewiseMap& composite, coord_t w) {
  bool ok = true;
  for_each_window_point(f.ambient(), w, [&](const Point& p) {
    if (!ok || !window_member(p, f.domain)) return;
    if (pei::apply(composite, p) != pei::apply(g, pei::apply(f, p))) ok = false;
  });
  return ok;
}

}  // namespace pei
