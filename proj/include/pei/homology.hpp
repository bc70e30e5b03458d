#pragma once

#include <map>
#include <random>
#include <set>

#include "pei/core.hpp"

// Colored graphs, flag complexes, and exact integral simplicial homology
// via Smith diagonalization.  The verifier checks, at homology level, that
// admissible colored graphs produce the concentrated free homology of a
// bouquet of (h-1)-spheres.

namespace pei {

struct ColoredGraph {
  std::vector<int> colors;                 // vertex -> color index
  std::set<std::pair<int, int>> edges;     // u < v

  int vertex_count() const { return static_cast<int>(colors.size()); }
  int color_count() const {
    int h = 0;
    for (int c : colors) h = std::max(h, c + 1);
    return h;
  }
  bool adjacent(int u, int v) const {
    if (u > v) std::swap(u, v);
    return edges.count({u, v}) > 0;
  }
  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("colored graph: loop edge");
    if (colors.at(u) == colors.at(v))
      throw std::invalid_argument("colored graph: edge inside a color class");
    if (u > v) std::swap(u, v);
    edges.insert({u, v});
  }
  void validate() const {
    for (const auto& [u, v] : edges) {
      if (u < 0 || v >= vertex_count() || u >= v)
        throw std::invalid_argument("colored graph: edge out of range");
      if (colors[u] == colors[v])
        throw std::invalid_argument("colored graph: edge inside a color class");
    }
  }
};

struct SimplicialComplex {
  // simplices[d] lists the d-simplices as sorted vertex vectors, sorted.
  std::vector<std::vector<std::vector<int>>> simplices;

  int dim() const { return static_cast<int>(simplices.size()) - 1; }
  size_t total_count() const {
    size_t n = 0;
    for (const auto& level : simplices) n += level.size();
    return n;
  }
  long long euler_characteristic() const {
    long long chi = 0;
    for (int d = 0; d <= dim(); ++d)
      chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(simplices[d].size());
    return chi;
  }
};

inline constexpr size_t kSimplexCap = 2000;

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Clique enumeration up to the dimension cap; deterministic ordering.
inline SimplicialComplex flag_complex(const ColoredGraph& g, int max_dim) {
  if (max_dim < 0) throw std::invalid_argument("flag_complex: negative dimension cap");
  g.validate();
  SimplicialComplex k;
  k.simplices.resize(max_dim + 1);
  int n = g.vertex_count();
  for (int v = 0; v < n; ++v) k.simplices[0].push_back({v});
  for (int d = 1; d <= max_dim; ++d) {
    for (const auto& s : k.simplices[d - 1]) {
      for (int v = s.back() + 1; v < n; ++v) {
        bool clique = true;
        for (int u : s)
          if (!g.adjacent(u, v)) {
            clique = false;
            break;
          }
        if (clique) {
          auto t = s;
          t.push_back(v);
          k.simplices[d].push_back(std::move(t));
        }
      }
    }
    if (k.total_count() > kSimplexCap)
      throw CapExceeded("flag_complex: simplex cap exceeded");
  }
  return k;
}

namespace smith_detail {

using Matrix = std::vector<std::vector<long long>>;

inline void check_magnitude(long long v) {
  if (std::abs(v) > (1LL << 40))
    throw std::overflow_error("smith: entry growth beyond the checked range");
}

// Diagonalizes m over Z; returns the nonzero diagonal entries.
inline std::vector<long long> smith_diagonal(Matrix m) {
  std::vector<long long> diag;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    // pivot: smallest nonzero magnitude in the working block
    size_t pr = r0, pc = c0;
    long long best = 0;
    for (size_t i = r0; i < rows; ++i)
      for (size_t j = c0; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < best)) {
          best = std::abs(m[i][j]);
          pr = i;
          pc = j;
        }
    if (best == 0) break;
    std::swap(m[r0], m[pr]);
    for (size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = r0 + 1; i < rows; ++i) {
        if (m[i][c0] == 0) continue;
        long long q = m[i][c0] / m[r0][c0];
        for (size_t j = c0; j < cols; ++j) {
          m[i][j] -= q * m[r0][j];
          check_magnitude(m[i][j]);
        }
        if (m[i][c0] != 0) {
          std::swap(m[r0], m[i]);
          clean = false;
        }
      }
      for (size_t j = c0 + 1; j < cols; ++j) {
        if (m[r0][j] == 0) continue;
        long long q = m[r0][j] / m[r0][c0];
        for (size_t i = r0; i < rows; ++i) {
          m[i][j] -= q * m[i][c0];
          check_magnitude(m[i][j]);
        }
        if (m[r0][j] != 0) {
          for (size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][j]);
          clean = false;
        }
      }
    }
    diag.push_back(std::abs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  // normalize divisibility d1 | d2 | ... (only the multiset matters for
  // ranks and torsion, but keep the canonical chain)
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      long long a = diag[i], b = diag[j];
      long long g = std::__gcd(a, b);
      long long l = (a / g) * b;
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

}  // namespace smith_detail

struct HomologyProfile {
  // reduced integral homology, degrees 0..dim
  std::vector<long long> betti;
  std::vector<std::vector<long long>> torsion;

  bool concentrated_free_in(int degree) const {
    for (size_t d = 0; d < betti.size(); ++d) {
      if (static_cast<int>(d) != degree && betti[d] != 0) return false;
      if (!torsion[d].empty()) return false;
    }
    if (degree >= static_cast<int>(betti.size())) return false;
    return true;
  }
};

// Reduced integral homology by Smith diagonalization of the boundary
// matrices, augmentation included.
inline HomologyProfile homology(const SimplicialComplex& k) {
  if (k.total_count() > kSimplexCap) throw CapExceeded("homology: simplex cap exceeded");
  int dim = k.dim();
  HomologyProfile p;
  if (dim < 0) return p;
  // index simplices per dimension
  std::vector<std::map<std::vector<int>, int>> index(dim + 1);
  for (int d = 0; d <= dim; ++d)
    for (size_t i = 0; i < k.simplices[d].size(); ++i)
      index[d][k.simplices[d][i]] = static_cast<int>(i);

  // boundary matrix of degree d maps d-chains to (d-1)-chains; degree 0
  // maps to the empty simplex (augmentation)
  auto boundary = [&](int d) -> smith_detail::Matrix {
    size_t cols = k.simplices[d].size();
    size_t rows = d == 0 ? 1 : k.simplices[d - 1].size();
    smith_detail::Matrix m(rows, std::vector<long long>(cols, 0));
    for (size_t j = 0; j < cols; ++j) {
      const auto& s = k.simplices[d][j];
      if (d == 0) {
        m[0][j] = 1;
        continue;
      }
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> face;
        for (size_t t = 0; t < s.size(); ++t)
          if (t != drop) face.push_back(s[t]);
        int sign = (drop % 2 == 0) ? 1 : -1;
        m[index[d - 1].at(face)][j] += sign;
      }
    }
    return m;
  };

  std::vector<std::vector<long long>> diag(dim + 2);
  for (int d = 0; d <= dim; ++d) diag[d] = smith_detail::smith_diagonal(boundary(d));
  // diag[dim + 1] stays empty: there are no (dim+1)-simplices

  p.betti.resize(dim + 1);
  p.torsion.resize(dim + 1);
  for (int d = 0; d <= dim; ++d) {
    long long n_d = static_cast<long long>(k.simplices[d].size());
    long long rank_d = static_cast<long long>(diag[d].size());
    long long rank_up = static_cast<long long>(diag[d + 1].size());
    p.betti[d] = n_d - rank_d - rank_up;
    for (long long v : diag[d + 1])
      if (v > 1) p.torsion[d].push_back(v);
    std::sort(p.torsion[d].begin(), p.torsion[d].end());
  }
  return p;
}

// Admissibility conditions on an h-colored graph: every color class has at least
// two vertices, and any 2(h-1) vertices outside a class admit two common
// neighbours inside it.  Subsets of the exact size dominate the smaller
// ones, so only those are enumerated.
inline bool check_conditions(const ColoredGraph& g, int h) {
  g.validate();
  if (g.color_count() > h) throw std::invalid_argument("check_conditions: color index out of range");
  std::vector<std::vector<int>> classes(h);
  for (int v = 0; v < g.vertex_count(); ++v) classes.at(g.colors[v]).push_back(v);
  for (const auto& cls : classes)
    if (cls.size() < 2) return false;

  for (int i = 0; i < h; ++i) {
    std::vector<int> outside;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.colors[v] != i) outside.push_back(v);
    int m = std::min<int>(2 * (h - 1), static_cast<int>(outside.size()));
    std::vector<int> pick(outside.size(), 0);
    std::fill(pick.begin(), pick.begin() + m, 1);
    std::sort(pick.begin(), pick.end());
    bool all_ok = true;
    do {
      std::vector<int> chosen;
      for (size_t t = 0; t < outside.size(); ++t)
        if (pick[t]) chosen.push_back(outside[t]);
      int found = 0;
      for (int v : classes[i]) {
        bool adj_all = true;
        for (int u : chosen)
          if (!g.adjacent(u, v)) {
            adj_all = false;
            break;
          }
        if (adj_all) ++found;
        if (found >= 2) break;
      }
      if (found < 2) {
        all_ok = false;
        break;
      }
    } while (std::next_permutation(pick.begin(), pick.end()));
    if (!all_ok) return false;
  }
  return true;
}

struct WedgeVerdict {
  int concentrated_degree = 0;
  long long sphere_count = 0;
  bool pass = false;
};

// Homology-level verdict for the bouquet conclusion: reduced homology
// free and concentrated in degree h-1.
inline WedgeVerdict wedge_verdict(const ColoredGraph& g, int h) {
  if (!check_conditions(g, h))
    throw std::invalid_argument("wedge_verdict: graph fails the colored-graph conditions");
  SimplicialComplex k = flag_complex(g, h - 1);
  HomologyProfile p = homology(k);
  WedgeVerdict v;
  v.concentrated_degree = h - 1;
  v.sphere_count = (h - 1 < static_cast<int>(p.betti.size())) ? p.betti[h - 1] : 0;
  v.pass = p.concentrated_free_in(h - 1);
  return v;
}

inline ColoredGraph gen_multipartite(const std::vector<int>& sizes) {
  ColoredGraph g;
  for (size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] < 1) throw std::invalid_argument("gen_multipartite: empty part");
    for (int i = 0; i < sizes[c]; ++i) g.colors.push_back(static_cast<int>(c));
  }
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (g.colors[u] != g.colors[v]) g.add_edge(u, v);
  return g;
}

// Random edge-thinned multipartite graph that still satisfies the
// conditions; rejection sampling with a deterministic seed.
inline ColoredGraph gen_random_admissible(int h, const std::vector<int>& sizes, uint64_t seed,
                                          int max_tries = 200) {
  if (static_cast<int>(sizes.size()) != h)
    throw std::invalid_argument("gen_random_admissible: need one size per color");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    ColoredGraph g = gen_multipartite(sizes);
    std::vector<std::pair<int, int>> all(g.edges.begin(), g.edges.end());
    ColoredGraph thinned;
    thinned.colors = g.colors;
    for (const auto& e : all)
      if (rng() % 8 != 0) thinned.edges.insert(e);
    if (check_conditions(thinned, h)) return thinned;
  }
  throw std::runtime_error("gen_random_admissible: sampling bound exhausted");
}

}  // namespace pei
