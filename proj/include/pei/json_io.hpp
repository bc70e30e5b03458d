#pragma once

#include <functional>

#include <json.hpp>

#include "pei/boundary.hpp"
#include "pei/homology.hpp"
#include "pei/literal.hpp"
#include "pei/normal_form.hpp"
#include "pei/poset.hpp"
#include "pei/treepair.hpp"

// Canonical JSON encodings.
//
//   constraint  {"fix":a} | {"up":a} | {"down":a} | {"range":[a,b]} | "free"
//   atom        [constraint, ...]            (also accepted: "[0+,3..5]" literals)
//   set         {"ambient": N, "atoms": [atom, ...]}
//   isometry    {"perm": [±i, ...], "shift": [...]}   perm[j] = ±(i+1): input
//               axis j feeds output axis i with that sign
//   map         {"domain": set, "pieces": [{"atom": atom, "perm": ..., "shift": ...}]}
//   graph       {"colors": [...], "edges": [[u,v], ...]}
//   half tree   0 for a leaf, [left, right] for a caret
//   tree pair   {"domain": [h0,h1], "range": [h0,h1],
//                "leaves": {"0:path": "1:path", ...}, "inner": {...}}

namespace pei {

using nlohmann::json;

inline json to_json(const Constraint& c) {
  switch (c.kind) {
    case Constraint::Kind::Fixed: return json{{"fix", c.a}};
    case Constraint::Kind::RayUp: return json{{"up", c.a}};
    case Constraint::Kind::RayDown: return json{{"down", c.a}};
    case Constraint::Kind::Range: return json{{"range", {c.a, c.b}}};
    case Constraint::Kind::Free: return json("free");
  }
  return json();
}

inline Constraint constraint_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "free") return Constraint::free();
    return detail::parse_constraint(j.get<std::string>());
  }
  if (!j.is_object() || j.size() != 1)
    throw std::invalid_argument("constraint: expected one-key object or \"free\"");
  if (j.contains("fix")) return Constraint::fixed(j["fix"].get<coord_t>());
  if (j.contains("up")) return Constraint::ray_up(j["up"].get<coord_t>());
  if (j.contains("down")) return Constraint::ray_down(j["down"].get<coord_t>());
  if (j.contains("range"))
    return Constraint::range(j["range"][0].get<coord_t>(), j["range"][1].get<coord_t>());
  throw std::invalid_argument("constraint: unknown kind");
}

inline json to_json(const BoxAtom& at) {
  json arr = json::array();
  for (const auto& c : at.axes) arr.push_back(to_json(c));
  return arr;
}

inline BoxAtom atom_from_json(const json& j) {
  if (j.is_string()) return parse_atom(j.get<std::string>());
  std::vector<Constraint> cs;
  for (const auto& cj : j) cs.push_back(constraint_from_json(cj));
  int n = static_cast<int>(cs.size());
  return BoxAtom(n, std::move(cs));
}

inline json to_json(const OrthohedralSet& s) {
  json atoms = json::array();
  for (const auto& at : s.atoms()) atoms.push_back(to_json(at));
  return json{{"ambient", s.ambient()}, {"atoms", atoms}};
}

inline OrthohedralSet set_from_json(const json& j) {
  if (j.is_string()) return parse_set(j.get<std::string>());
  int ambient = j.at("ambient").get<int>();
  std::vector<BoxAtom> atoms;
  for (const auto& aj : j.at("atoms")) {
    BoxAtom at = atom_from_json(aj);
    if (at.ambient != ambient) throw std::invalid_argument("set: atom dimension mismatch");
    atoms.push_back(std::move(at));
  }
  return OrthohedralSet::from_atoms(ambient, atoms);
}

inline json perm_to_json(const Isometry& t) {
  json arr = json::array();
  for (int j = 0; j < t.dim(); ++j) arr.push_back(t.sign[j] * (t.perm[j] + 1));
  return arr;
}

inline json to_json(const Isometry& t) {
  return json{{"perm", perm_to_json(t)}, {"shift", t.shift}};
}

inline Isometry isometry_from_json(const json& j, int ambient) {
  Isometry t = Isometry::identity(ambient);
  if (j.contains("perm")) {
    const auto& pj = j["perm"];
    if (static_cast<int>(pj.size()) != ambient)
      throw std::invalid_argument("isometry: perm length mismatch");
    std::vector<bool> seen(ambient, false);
    for (int k = 0; k < ambient; ++k) {
      long long v = pj[k].get<long long>();
      if (v == 0 || std::abs(v) > ambient) throw std::invalid_argument("isometry: perm entry out of range");
      t.perm[k] = static_cast<int>(std::abs(v)) - 1;
      t.sign[k] = v > 0 ? +1 : -1;
      if (seen[t.perm[k]]) throw std::invalid_argument("isometry: perm not a bijection");
      seen[t.perm[k]] = true;
    }
  }
  if (j.contains("shift")) {
    const auto& sj = j["shift"];
    if (static_cast<int>(sj.size()) != ambient)
      throw std::invalid_argument("isometry: shift length mismatch");
    for (int k = 0; k < ambient; ++k) t.shift[k] = sj[k].get<coord_t>();
  }
  return t;
}

inline json to_json(const PiecewiseMap& m) {
  json pieces = json::array();
  for (const auto& pc : m.pieces)
    pieces.push_back(json{{"atom", to_json(pc.atom)},
                          {"perm", perm_to_json(pc.iso)},
                          {"shift", pc.iso.shift}});
  return json{{"domain", to_json(m.domain)}, {"pieces", pieces}};
}

inline PiecewiseMap map_from_json(const json& j) {
  PiecewiseMap m;
  m.domain = set_from_json(j.at("domain"));
  for (const auto& pj : j.at("pieces")) {
    BoxAtom at = atom_from_json(pj.at("atom"));
    if (at.ambient != m.domain.ambient())
      throw std::invalid_argument("map: piece dimension mismatch");
    Isometry iso = isometry_from_json(pj, m.domain.ambient());
    m.pieces.push_back({std::move(at), std::move(iso)});
  }
  return m;
}

inline json to_json(const Germ& g) {
  json dirs = json::array();
  for (const auto& d : g.directions) dirs.push_back((d.sign > 0 ? 1 : -1) * (d.axis + 1));
  json off = json::object();
  for (const auto& [axis, v] : g.off) off[std::to_string(axis)] = v;
  return json{{"directions", dirs}, {"off", off}};
}

inline json to_json(const MapFlags& f) {
  return json{{"injective", f.injective},
              {"bijective", f.bijective_onto_domain},
              {"pet", f.pet},
              {"diagonal", f.diagonal},
              {"superDiagonal", f.super_diagonal}};
}

inline json to_json(const SetInvariants& inv) {
  return json{{"rank", inv.rank}, {"height", inv.height}};
}

inline json indicator_to_json(const Indicator& ind) {
  json arr = json::array();
  for (const auto& d : ind) arr.push_back((d.sign > 0 ? 1 : -1) * (d.axis + 1));
  return arr;
}

inline json to_json(const IndicatorData& d) {
  json h = json::array();
  for (const auto& [ind, cnt] : d.h) h.push_back(json{{"indicator", indicator_to_json(ind)}, {"count", cnt}});
  json maxi = json::array();
  for (const auto& ind : d.max_indicators) maxi.push_back(indicator_to_json(ind));
  return json{{"sTau", to_json(d.s_tau)},
              {"heightFunction", h},
              {"maxIndicators", maxi},
              {"quasiNormal", d.quasi_normal}};
}

inline json to_json(const ColoredGraph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
  return json{{"colors", g.colors}, {"edges", edges}};
}

inline ColoredGraph graph_from_json(const json& j) {
  ColoredGraph g;
  g.colors = j.at("colors").get<std::vector<int>>();
  for (const auto& ej : j.at("edges")) g.add_edge(ej[0].get<int>(), ej[1].get<int>());
  return g;
}

inline json to_json(const HomologyProfile& p) {
  json per = json::array();
  for (size_t d = 0; d < p.betti.size(); ++d)
    per.push_back(json{{"degree", d}, {"betti", p.betti[d]}, {"torsion", p.torsion[d]}});
  return json{{"reduced", true}, {"groups", per}};
}

inline json to_json(const WedgeVerdict& v) {
  return json{{"concentratedDegree", v.concentrated_degree},
              {"sphereCount", v.sphere_count},
              {"pass", v.pass}};
}

inline json to_json(const BoundsReport& r) {
  json out{{"flavor", r.flavor},
           {"rank", r.rank},
           {"height", r.height},
           {"provenance", r.provenance}};
  out["lower"] = r.lower ? json(*r.lower) : json(nullptr);
  out["upper"] = r.upper ? json(*r.upper) : json(nullptr);
  if (r.components) out["components"] = *r.components;
  return out;
}

inline json to_json(const NormalFormResult& r) {
  return json{{"kind", r.kind == NormalFormResult::Kind::pet ? "pet" : "pei"},
              {"normalized", to_json(r.normalized)},
              {"witness", to_json(r.witness)}};
}

inline json to_json(const SeriesMembership& s) {
  json germs = json::array();
  for (const auto& gt : s.fixed_rank_j_germs) {
    json e{{"germ", to_json(gt.germ)}, {"translation", gt.translation}};
    e["exponent"] = gt.exponent ? json(*gt.exponent) : json(nullptr);
    germs.push_back(std::move(e));
  }
  return json{{"inC", s.in_c}, {"inK", s.in_k}, {"fixedGerms", germs}};
}

// ---- tree encodings ----

inline json half_to_json(const HalfLeaves& hl) {
  // rebuild the nested caret structure from the leaf set
  std::function<json(const std::string&)> build = [&](const std::string& w) -> json {
    if (std::binary_search(hl.begin(), hl.end(), w)) return json(0);
    return json::array({build(w + "0"), build(w + "1")});
  };
  return build("");
}

inline void half_from_json(const json& j, const std::string& prefix, HalfLeaves& out) {
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("tree: caret needs two children");
    half_from_json(j[0], prefix + "0", out);
    half_from_json(j[1], prefix + "1", out);
    return;
  }
  out.push_back(prefix);
}

inline json subtree_to_json(const SubTree& t) {
  return json::array({half_to_json(t.half[0]), half_to_json(t.half[1])});
}

inline SubTree subtree_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("tree: expected [half0, half1]");
  SubTree t;
  for (int k = 0; k < 2; ++k) {
    half_from_json(j[k], "", t.half[k]);
    std::sort(t.half[k].begin(), t.half[k].end());
  }
  return t;
}

inline std::string vertex_to_string(const TreeVertex& v) {
  return std::to_string(v.half) + ":" + v.path;
}

inline TreeVertex vertex_from_string(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("tree vertex: expected half:path");
  TreeVertex v;
  v.half = std::stoi(s.substr(0, colon));
  if (v.half != 0 && v.half != 1) throw std::invalid_argument("tree vertex: half must be 0 or 1");
  v.path = s.substr(colon + 1);
  for (char c : v.path)
    if (c != '0' && c != '1') throw std::invalid_argument("tree vertex: path must be binary");
  return v;
}

inline json to_json(const TreePairElement& e) {
  json leaves = json::object(), inner = json::object();
  for (const auto& [a, b] : e.leaf_bij) leaves[vertex_to_string(a)] = vertex_to_string(b);
  for (const auto& [a, b] : e.inner_bij) inner[vertex_to_string(a)] = vertex_to_string(b);
  return json{{"domain", subtree_to_json(e.domain)},
              {"range", subtree_to_json(e.range)},
              {"leaves", leaves},
              {"inner", inner}};
}

inline TreePairElement tree_pair_from_json(const json& j) {
  TreePairElement e;
  e.domain = subtree_from_json(j.at("domain"));
  e.range = subtree_from_json(j.at("range"));
  for (const auto& [a, b] : j.at("leaves").items())
    e.leaf_bij[vertex_from_string(a)] = vertex_from_string(b.get<std::string>());
  if (j.contains("inner"))
    for (const auto& [a, b] : j.at("inner").items())
      e.inner_bij[vertex_from_string(a)] = vertex_from_string(b.get<std::string>());
  validate_pair(e);
  return e;
}

inline json to_json(const VElement& e) {
  json leaves = json::object();
  for (const auto& [a, b] : e.leaf_bij) leaves[vertex_to_string(a)] = vertex_to_string(b);
  return json{{"domain", subtree_to_json(e.domain)},
              {"range", subtree_to_json(e.range)},
              {"leaves", leaves}};
}

inline ForestDescription forest_from_json(const json& j) {
  ForestDescription f;
  if (j.contains("components"))
    for (const auto& c : j["components"]) {
      if (c.is_string()) {
        std::string s = c.get<std::string>();
        if (s == "t0")
          ++f.t0;
        else if (s == "t1")
          ++f.t1;
        else if (s == "full")
          ++f.full;
        else
          throw std::invalid_argument("forest: unknown component kind " + s);
      } else {
        f.finite.push_back(c.get<long long>());
      }
    }
  if (j.contains("isolated")) f.isolated = j["isolated"].get<long long>();
  if (j.contains("removed")) f.removed = j["removed"].get<long long>();
  return f;
}

}  // namespace pei
