// Command-line front end: JSON in, JSON out.
//
// Exit codes: 0 success, 2 validation or input error, 3 resource cap
// exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "pei/json_io.hpp"
#include "pei/testkit.hpp"
#include "pei/window.hpp"

namespace {

using namespace pei;
using nlohmann::json;

json read_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[' || arg.front() == '"'))
    return json::parse(arg);
  if (arg == "-") return json::parse(std::cin);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open input file: " + arg);
  return json::parse(in);
}

OrthohedralSet read_set(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[') && arg.find("ambient") == std::string::npos)
    return parse_set(arg);
  return set_from_json(read_json_arg(arg));
}

PiecewiseMap read_map(const std::string& arg) { return map_from_json(read_json_arg(arg)); }

Point parse_point(const std::string& text) {
  Point p;
  std::string tok;
  for (char c : text + ",") {
    if (c == ',') {
      if (!tok.empty()) p.push_back(std::stoll(tok));
      tok.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      tok += c;
    }
  }
  return p;
}

std::vector<int> parse_axis_list(const std::string& text) {
  std::vector<int> out;
  for (coord_t v : parse_point(text)) out.push_back(static_cast<int>(v));
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

UnitBasis make_basis(const OrthohedralSet& s, const std::string& kind) {
  if (kind == "component") return component_units(s);
  return orthant_units(s);
}

// Window-oracle self test: random set pairs checked pointwise against the
// brute-force enumeration.
json run_selftest(uint64_t seed, int pairs) {
  Rng rng(seed);
  int pass = 0, fail = 0;
  for (int i = 0; i < pairs; ++i) {
    int ambient = static_cast<int>(rng.below(1, 4));
    OrthohedralSet a = random_set(rng, ambient, 3, 5);
    OrthohedralSet b = random_set(rng, ambient, 3, 5);
    coord_t w = std::max(max_abs_constant(a), max_abs_constant(b)) + 2;
    OrthohedralSet u = set_union(a, b);
    OrthohedralSet n = set_intersection(a, b);
    OrthohedralSet c = set_complement(a);
    OrthohedralSet d = set_difference(a, b);
    bool ok = u.validate_disjoint() && n.validate_disjoint() && c.validate_disjoint() &&
              d.validate_disjoint();
    for_each_window_point(ambient, w, [&](const Point& p) {
      if (!ok) return;
      bool ina = window_member(p, a), inb = window_member(p, b);
      if (window_member(p, u) != (ina || inb)) ok = false;
      if (window_member(p, n) != (ina && inb)) ok = false;
      if (window_member(p, c) != !ina) ok = false;
      if (window_member(p, d) != (ina && !inb)) ok = false;
    });
    (ok ? pass : fail) += 1;
  }
  return json{{"seed", seed}, {"pairs", pairs}, {"pass", pass}, {"fail", fail}};
}

int dispatch(int argc, char** argv) {
  CLI::App app{"exact computation with piecewise isometric permutations of lattice points"};
  app.require_subcommand(1);

  std::string arg_a, arg_b, arg_map, arg_with, arg_set, arg_graph, arg_forest, arg_maxima;
  std::string arg_kind = "pet", arg_flavor = "pet", arg_units = "orthant", arg_point, arg_axes;
  std::string arg_vertex, arg_sizes, arg_over;
  int arg_k = 0, arg_level = 1, arg_axis = 0, arg_colors = 2, arg_maxdim = -1;
  uint64_t arg_seed = 1;
  int arg_pairs = 100;
  bool arg_random = false;

  // ---- set ----
  auto* set_cmd = app.add_subcommand("set", "orthohedral set algebra");
  set_cmd->require_subcommand(1);
  auto add_ab = [&](CLI::App* c, bool need_b) {
    c->add_option("--a", arg_a, "first set (file, JSON, or literal)")->required();
    if (need_b) c->add_option("--b", arg_b, "second set")->required();
  };
  auto* s_inter = set_cmd->add_subcommand("intersect", "exact intersection");
  add_ab(s_inter, true);
  s_inter->callback([&] { emit(to_json(set_intersection(read_set(arg_a), read_set(arg_b)))); });
  auto* s_union = set_cmd->add_subcommand("union", "exact union");
  add_ab(s_union, true);
  s_union->callback([&] { emit(to_json(set_union(read_set(arg_a), read_set(arg_b)))); });
  auto* s_sub = set_cmd->add_subcommand("subtract", "exact difference");
  add_ab(s_sub, true);
  s_sub->callback([&] { emit(to_json(set_difference(read_set(arg_a), read_set(arg_b)))); });
  auto* s_comp = set_cmd->add_subcommand("complement", "complement in Z^N");
  add_ab(s_comp, false);
  s_comp->callback([&] { emit(to_json(set_complement(read_set(arg_a)))); });
  auto* s_eq = set_cmd->add_subcommand("equal", "semantic equality");
  add_ab(s_eq, true);
  s_eq->callback([&] { emit(json{{"equal", sets_equal(read_set(arg_a), read_set(arg_b))}}); });
  auto* s_inv = set_cmd->add_subcommand("invariants", "rank and height");
  add_ab(s_inv, false);
  s_inv->callback([&] { emit(to_json(invariants(read_set(arg_a)))); });
  auto* s_ind = set_cmd->add_subcommand("indicator", "indicator image, height function, quasi-normality");
  add_ab(s_ind, false);
  s_ind->callback([&] { emit(to_json(indicator_data(read_set(arg_a)))); });
  auto* s_skel = set_cmd->add_subcommand("skeleton", "rank-k skeleton of an orthant");
  add_ab(s_skel, false);
  s_skel->add_option("--k", arg_k, "face rank")->required();
  s_skel->callback([&] {
    OrthohedralSet s = read_set(arg_a);
    if (s.atoms().size() != 1) throw std::invalid_argument("skeleton: expected a single orthant");
    emit(to_json(skeleton(s.atoms()[0], arg_k)));
  });
  auto* s_reg = set_cmd->add_subcommand("regular", "regular and singular points of a skeleton stack");
  add_ab(s_reg, false);
  s_reg->callback([&] {
    auto rp = regular_points(read_set(arg_a));
    emit(json{{"interior", to_json(rp.interior)},
              {"singular", to_json(rp.singular)},
              {"components", rp.component_count}});
  });

  // ---- map ----
  auto* map_cmd = app.add_subcommand("map", "piecewise map operations");
  map_cmd->require_subcommand(1);
  auto* m_val = map_cmd->add_subcommand("validate", "classification flags");
  m_val->add_option("--map", arg_map)->required();
  m_val->callback([&] { emit(to_json(classify(read_map(arg_map)))); });
  auto* m_comp = map_cmd->add_subcommand("compose", "first --map, then --with");
  m_comp->add_option("--map", arg_map)->required();
  m_comp->add_option("--with", arg_with)->required();
  m_comp->callback([&] { emit(to_json(compose(read_map(arg_map), read_map(arg_with)))); });
  auto* m_inv = map_cmd->add_subcommand("invert", "inverse of an injective map");
  m_inv->add_option("--map", arg_map)->required();
  m_inv->callback([&] { emit(to_json(invert(read_map(arg_map)))); });
  auto* m_apply = map_cmd->add_subcommand("apply", "image of one point");
  m_apply->add_option("--map", arg_map)->required();
  m_apply->add_option("--point", arg_point, "comma separated coordinates")->required();
  m_apply->callback([&] { emit(json{{"image", pei::apply(read_map(arg_map), parse_point(arg_point))}}); });
  auto* m_img = map_cmd->add_subcommand("image", "image set");
  m_img->add_option("--map", arg_map)->required();
  m_img->callback([&] { emit(to_json(image_set(read_map(arg_map)))); });
  auto* m_h = map_cmd->add_subcommand("height", "height of a pei-injection");
  m_h->add_option("--map", arg_map)->required();
  m_h->callback([&] { emit(json{{"height", injection_height(read_map(arg_map))}}); });
  auto* m_ph = map_cmd->add_subcommand("parallel-height", "height along a direction set");
  m_ph->add_option("--map", arg_map)->required();
  m_ph->add_option("--axes", arg_axes, "comma separated axes of Y")->required();
  m_ph->callback([&] {
    Indicator y;
    for (int a : parse_axis_list(arg_axes)) y.push_back({a, +1});
    std::sort(y.begin(), y.end());
    emit(json{{"height", parallel_height(read_map(arg_map), y)}});
  });
  auto* m_germ = map_cmd->add_subcommand("germ-action", "action on maximal germs");
  m_germ->add_option("--map", arg_map)->required();
  m_germ->callback([&] {
    json arr = json::array();
    for (const auto& ga : germ_action(read_map(arg_map)))
      arr.push_back(json{{"from", to_json(ga.from)}, {"to", to_json(ga.to)}});
    emit(arr);
  });
  auto* m_fin = map_cmd->add_subcommand("finite-support", "finite support test");
  m_fin->add_option("--map", arg_map)->required();
  m_fin->callback([&] { emit(json{{"finiteSupport", has_finite_support(read_map(arg_map))}}); });

  // ---- germs ----
  auto* germ_cmd = app.add_subcommand("germs", "germ computations");
  germ_cmd->require_subcommand(1);
  auto* g_max = germ_cmd->add_subcommand("max", "maximal germs of a set");
  g_max->add_option("--set", arg_set)->required();
  g_max->callback([&] {
    json arr = json::array();
    for (const auto& gw : max_germs(read_set(arg_set))) arr.push_back(to_json(gw.germ));
    emit(arr);
  });
  auto* g_leq = germ_cmd->add_subcommand("leq", "order test on germs of two orthants");
  g_leq->add_option("--a", arg_a, "single-orthant set")->required();
  g_leq->add_option("--b", arg_b, "single-orthant set")->required();
  g_leq->callback([&] {
    auto ga = max_germs(read_set(arg_a)), gb = max_germs(read_set(arg_b));
    if (ga.size() != 1 || gb.size() != 1)
      throw std::invalid_argument("germs leq: expected single-germ sets");
    emit(json{{"leq", germ_leq(ga[0].germ, gb[0].germ)}});
  });
  auto* g_count = germ_cmd->add_subcommand("indicators", "number of origin-based indicators");
  g_count->add_option("--ambient", arg_k)->required();
  g_count->callback([&] { emit(json{{"count", enumerate_indicators(arg_k).size()}}); });

  // ---- series ----
  auto* series_cmd = app.add_subcommand("series", "normal-series membership");
  series_cmd->add_option("--map", arg_map)->required();
  series_cmd->add_option("--level", arg_level, "rank level j")->required();
  series_cmd->callback([&] { emit(to_json(series_membership(read_map(arg_map), arg_level))); });

  // ---- normalize ----
  auto* norm_cmd = app.add_subcommand("normalize", "pet or pei normal form with witness");
  norm_cmd->add_option("--set", arg_set)->required();
  norm_cmd->add_option("--kind", arg_kind, "pet|pei")->check(CLI::IsMember({"pet", "pei"}));
  norm_cmd->callback([&] {
    OrthohedralSet s = read_set(arg_set);
    emit(to_json(arg_kind == "pei" ? pei_normal_form(s) : pet_normal_form(s)));
  });

  // ---- poset ----
  auto* poset_cmd = app.add_subcommand("poset", "diagonal monoid poset");
  poset_cmd->require_subcommand(1);
  auto add_units = [&](CLI::App* c) {
    c->add_option("--units", arg_units, "orthant|component")
        ->check(CLI::IsMember({"orthant", "component"}));
    c->add_option("--over", arg_over, "domain set (defaults to the map domain)");
  };
  auto* p_leq = poset_cmd->add_subcommand("leq", "order test");
  p_leq->add_option("--f", arg_a)->required();
  p_leq->add_option("--g", arg_b)->required();
  add_units(p_leq);
  p_leq->callback([&] {
    PiecewiseMap f = read_map(arg_a), g = read_map(arg_b);
    UnitBasis basis = make_basis(arg_over.empty() ? f.domain : read_set(arg_over), arg_units);
    auto e = leq(basis, f, g);
    json out{{"leq", static_cast<bool>(e)}};
    out["exponents"] = e ? json(*e) : json(nullptr);
    emit(out);
  });
  auto* p_dec = poset_cmd->add_subcommand("decompose", "maximal element decomposition");
  p_dec->add_option("--f", arg_a, "the dominating injection")->required();
  p_dec->add_option("--b", arg_b, "the maximal element")->required();
  add_units(p_dec);
  p_dec->callback([&] {
    PiecewiseMap f = read_map(arg_a), b = read_map(arg_b);
    UnitBasis basis = make_basis(arg_over.empty() ? f.domain : read_set(arg_over), arg_units);
    auto d = maximal_decompose(basis, b, f);
    if (!d) {
      emit(json{{"maximal", false}});
      return;
    }
    emit(json{{"maximal", true},
              {"region", d->region_index},
              {"boundaryPart", to_json(d->boundary_part)},
              {"residualPart", to_json(d->residual_part)}});
  });
  auto* p_glb = poset_cmd->add_subcommand("glb", "largest common lower bound");
  p_glb->add_option("--f", arg_a)->required();
  p_glb->add_option("--maxima", arg_maxima, "JSON array of maximal elements")->required();
  add_units(p_glb);
  p_glb->callback([&] {
    PiecewiseMap f = read_map(arg_a);
    UnitBasis basis = make_basis(arg_over.empty() ? f.domain : read_set(arg_over), arg_units);
    std::vector<PiecewiseMap> bs;
    for (const auto& mj : read_json_arg(arg_maxima)) bs.push_back(map_from_json(mj));
    auto delta = common_lower_bound(basis, bs, f);
    if (delta) {
      emit(json{{"delta", to_json(*delta)}, {"height", injection_height(*delta)}});
      return;
    }
    auto ob = refute_common_lower_bound(basis, bs, f);
    emit(json{{"delta", nullptr},
              {"obstruction", ob == BoundObstruction::shared_unit ? "shared-unit"
                              : ob == BoundObstruction::boundary_overlap ? "boundary-overlap"
                                                                         : "unknown"}});
  });

  // ---- complex ----
  auto* cx_cmd = app.add_subcommand("complex", "colored graphs and homology");
  cx_cmd->require_subcommand(1);
  auto* c_verdict = cx_cmd->add_subcommand("verdict", "bouquet verdict for an admissible graph");
  c_verdict->add_option("--graph", arg_graph)->required();
  c_verdict->add_option("--colors", arg_colors)->required();
  c_verdict->callback(
      [&] { emit(to_json(wedge_verdict(graph_from_json(read_json_arg(arg_graph)), arg_colors))); });
  auto* c_hom = cx_cmd->add_subcommand("homology", "reduced integral homology of the flag complex");
  c_hom->add_option("--graph", arg_graph)->required();
  c_hom->add_option("--max-dim", arg_maxdim, "dimension cap (default: color count - 1)");
  c_hom->callback([&] {
    ColoredGraph g = graph_from_json(read_json_arg(arg_graph));
    int cap = arg_maxdim >= 0 ? arg_maxdim : std::max(0, g.color_count() - 1);
    emit(to_json(homology(flag_complex(g, cap))));
  });
  auto* c_cond = cx_cmd->add_subcommand("conditions", "colored-graph hypotheses");
  c_cond->add_option("--graph", arg_graph)->required();
  c_cond->add_option("--colors", arg_colors)->required();
  c_cond->callback([&] {
    emit(json{{"satisfied", check_conditions(graph_from_json(read_json_arg(arg_graph)), arg_colors)}});
  });
  auto* c_gen = cx_cmd->add_subcommand("gen", "multipartite or random admissible graph");
  c_gen->add_option("--sizes", arg_sizes, "comma separated part sizes")->required();
  c_gen->add_flag("--random", arg_random, "edge-thinned random admissible graph");
  c_gen->add_option("--seed", arg_seed);
  c_gen->callback([&] {
    std::vector<int> sizes = parse_axis_list(arg_sizes);
    if (arg_random)
      emit(to_json(gen_random_admissible(static_cast<int>(sizes.size()), sizes, arg_seed)));
    else
      emit(to_json(gen_multipartite(sizes)));
  });

  // ---- bounds ----
  auto* b_cmd = app.add_subcommand("bounds", "boundaries, links, finiteness-length bounds");
  b_cmd->require_subcommand(1);
  auto* b_fl = b_cmd->add_subcommand("fl", "finiteness-length bound report");
  b_fl->add_option("--set", arg_set)->required();
  b_fl->add_option("--flavor", arg_flavor, "pet|pei")->check(CLI::IsMember({"pet", "pei"}));
  b_fl->callback([&] { emit(to_json(fl_report(read_set(arg_set), arg_flavor))); });
  auto* b_bd = b_cmd->add_subcommand("boundary", "boundary at infinity in one direction");
  b_bd->add_option("--set", arg_set)->required();
  b_bd->add_option("--axis", arg_axis)->required();
  b_bd->callback([&] { emit(to_json(boundary_direction(read_set(arg_set), arg_axis))); });
  auto* b_split = b_cmd->add_subcommand("split", "S(x) and the perpendicular part");
  b_split->add_option("--set", arg_set)->required();
  b_split->add_option("--axis", arg_axis)->required();
  b_split->callback([&] {
    auto [sx, sp] = split_direction(read_set(arg_set), arg_axis);
    emit(json{{"parallel", to_json(sx)}, {"perpendicular", to_json(sp)}});
  });
  auto* b_link = b_cmd->add_subcommand("link", "height of the link stacks");
  b_link->add_option("--set", arg_set)->required();
  b_link->add_option("--axes", arg_axes, "comma separated axes of Y")->required();
  b_link->callback(
      [&] { emit(json{{"height", link_height(read_set(arg_set), parse_axis_list(arg_axes))}}); });
  auto* b_theta = b_cmd->add_subcommand("theta", "induced boundary permutation");
  b_theta->add_option("--map", arg_map)->required();
  b_theta->add_option("--axis", arg_axis)->required();
  b_theta->callback([&] { emit(to_json(theta(read_map(arg_map), arg_axis))); });
  auto* b_lift = b_cmd->add_subcommand("lift", "section of theta");
  b_lift->add_option("--map", arg_map, "pet permutation of the boundary")->required();
  b_lift->add_option("--set", arg_set, "the ambient set S")->required();
  b_lift->add_option("--axis", arg_axis)->required();
  b_lift->callback(
      [&] { emit(to_json(sigma_lift(read_map(arg_map), arg_axis, read_set(arg_set)))); });

  // ---- tree ----
  auto* t_cmd = app.add_subcommand("tree", "tree pairs and the boundary group");
  t_cmd->require_subcommand(1);
  auto* t_comp = t_cmd->add_subcommand("compose", "first --a, then --b");
  t_comp->add_option("--a", arg_a)->required();
  t_comp->add_option("--b", arg_b)->required();
  t_comp->callback([&] {
    emit(to_json(compose(tree_pair_from_json(read_json_arg(arg_a)),
                         tree_pair_from_json(read_json_arg(arg_b)))));
  });
  auto* t_inv = t_cmd->add_subcommand("invert", "inverse element");
  t_inv->add_option("--a", arg_a)->required();
  t_inv->callback([&] { emit(to_json(invert(tree_pair_from_json(read_json_arg(arg_a))))); });
  auto* t_tov = t_cmd->add_subcommand("to-v", "projection to the boundary group");
  t_tov->add_option("--a", arg_a)->required();
  t_tov->callback([&] { emit(to_json(to_v(tree_pair_from_json(read_json_arg(arg_a))))); });
  auto* t_fin = t_cmd->add_subcommand("finite-support", "kernel membership");
  t_fin->add_option("--a", arg_a)->required();
  t_fin->callback(
      [&] { emit(json{{"finiteSupport", has_finite_support(tree_pair_from_json(read_json_arg(arg_a)))}}); });
  auto* t_apply = t_cmd->add_subcommand("apply", "image of one vertex");
  t_apply->add_option("--a", arg_a)->required();
  t_apply->add_option("--vertex", arg_vertex, "address half:path")->required();
  t_apply->callback([&] {
    emit(json{{"image", vertex_to_string(pei::apply(tree_pair_from_json(read_json_arg(arg_a)),
                                                    vertex_from_string(arg_vertex)))}});
  });
  auto* t_cls = t_cmd->add_subcommand("classify", "normal-form type index of a forest");
  t_cls->add_option("--forest", arg_forest)->required();
  t_cls->callback(
      [&] { emit(json{{"type", classify_forest(forest_from_json(read_json_arg(arg_forest)))}}); });

  // ---- selftest ----
  auto* st_cmd = app.add_subcommand("selftest", "window-oracle self test");
  st_cmd->add_option("--seed", arg_seed);
  st_cmd->add_option("--pairs", arg_pairs);
  st_cmd->callback([&] { emit(run_selftest(arg_seed, arg_pairs)); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
