#include "cdf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <sstream>

#include "cdf/atlas.hpp"
#include "cdf/complex.hpp"
#include "cdf/cotangent.hpp"
#include "cdf/deform.hpp"
#include "cdf/errors.hpp"
#include "cdf/gradings.hpp"
#include "cdf/groebner.hpp"
#include "cdf/properties.hpp"
#include "cdf/seed_io.hpp"
#include "cdf/universal.hpp"

namespace cdf {

namespace {

using nlohmann::json;

struct Config {
  std::string seed;
  std::size_t max_seeds = 100000;
  std::size_t max_order = 16;
  std::size_t threads = 1;
  bool json = false;
  bool find_positive = false, add_frozen = false;
  bool invariant = false, families = false;
  std::string property;
  bool repair = false;
  bool verify = false;
};

json int_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

json zvec_json(const ZVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

std::string zvec_string(const ZVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string hdeg_string(const HDegree& d) {
  if (d.torsion.empty()) return to_string(d.free);
  return to_string(d.free) + " + torsion " + to_string(d.torsion);
}

class Names {
public:
  explicit Names(const Atlas& a) {
    std::vector<std::string> names;
    for (const auto& v : a.variables()) names.push_back(v.name);
    ring_ = make_ring(names);
  }
  Names(const Atlas& a, std::size_t num_t) {
    std::vector<std::string> names;
    for (const auto& v : a.variables()) names.push_back(v.name);
    for (std::size_t i = 0; i < num_t; ++i) names.push_back("t" + std::to_string(i + 1));
    ring_ = make_ring(names);
  }
  const std::string& operator[](std::size_t id) const { return ring_->names[id]; }
  std::string monomial(const IntVec& e) const {
    IntVec full = e;
    full.resize(ring_->names.size(), 0);
    return monomial_string(*ring_, full);
  }
  std::string monomial(const SparseMonomial& s) const {
    IntVec e(ring_->names.size(), 0);
    for (auto [id, x] : s) e[id] += x;
    return monomial_string(*ring_, e);
  }
  std::string face(const Face& f) const {
    std::string s = "{";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + (*this)[f[i]];
    return s + "}";
  }

private:
  RingPtr ring_;
};

json ids_json(const std::vector<std::size_t>& ids) {
  json out = json::array();
  for (auto i : ids) out.push_back(i + 1);
  return out;
}

std::string laurent_string(const Atlas& a, std::size_t id, json* numerator = nullptr, json* denominator = nullptr) {
  auto [num, den] = split_laurent(laurent_expansion(a, id));
  Names names(a);
  std::string n = num.to_string(), d = names.monomial(den);
  if (numerator) *numerator = n;
  if (denominator) *denominator = d;
  if (d == "1") return n;
  return "(" + n + ")/" + d;
}

std::string type_string(const Atlas& a) {
  FiniteTypeResult t = classify_mutation_class(a);
  std::string s;
  for (const auto& c : t.components) s += (s.empty() ? "" : " x ") + c;
  return s.empty() ? "empty" : s;
}

Atlas load_atlas(const Config& c, bool laurent = true) {
  return enumerate(resolve_seed(c.seed), AtlasOptions{c.max_seeds, laurent});
}

std::string relation_string(const UniversalRelation& r, const Names& names, std::size_t num_z) {
  auto side = [&](const RelationSide& s) {
    IntVec e = s.z;
    e.resize(num_z, 0);
    e.insert(e.end(), s.t.begin(), s.t.end());
    return names.monomial(e);
  };
  return names[r.v] + "*" + names[r.w] + " = " + side(r.plus) + " + " + side(r.minus);
}

void cmd_enumerate(const Config& c, std::ostream& out) {
  Atlas a = load_atlas(c);
  Names names(a);
  json doc;
  doc["type"] = type_string(a);
  doc["seeds"] = a.seeds().size();
  doc["variables"] = json::array();
  for (const auto& v : a.variables()) {
    json num, den;
    laurent_string(a, v.id, &num, &den);
    doc["variables"].push_back({{"id", v.id + 1}, {"name", v.name}, {"frozen", v.frozen}, {"g_vector", v.g_vector},
                                {"numerator", num}, {"denominator", den}});
  }
  doc["clusters"] = json::array();
  for (const auto& cl : a.clusters()) doc["clusters"].push_back(ids_json(cl));
  doc["exchange_pairs"] = json::array();
  for (const auto& p : a.exchange_pairs())
    doc["exchange_pairs"].push_back(
        {{"v", p.v + 1}, {"w", p.w + 1}, {"plus", names.monomial(p.plus)}, {"minus", names.monomial(p.minus)}});
  if (c.json) {
    out << doc.dump(2) << "\n";
    return;
  }
  out << "type: " << doc["type"].get<std::string>() << "\n";
  out << "seeds: " << a.seeds().size() << "\n";
  out << "variables: " << a.variables().size() << "\n";
  for (const auto& v : a.variables())
    out << "  " << v.id + 1 << " " << v.name << (v.frozen ? " frozen" : "") << " g=" << to_string(v.g_vector)
        << " " << laurent_string(a, v.id) << "\n";
  out << "clusters: " << a.clusters().size() << "\n";
  for (const auto& cl : a.clusters()) out << "  " << names.face(cl) << "\n";
  out << "exchange pairs: " << a.exchange_pairs().size() << "\n";
  for (const auto& p : a.exchange_pairs())
    out << "  " << names[p.v] << "*" << names[p.w] << " = " << names.monomial(p.plus) << " + "
        << names.monomial(p.minus) << "\n";
}

void cmd_complex(const Config& c, std::ostream& out) {
  Atlas a = load_atlas(c, false);
  Names names(a);
  SimplicialComplex k = cluster_complex(a);
  SphereCheck sc = sphere_check(k);
  const bool flag = is_flag(k);
  if (c.json) {
    json doc;
    doc["vertices"] = ids_json(k.vertices());
    doc["facets"] = json::array();
    for (const auto& f : k.facets()) doc["facets"].push_back(ids_json(f));
    doc["f_vector"] = k.f_vector();
    doc["pseudomanifold"] = sc.pseudomanifold;
    doc["euler_ok"] = sc.euler_ok;
    doc["flag"] = flag;
    out << doc.dump(2) << "\n";
    return;
  }
  out << "vertices: " << names.face(k.vertices()) << "\n";
  out << "facets: " << k.facets().size() << "\n";
  for (const auto& f : k.facets()) out << "  " << names.face(f) << "\n";
  const auto fv = k.f_vector();
  out << "f-vector: " << to_string(IntVec(fv.begin(), fv.end())) << "\n";
  out << "pseudomanifold: " << (sc.pseudomanifold ? "yes" : "no") << "\n";
  out << "euler characteristic of a sphere: " << (sc.euler_ok ? "yes" : "no") << "\n";
  out << "flag: " << (flag ? "yes" : "no") << "\n";
}

void cmd_sr_ideal(const Config& c, std::ostream& out) {
  Atlas a = load_atlas(c, false);
  Names names(a);
  MonomialIdeal j = join_ideal(a);
  std::vector<std::string> gens;
  for (const auto& g : j.generators) {
    IntVec e(a.variables().size(), 0);
    for (std::size_t s = 0; s < g.size(); ++s) e[j.variables[s]] = g[s];
    gens.push_back(names.monomial(e));
  }
  if (c.json) {
    out << json{{"generators", gens}}.dump(2) << "\n";
    return;
  }
  out << "generators: " << gens.size() << "\n";
  for (const auto& g : gens) out << "  " << g << "\n";
}

void cmd_grading(const Config& c, std::ostream& out) {
  Seed seed = resolve_seed(c.seed);
  if (c.add_frozen) {
    Seed s = add_frozen_for_positivity(seed, c.max_seeds);
    out << seed_to_json(s).dump(c.json ? 2 : -1) << "\n";
    return;
  }
  Atlas a = enumerate(seed, AtlasOptions{c.max_seeds, false});
  GradingData gd = m_grading(seed.matrix);
  RankFlags rf = rank_flags(seed.matrix);
  json doc;
  doc["free_rank"] = gd.free_rank;
  doc["torsion"] = gd.torsion;
  doc["full_rank"] = rf.full_rank;
  doc["full_z_rank"] = rf.full_z_rank;
  doc["degrees"] = json::array();
  for (const auto& v : a.variables()) {
    HDegree d = variable_degree(gd, a, v.id);
    doc["degrees"].push_back({{"id", v.id + 1}, {"name", v.name}, {"free", d.free}, {"torsion", d.torsion}});
  }
  std::optional<IntVec> pos;
  if (c.find_positive) {
    pos = find_strictly_positive_grading(a);
    doc["positive_grading"] = pos ? json(*pos) : json(nullptr);
    if (pos) doc["positive_weights"] = strict_weights(a, *pos);
  }
  if (c.json) {
    out << doc.dump(2) << "\n";
    return;
  }
  out << "M = Z^" << gd.free_rank;
  for (auto t : gd.torsion) out << " x Z/" << t;
  out << "\nfull rank: " << (rf.full_rank ? "yes" : "no") << ", full Z-rank: " << (rf.full_z_rank ? "yes" : "no")
      << "\ndegrees:\n";
  for (const auto& v : a.variables()) out << "  " << v.name << " " << hdeg_string(variable_degree(gd, a, v.id)) << "\n";
  if (c.find_positive) {
    if (!pos) {
      out << "strictly positive grading: none\n";
    } else {
      out << "strictly positive grading: " << to_string(*pos) << "\n";
      out << "weights: " << to_string(strict_weights(a, *pos)) << "\n";
    }
  }
}

void cmd_univ(const Config& c, std::ostream& out) {
  Atlas a = load_atlas(c, false);
  UniversalData u = build_universal(a, c.max_seeds);
  Names names(a, u.p());
  std::vector<std::string> rels;
  for (const auto& r : u.relations) rels.push_back(relation_string(r, names, u.num_z()));
  std::vector<IntVec> td;
  if (!has_degenerate_vertex(a.initial_seed().matrix)) td = t_degrees(u);
  FiberAtZero fz = fiber_at_zero(u, join_ideal(a));
  if (c.json) {
    json doc;
    doc["u_rows"] = u.u_rows.to_rows();
    doc["relations"] = rels;
    doc["t_degrees"] = td;
    doc["fiber_at_zero"] = {{"all_generators", fz.all_generators}, {"both_sides_vanish", fz.both_sides_vanish}};
    out << doc.dump(2) << "\n";
    return;
  }
  out << "coefficient rows: " << u.p() << "\n";
  for (const auto& r : u.u_rows.to_rows()) out << "  " << to_string(r) << "\n";
  out << "relations: " << rels.size() << "\n";
  for (const auto& r : rels) out << "  " << r << "\n";
  if (td.empty()) {
    out << "t-degrees: undefined (isolated vertex)\n";
  } else {
    out << "t-degrees:\n";
    for (std::size_t i = 0; i < td.size(); ++i) out << "  t" << i + 1 << " " << to_string(td[i]) << "\n";
  }
  out << "fiber at t = 0: "
      << (fz.all_generators && fz.both_sides_vanish ? "the Stanley-Reisner ring" : "not the Stanley-Reisner ring")
      << "\n";
}

void cmd_t1(const Config& c, std::ostream& out) {
  Atlas a = load_atlas(c, false);
  Names names(a);
  const bool both = !c.invariant && !c.families;
  json doc;
  if (c.families || both) {
    auto fam = t1_degree_families(a);
    doc["families"] = json::array();
    for (const auto& f : fam)
      doc["families"].push_back({{"v", f.v + 1}, {"w", f.w + 1}, {"omega", ids_json(f.omega)}});
    if (!c.json) {
      out << "families: " << fam.size() << "\n";
      for (const auto& f : fam)
        out << "  b = " << names[f.v] << "*" << names[f.w] << ", a supported on " << names.face(f.omega) << "\n";
    }
  }
  if (c.invariant || both) {
    auto grading = find_strictly_positive_grading(a);
    if (!grading) throw InputError("invariant degrees need a strictly positive grading");
    auto inv = t1_invariant(a, grading);
    doc["invariant"] = json::array();
    for (const auto& p : inv) doc["invariant"].push_back({{"a", p.a}, {"b", p.b}});
    if (!c.json) {
      out << "invariant degrees: " << inv.size() << "\n";
      for (const auto& p : inv) out << "  " << names.monomial(p.a) << " / " << names.monomial(p.b) << "\n";
    }
  }
  if (c.json) out << doc.dump(2) << "\n";
}

json probe_json(const DerivationProbe& p, const Names& names) {
  return {{"v", p.v + 1}, {"variable", names[p.v]}, {"alpha", p.alpha}, {"exchangeable", p.exchangeable}};
}

int cmd_check(const Config& c, std::ostream& out) {
  Seed seed = resolve_seed(c.seed);
  if (c.repair) {
    if (c.property != "t1") throw InputError("--repair is only available for --property t1");
    seed = repair_t1(seed, c.max_seeds);
  }
  Atlas a = enumerate(seed, AtlasOptions{c.max_seeds, false});
  Names names(a);
  PropertyReport r;
  if (c.property == "t1") {
    r = check_t1(a, std::nullopt, std::nullopt, c.threads);
  } else {
    auto grading = find_strictly_positive_grading(a);
    if (!grading) throw InputError("no strictly positive grading: T0 and T0* need one");
    MonomialIdeal j = join_ideal(a);
    if (c.property == "t0") {
      r = check_t0(a, j, m_grading(seed.matrix), *grading);
    } else {
      UniversalData u = build_universal(a, c.max_seeds);
      r = check_t0_star(a, j, make_semigroup(u), *grading);
    }
  }
  json doc;
  doc["property"] = property_name(r.property);
  doc["holds"] = r.holds;
  if (c.repair) doc["repaired_seed"] = seed_to_json(seed);
  doc["witnesses"] = json::array();
  for (const auto& w : r.t1_witnesses)
    doc["witnesses"].push_back({{"seed", w.seed + 1}, {"column", w.j + 1}, {"w", w.w}, {"lambda", w.lambda}});
  for (const auto& p : r.derivation_witnesses) doc["witnesses"].push_back(probe_json(p, names));
  if (c.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << property_name(r.property) << ": " << (r.holds ? "holds" : "fails") << "\n";
    if (r.property == Property::t1) out << "matrices checked: " << r.matrices_checked << "\n";
    if (c.repair) out << "repaired seed: " << seed_to_json(seed).dump() << "\n";
    for (const auto& w : r.t1_witnesses)
      out << "  witness: seed " << w.seed + 1 << ", column " << w.j + 1 << ", w = " << to_string(w.w)
          << ", lambda = " << to_string(w.lambda) << "\n";
    for (const auto& p : r.derivation_witnesses)
      out << "  witness: " << names.monomial(p.alpha) << " d/d" << names[p.v]
          << (p.exchangeable ? " (exchangeable)" : "") << "\n";
  }
  return r.holds ? 0 : 1;
}

void cmd_cone(const Config& c, std::ostream& out) {
  Atlas a = load_atlas(c, false);
  UniversalData u = build_universal(a, c.max_seeds);
  GroebnerCone g = groebner_cone(u);
  if (c.json) {
    json doc;
    doc["ambient_dim"] = g.cone.ambient_dim;
    doc["lineality"] = json::array();
    for (const auto& v : g.cone.lineality) doc["lineality"].push_back(zvec_json(v));
    doc["rays"] = json::array();
    for (const auto& v : g.cone.rays) doc["rays"].push_back(zvec_json(v));
    doc["dual_generators"] = g.dual_generators;
    doc["simplicial_mod_lineality"] = g.simplicial_mod_lineality;
    doc["smooth_mod_lineality"] = g.smooth_mod_lineality;
    doc["interior_weight"] = g.interior_weight;
    out << doc.dump(2) << "\n";
    return;
  }
  out << "ambient dimension: " << g.cone.ambient_dim << "\n";
  out << "lineality: " << g.cone.lineality.size() << "\n";
  for (const auto& v : g.cone.lineality) out << "  " << zvec_string(v) << "\n";
  out << "rays: " << g.cone.rays.size() << "\n";
  for (const auto& v : g.cone.rays) out << "  " << zvec_string(v) << "\n";
  out << "dual generators: " << g.dual_generators.size() << "\n";
  for (const auto& v : g.dual_generators) out << "  " << to_string(v) << "\n";
  out << "simplicial mod lineality: " << (g.simplicial_mod_lineality ? "yes" : "no") << "\n";
  out << "smooth mod lineality: " << (g.smooth_mod_lineality ? "yes" : "no") << "\n";
  out << "interior weight: " << to_string(g.interior_weight) << "\n";
}

int cmd_lift(const Config& c, std::ostream& out) {
  Atlas a = load_atlas(c, c.verify);
  UniversalData u = build_universal(a, c.max_seeds);
  DeformationFamily f;
  try {
    f = lift(first_order(u), c.max_order);
  } catch (const ObstructedError& e) {
    out << (c.json ? json{{"obstructed", e.what()}}.dump(2) : std::string(e.what())) << "\n";
    return 1;
  }
  std::optional<FamilyReport> rep;
  if (c.verify) rep = verify_family(f, u);
  if (c.json) {
    json doc;
    doc["order"] = f.order;
    doc["generators"] = json::array();
    for (const auto& g : f.generators) doc["generators"].push_back(g.to_string(&f.ordering));
    doc["stats"] = json::array();
    for (const auto& s : f.stats)
      doc["stats"].push_back({{"order", s.order}, {"unknowns", s.unknowns}, {"equations", s.equations},
                              {"nullity", s.nullity}, {"corrections", s.corrections}, {"tie_broken", s.tie_broken},
                              {"greedy", s.greedy}});
    if (rep)
      doc["verify"] = {{"fiber", rep->fiber_ok},         {"laurent", rep->laurent_ok},
                       {"exchange", rep->exchange_ok},   {"equivariant", rep->equivariant_ok},
                       {"leading", rep->leading_ok},     {"extra_relations", rep->extra_relations},
                       {"failures", rep->failures}};
    out << doc.dump(2) << "\n";
  } else {
    out << "order: " << f.order << "\n";
    out << "generators: " << f.generators.size() << "\n";
    for (const auto& g : f.generators) out << "  " << g.to_string(&f.ordering) << "\n";
    if (rep) {
      auto yn = [](bool b) { return b ? "pass" : "FAIL"; };
      out << "verify:\n";
      out << "  t = 0 fiber is J: " << yn(rep->fiber_ok) << "\n";
      out << "  t = 1 vanishes on Laurent expansions: " << yn(rep->laurent_ok) << "\n";
      out << "  exchange generators match universal relations: " << yn(rep->exchange_ok) << " ("
          << rep->exchange_checked << " checked, " << rep->extra_relations << " extra relations)\n";
      out << "  T-equivariant: " << yn(rep->equivariant_ok) << "\n";
      out << "  leading terms: " << yn(rep->leading_ok) << "\n";
      for (const auto& m : rep->failures) out << "  " << m << "\n";
    }
  }
  return rep && !rep->ok() ? 1 : 0;
}

int cmd_demo(const Config& c, std::ostream& out) {
  Config d = c;
  d.json = false;
  out << "== cluster variables\n";
  cmd_enumerate(d, out);
  out << "\n== cluster complex\n";
  cmd_complex(d, out);
  out << "\n== universal coefficients\n";
  cmd_univ(d, out);
  out << "\n== Groebner cone\n";
  cmd_cone(d, out);
  int code = 0;
  for (std::string p : {"t1", "t0star"}) {
    out << "\n== property " << p << "\n";
    d.property = p;
    try {
      code = std::max(code, cmd_check(d, out));
    } catch (const InputError& e) {
      out << "not applicable: " << e.what() << "\n";
    }
  }
  out << "\n== lifted family\n";
  d.verify = true;
  code = std::max(code, cmd_lift(d, out));
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Stanley-Reisner degenerations and deformations of cluster algebras", "cluster-deform"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", c.json, "machine-readable output");
  app.add_option("--max-seeds", c.max_seeds, "seed budget for enumeration")->capture_default_str();
  app.add_option("--max-order", c.max_order, "order budget for lifting")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads for the T1 check")->capture_default_str()->check(
      CLI::PositiveNumber);

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("seed", c.seed, "bundled seed name or JSON seed file")->required();
    return s;
  };
  add("enumerate", "cluster variables, clusters and exchange relations");
  add("complex", "cluster complex with sphere and flag checks");
  add("sr-ideal", "Stanley-Reisner ideal of the cluster complex joined with the frozen simplex");
  CLI::App* grading = add("grading", "M-grading degrees");
  grading->add_flag("--find-positive", c.find_positive, "search a strictly positive grading");
  grading->add_flag("--add-frozen", c.add_frozen, "print a seed with added frozen rows that is positively graded");
  add("univ", "universal coefficients, relations and t-degrees");
  CLI::App* t1 = add("t1", "graded pieces of T^1 of the Stanley-Reisner ring");
  t1->add_flag("--invariant", c.invariant, "H-invariant degrees only");
  t1->add_flag("--families", c.families, "degree families only");
  CLI::App* check = add("check", "property check with witnesses; exit 1 when it fails");
  check->add_option("--property", c.property, "t0, t0star or t1")
      ->required()
      ->check(CLI::IsMember({"t0", "t0star", "t1"}));
  check->add_flag("--repair", c.repair, "add frozen rows until T1 holds, then check");
  add("cone", "Groebner cone whose initial ideal is the Stanley-Reisner ideal");
  CLI::App* lift_cmd = add("lift", "exchange-minimal equivariant deformation of the Stanley-Reisner ring");
  lift_cmd->add_flag("--verify", c.verify, "check fiber, Laurent vanishing and exchange relations; exit 1 on failure");
  CLI::App* demo = app.add_subcommand("demo", "run every stage on one seed (default a2)");
  c.seed = "a2";
  demo->add_option("seed", c.seed, "bundled seed name or JSON seed file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "enumerate") cmd_enumerate(c, out);
    else if (cmd == "complex") cmd_complex(c, out);
    else if (cmd == "sr-ideal") cmd_sr_ideal(c, out);
    else if (cmd == "grading") cmd_grading(c, out);
    else if (cmd == "univ") cmd_univ(c, out);
    else if (cmd == "t1") cmd_t1(c, out);
    else if (cmd == "check") return cmd_check(c, out);
    else if (cmd == "cone") cmd_cone(c, out);
    else if (cmd == "lift") return cmd_lift(c, out);
    else if (cmd == "demo") return cmd_demo(c, out);
    return 0;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "malformed JSON: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace cdf
