#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "prunix/core_sets.hpp"
#include "prunix/geometry.hpp"
#include "prunix/lattice.hpp"
#include "prunix/parallel.hpp"
#include "prunix/partition_identity.hpp"
#include "prunix/pruning.hpp"
#include "prunix/sat.hpp"

namespace prunix::cli {
namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct Options {
  bool json_out = false;
  unsigned threads = 0;
  std::string out_path;

  // check
  std::string mode = "axioms";
  std::string family_path;
  std::string words_path;
  int trials = 20;
  std::uint64_t seed = 1;

  // generate
  std::string kind;
  std::string rooted_path;
  std::string paths_path;
  std::string ground_labels;

  // closure
  std::string set_text;
  bool excludable_only = false;
  bool phi_only = false;

  // identity / sample
  std::string p_text;
  std::string weights_path;
  bool exact = false;
  std::size_t count = 10;
  std::string fn = "one";

  // lattice
  int k = 0;
  bool labels = false;

  // prune
  std::string graph_path;
  std::string hypergraph_path;
  std::string rule = "leaf";
  std::string element;
  std::size_t max_len = 0;
  bool max_len_given = false;

  // sat
  std::string cnf_path;
  std::string assign;
  std::string assign2;
  bool dot = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + o.out_path + "'");
  file << text;
}

std::string fixed12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json report_json(const AxiomReport& r, const GroundSet& g) {
  json arr = json::array();
  for (const auto& v : r.violations) {
    json item;
    item["axiom"] = v.axiom;
    item["detail"] = v.detail;
    json sets = json::array();
    for (ElementSet s : v.sets) sets.push_back(g.format(s));
    item["sets"] = sets;
    json words = json::array();
    for (const auto& w : v.words) words.push_back(format_word(g, w));
    item["words"] = words;
    json elements = json::array();
    for (int e : v.elements) elements.push_back(g.label(e));
    item["elements"] = elements;
    arr.push_back(std::move(item));
  }
  return {{"holds", r.holds()}, {"violations", arr}};
}

int verdict(const std::string& name, const AxiomReport& r, const GroundSet& g, const Options& o, std::ostream& out,
            std::ostream& err) {
  if (o.json_out) {
    json doc = report_json(r, g);
    doc["property"] = name;
    out << doc.dump() << '\n';
  } else {
    out << name << ": " << yes_no(r.holds()) << '\n';
  }
  if (!r.holds()) err << describe(r) << '\n';
  return r.holds() ? kOk : kFalse;
}

SetFamily load_family(const Options& o) {
  if (o.family_path.empty()) throw ParseError("--family is required");
  return parse_family(read_file(o.family_path));
}

WeightVector load_weights(const Options& o, const GroundSet& g) {
  if (!o.weights_path.empty()) return parse_weights_json(read_file(o.weights_path), g);
  if (o.p_text.empty()) throw ParseError("weights are required (--p or --weights)");
  return parse_weights(o.p_text, g);
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.words_path.empty()) {
    WordList wl = parse_words(read_file(o.words_path));
    return verdict("antimatroid", check_antimatroid_words(wl.words, wl.ground), wl.ground, o, out, err);
  }
  SetFamily f = load_family(o);
  if (o.mode == "axioms") return verdict("convex geometry", check_convex_geometry(f), f.ground(), o, out, err);
  if (o.mode == "partition") return verdict("interval partition", verify_interval_partition(f), f.ground(), o, out, err);
  if (o.mode == "classify") {
    Classification c = classify(f, o.trials, o.seed);
    if (o.json_out) {
      out << json{{"is_geometry", c.is_geometry},
                  {"is_partition", c.is_partition},
                  {"identity_holds", c.identity_holds},
                  {"agree", c.agree()}}
                 .dump()
          << '\n';
    } else {
      out << "convex geometry: " << yes_no(c.is_geometry) << '\n'
          << "interval partition: " << yes_no(c.is_partition) << '\n'
          << "identity: " << yes_no(c.identity_holds) << '\n'
          << "agree: " << yes_no(c.agree()) << '\n';
    }
    if (!c.agree()) err << "the three verdicts disagree\n";
    return c.is_geometry && c.agree() ? kOk : kFalse;
  }
  throw ParseError("unknown --mode '" + o.mode + "' (axioms, partition, classify)");
}

int cmd_generate(const Options& o, std::ostream& out) {
  std::string text;
  if (o.kind == "circuits" || o.kind == "full") {
    if (o.rooted_path.empty()) throw ParseError("--rooted is required");
    RootedList r = parse_rooted(read_file(o.rooted_path), "rooted");
    SetFamily f = o.kind == "full" ? full_sets(r.sets, r.ground) : generate_from_circuits(r.sets, r.ground).family();
    text = serialize_family(f);
  } else if (o.kind == "paths") {
    if (o.paths_path.empty()) throw ParseError("--paths is required");
    RootedList r = parse_rooted(read_file(o.paths_path), "paths");
    text = serialize_family(generate_from_paths(r.sets, r.ground).family());
  } else if (o.kind == "rooted-circuits") {
    ConvexGeometry g(load_family(o));
    auto circuits = rooted_circuits(g);
    text = serialize_rooted(g.ground(), circuits, "rooted");
  } else if (o.kind == "dual") {
    text = serialize_family(dual(load_family(o)));
  } else if (o.kind == "boolean") {
    GroundSet g(o.ground_labels.empty() ? std::vector<std::string>{} : [&] {
      std::vector<std::string> labels;
      std::stringstream ss(o.ground_labels);
      std::string item;
      while (std::getline(ss, item, ',')) labels.push_back(item);
      return labels;
    }());
    text = serialize_family(boolean_lattice(g));
  } else {
    throw ParseError("unknown generate kind '" + o.kind + "'");
  }
  emit(text + "\n", o, out);
  return kOk;
}

int cmd_closure(const Options& o, std::ostream& out) {
  SetFamily f = load_family(o);
  ElementSet a = f.ground().parse_set(o.set_text);
  ElementSet result;
  if (o.excludable_only) {
    result = excludable(f, a);
  } else if (o.phi_only) {
    result = phi(f, a);
  } else {
    result = ConvexGeometry(f).closure(a);
  }
  if (o.json_out) {
    out << json{{"input", f.ground().labels_of(a)}, {"result", f.ground().labels_of(result)}}.dump() << '\n';
  } else {
    out << f.ground().format(result) << '\n';
  }
  return kOk;
}

int cmd_identity(const Options& o, std::ostream& out) {
  SetFamily f = load_family(o);
  if (o.exact) {
    if (o.p_text.empty()) throw ParseError("--exact needs --p");
    Rational v = identity_sum_exact(f, parse_exact_weights(o.p_text, f.ground()));
    out << v.str() << '\n';
    return v == 1 ? kOk : kFalse;
  }
  double v = identity_sum(f, load_weights(o, f.ground()));
  if (o.json_out) {
    out << json{{"sum", v}}.dump() << '\n';
  } else {
    out << fixed12(v) << '\n';
  }
  return std::abs(v - 1.0) < 1e-12 ? kOk : kFalse;
}

int cmd_sample(const Options& o, std::ostream& out) {
  SetFamily f = load_family(o);
  const GroundSet& g = f.ground();
  WeightVector w = load_weights(o, g);
  if (o.kind == "pi1") {
    Rng rng(o.seed);
    for (std::size_t i = 0; i < o.count; ++i) out << g.format(sample_pi1(w, rng)) << '\n';
    return kOk;
  }
  ConvexGeometry geo(f);
  if (o.kind == "pi2") {
    Distribution d = pi2_exact(geo, w);
    for (std::size_t i = 0; i < d.support.size(); ++i) {
      out << g.format(d.support.members()[i]) << ' ' << fixed12(d.prob[i]) << '\n';
    }
    if (o.count > 0) {
      Distribution emp = pi2_empirical(geo, w, o.count, o.seed);
      out << "total variation (" << o.count << " closure samples): " << fixed12(total_variation(d, emp)) << '\n';
    }
    return kOk;
  }
  if (o.kind == "expect") {
    std::function<double(ElementSet)> fn;
    if (o.fn == "one") {
      fn = [](ElementSet) { return 1.0; };
    } else if (o.fn == "size") {
      fn = [&](ElementSet d) { return static_cast<double>(geo.closure(d).size()); };
    } else if (o.fn == "top") {
      fn = [&](ElementSet d) { return geo.closure(d) == g.full() ? 1.0 : 0.0; };
    } else {
      throw ParseError("unknown --fn '" + o.fn + "' (one, size, top)");
    }
    auto [lhs, rhs] = expectation_check(geo, w, fn);
    out << "pi1: " << fixed12(lhs) << "\npi2: " << fixed12(rhs) << '\n';
    return std::abs(lhs - rhs) < 1e-12 ? kOk : kFalse;
  }
  throw ParseError("unknown sample kind '" + o.kind + "' (pi1, pi2, expect)");
}

int cmd_lattice(const Options& o, std::ostream& out, std::ostream& err) {
  SetFamily f = load_family(o);
  const bool geometry = check_convex_geometry(f).holds();
  ClosedSetLattice l = geometry ? build_lattice(ConvexGeometry(f, ConvexGeometry::Unchecked{})) : build_lattice(f);
  if (o.kind == "dot") {
    emit(export_dot(l, o.labels), o, out);
    return kOk;
  }
  if (o.kind != "props") throw ParseError("unknown lattice kind '" + o.kind + "' (props, dot)");
  std::vector<std::pair<std::string, AxiomReport>> props;
  props.emplace_back("meet-distributive", is_meet_distributive(l));
  props.emplace_back("distributive", is_distributive(l));
  if (o.k > 0) props.emplace_back(std::to_string(o.k) + "-distributive", is_k_distributive(l, o.k));
  bool all = true;
  json doc = json::object();
  doc["elements"] = l.size();
  doc["covers"] = l.covers().size();
  if (!o.json_out) out << "elements: " << l.size() << "\ncovers: " << l.covers().size() << '\n';
  for (auto& [name, r] : props) {
    all = all && r.holds();
    if (o.json_out) {
      doc[name] = report_json(r, f.ground());
    } else {
      out << name << ": " << yes_no(r.holds()) << '\n';
    }
    if (!r.holds()) err << describe(r) << '\n';
  }
  if (o.json_out) out << doc.dump() << '\n';
  return all ? kOk : kFalse;
}

int cmd_prune(const Options& o, std::ostream& out, std::ostream& err) {
  std::string path = !o.graph_path.empty() ? o.graph_path : o.hypergraph_path;
  if (path.empty()) throw ParseError("--graph or --hypergraph is required");
  Hypergraph h = parse_hyperedge_list(read_file(path));
  RemovalRule rule = rule_from_spec(o.rule, h);
  const GroundSet& g = rule.ground();
  if (o.kind == "check") return verdict("pruning process", is_pruning_process(rule), g, o, out, err);
  if (o.kind == "reachable") {
    SetFamily f = reachable_sets(rule);
    if (o.json_out) {
      emit(serialize_family(f) + "\n", o, out);
    } else {
      std::string text;
      for (ElementSet s : f) text += g.format(s) + '\n';
      emit(text, o, out);
    }
    return kOk;
  }
  if (o.kind == "tau") {
    out << g.format(tau_min_reachable(rule, g.parse_set(o.set_text))) << '\n';
    return kOk;
  }
  if (o.kind == "run") {
    ElementSet cur = g.full();
    std::vector<int> word;
    for (;;) {
      ElementSet can = rule.removables(cur);
      if (can.empty()) break;
      word.push_back(can.first());
      cur = cur.without(can.first());
    }
    out << "word: " << format_word(g, SimpleWord(word)) << "\nresult: " << g.format(cur) << '\n';
    return kOk;
  }
  if (o.kind == "words") {
    std::size_t len = o.max_len_given ? o.max_len : static_cast<std::size_t>(g.size());
    for (const auto& w : removal_words(rule, len)) out << format_word(g, w) << '\n';
    return kOk;
  }
  if (o.kind == "precedences") {
    if (o.element.empty()) throw ParseError("--element is required");
    for (ElementSet a : precedences(rule, g.index(o.element))) out << g.format(a) << '\n';
    return kOk;
  }
  throw ParseError("unknown prune kind '" + o.kind + "' (check, reachable, tau, run, words, precedences)");
}

json classification_json(const VarClassification& c) {
  auto ids = [](const std::vector<int>& v) {
    json arr = json::array();
    for (int i : v) arr.push_back(i + 1);
    return arr;
  };
  return {{"stars", ids(c.stars)}, {"unconstrained", ids(c.unconstrained)}, {"constrained", ids(c.constrained)}};
}

int cmd_sat(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.cnf_path.empty()) throw ParseError("--cnf is required");
  CnfFormula f = parse_dimacs(read_file(o.cnf_path));
  if (o.assign.empty()) throw ParseError("--assign is required");
  PartialAssignment a = PartialAssignment::parse(o.assign);
  if (a.size() != f.num_vars) throw ParseError("assignment length does not match the formula");
  auto var_list = [](const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
    return s + "}";
  };

  if (o.kind == "validity") {
    Validity v = is_valid(f, a);
    if (o.json_out) {
      json doc{{"valid", v.valid}};
      if (v.clause) doc["clause"] = *v.clause + 1;
      out << doc.dump() << '\n';
    } else {
      out << (v.valid ? "valid" : "invalid") << '\n';
    }
    if (!v.valid) err << "clause " << *v.clause + 1 << " is violated\n";
    return v.valid ? kOk : kFalse;
  }
  if (o.kind == "classify") {
    VarClassification c = classify_vars(f, a);
    if (o.json_out) {
      out << classification_json(c).dump() << '\n';
    } else {
      out << "stars: " << var_list(c.stars) << "\nunconstrained: " << var_list(c.unconstrained)
          << "\nconstrained: " << var_list(c.constrained) << "\nnumeric: " << var_list(c.numeric) << '\n';
    }
    return kOk;
  }
  if (o.kind == "poset") {
    SatPoset p = poset_below(f, a);
    if (o.dot) {
      emit(export_dot(build_lattice(ConvexGeometry(p.support_family(), ConvexGeometry::Unchecked{})), true), o, out);
      return kOk;
    }
    if (o.json_out) {
      json doc;
      json assignments = json::array();
      json classes = json::array();
      for (const auto& b : p.members) {
        assignments.push_back(b.str());
        classes.push_back(classification_json(classify_vars(f, b)));
      }
      json covers = json::array();
      for (const auto& c : p.covers) {
        covers.push_back({{"upper", p.members[c.upper].str()}, {"lower", p.members[c.lower].str()}, {"var", c.var + 1}});
      }
      doc["assignments"] = assignments;
      doc["covers"] = covers;
      doc["classifications"] = classes;
      emit(doc.dump() + "\n", o, out);
    } else {
      std::string text;
      for (std::size_t i = 0; i < p.members.size(); ++i) {
        text += p.members[i].str() + "  N=" + p.ground.format(p.supports[i]) + '\n';
      }
      for (const auto& c : p.covers) {
        text += p.members[c.upper].str() + " -> " + p.members[c.lower].str() + " [" + std::to_string(c.var + 1) + "]\n";
      }
      emit(text, o, out);
    }
    return kOk;
  }
  if (o.kind == "geometry") {
    ConvexGeometry g = geometry_from_assignment(f, a);
    emit(serialize_family(g.family()) + "\n", o, out);
    return kOk;
  }
  if (o.kind == "identity") {
    if (o.p_text.empty()) throw ParseError("--p is required");
    WeightVector w = parse_weights(o.p_text, GroundSet::numbered(f.num_vars));
    double v = verify_sat_identity(f, a, w);
    out << fixed12(v) << '\n';
    return std::abs(v - 1.0) < 1e-12 ? kOk : kFalse;
  }
  if (o.kind == "core") {
    out << core(f, a, o.seed).str() << '\n';
    return kOk;
  }
  if (o.kind == "intersect") {
    if (o.assign2.empty()) throw ParseError("--with is required");
    PartialAssignment b = PartialAssignment::parse(o.assign2);
    if (b.size() != f.num_vars) throw ParseError("assignment length does not match the formula");
    IntersectionWitness w = geometry_intersection_witness(f, a, b);
    out << "pattern: " << w.pattern.str() << "\nc: " << w.c.str() << "\nintersection is G(F,c): " << yes_no(w.check)
        << '\n';
    return w.check ? kOk : kFalse;
  }
  throw ParseError("unknown sat kind '" + o.kind + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"prunix: convex geometries, pruning processes and partial assignments", "prunix"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json_out, "Machine-readable output");
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  auto* check = app.add_subcommand("check", "Axiom, partition and classifier verdicts");
  check->add_option("--family", o.family_path, "Set-family JSON");
  check->add_option("--words", o.words_path, "Word-list JSON (antimatroid axioms)");
  check->add_option("--mode", o.mode, "axioms | partition | classify");
  check->add_option("--trials", o.trials, "Random weight vectors for classify");
  check->add_option("--seed", o.seed);

  auto* generate = app.add_subcommand("generate", "Build a family");
  generate->add_option("kind", o.kind, "circuits | paths | full | rooted-circuits | dual | boolean")->required();
  generate->add_option("--rooted", o.rooted_path, "Rooted-set JSON (key \"rooted\")");
  generate->add_option("--paths", o.paths_path, "Rooted-set JSON (key \"paths\")");
  generate->add_option("--family", o.family_path);
  generate->add_option("--ground", o.ground_labels, "Comma-separated labels");
  generate->add_option("--out", o.out_path);

  auto* closure_cmd = app.add_subcommand("closure", "Closure, excludable set or interval map of a set");
  closure_cmd->add_option("--family", o.family_path)->required();
  closure_cmd->add_option("--set", o.set_text, "e.g. a,f,g")->required();
  closure_cmd->add_flag("--excludable", o.excludable_only);
  closure_cmd->add_flag("--phi", o.phi_only);

  auto* identity = app.add_subcommand("identity", "Evaluate the weight identity");
  identity->add_option("--family", o.family_path)->required();
  identity->add_option("--p", o.p_text, "e.g. a=0.3,b=1/2");
  identity->add_option("--weights", o.weights_path, "Weights JSON {\"p\":{...}}");
  identity->add_flag("--exact", o.exact, "Exact rational arithmetic");

  auto* sample = app.add_subcommand("sample", "Product distribution and its closure pushforward");
  sample->add_option("kind", o.kind, "pi1 | pi2 | expect")->required();
  sample->add_option("--family", o.family_path)->required();
  sample->add_option("--p", o.p_text);
  sample->add_option("--weights", o.weights_path);
  sample->add_option("--seed", o.seed);
  sample->add_option("--count", o.count, "Number of samples");
  sample->add_option("--fn", o.fn, "one | size | top (for expect)");

  auto* lattice = app.add_subcommand("lattice", "Lattice properties and DOT export");
  lattice->add_option("kind", o.kind, "props | dot")->required();
  lattice->add_option("--family", o.family_path)->required();
  lattice->add_option("--k", o.k, "Also test k-distributivity");
  lattice->add_flag("--labels", o.labels, "Label DOT edges");
  lattice->add_option("--out", o.out_path);

  auto* prune = app.add_subcommand("prune", "Removal processes on graphs and hypergraphs");
  prune->add_option("kind", o.kind, "check | reachable | tau | run | words | precedences")->required();
  prune->add_option("--graph", o.graph_path, "Edge list");
  prune->add_option("--hypergraph", o.hypergraph_path, "Hyperedge list");
  prune->add_option("--rule", o.rule, "leaf | kcore:K | identifiable");
  prune->add_option("--set", o.set_text, "Elements to keep (tau)");
  prune->add_option("--element", o.element);
  auto* max_len = prune->add_option("--max-len", o.max_len);
  prune->add_option("--out", o.out_path);

  auto* sat = app.add_subcommand("sat", "Partial assignments of CNF formulas");
  sat->add_option("kind", o.kind, "validity | classify | poset | geometry | identity | core | intersect")->required();
  sat->add_option("--cnf", o.cnf_path)->required();
  sat->add_option("--assign", o.assign, "e.g. 1111 or 1,*,*,1");
  sat->add_option("--with", o.assign2, "Second assignment (intersect)");
  sat->add_option("--p", o.p_text, "e.g. 1=0.3,2=0.5,...");
  sat->add_option("--seed", o.seed);
  sat->add_flag("--dot", o.dot, "DOT export of the poset");
  sat->add_option("--out", o.out_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  o.max_len_given = max_len->count() > 0;
  set_worker_count(o.threads);

  try {
    if (check->parsed()) return cmd_check(o, out, err);
    if (generate->parsed()) return cmd_generate(o, out);
    if (closure_cmd->parsed()) return cmd_closure(o, out);
    if (identity->parsed()) return cmd_identity(o, out);
    if (sample->parsed()) return cmd_sample(o, out);
    if (lattice->parsed()) return cmd_lattice(o, out, err);
    if (prune->parsed()) return cmd_prune(o, out, err);
    if (sat->parsed()) return cmd_sat(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace prunix::cli
