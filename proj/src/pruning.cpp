#include "prunix/pruning.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

#include "prunix/parallel.hpp"

namespace prunix {

RemovalRule::RemovalRule(GroundSet ground, Predicate removable, std::string name)
    : ground_(std::move(ground)), pred_(std::move(removable)), name_(std::move(name)) {}

ElementSet RemovalRule::removables(ElementSet current) const {
  ElementSet out;
  current.for_each([&](int e) {
    if (pred_(current, e)) out = out.with(e);
  });
  return out;
}

Graph::Graph(GroundSet v, std::vector<std::pair<int, int>> e) : vertices(std::move(v)), edges(std::move(e)) {
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertices.size() || b >= vertices.size()) {
      throw PreconditionError("edge endpoint is not a vertex");
    }
    if (a == b) throw PreconditionError("self loop at '" + vertices.label(a) + "'");
  }
}

std::vector<ElementSet> Graph::adjacency() const {
  std::vector<ElementSet> adj(static_cast<std::size_t>(vertices.size()));
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)] = adj[static_cast<std::size_t>(a)].with(b);
    adj[static_cast<std::size_t>(b)] = adj[static_cast<std::size_t>(b)].with(a);
  }
  return adj;
}

Hypergraph::Hypergraph(GroundSet v, std::vector<ElementSet> e) : vertices(std::move(v)), edges(std::move(e)) {
  for (ElementSet edge : edges) {
    if (edge.empty()) throw PreconditionError("empty hyperedge");
    if (!edge.subset_of(vertices.full())) throw PreconditionError("hyperedge outside the vertex set");
  }
}

namespace {

std::vector<std::vector<std::string>> tokenize_lines(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (words >> tok) tokens.push_back(tok);
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

// Labels sorted numerically when all are integers, lexicographically
// otherwise, so indices do not depend on line order.
GroundSet sorted_labels(const std::vector<std::vector<std::string>>& lines) {
  std::set<std::string> unique;
  for (const auto& l : lines) unique.insert(l.begin(), l.end());
  std::vector<std::string> labels(unique.begin(), unique.end());
  const bool numeric = std::all_of(labels.begin(), labels.end(), [](const std::string& t) {
    return t.size() < 10 && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  });
  if (numeric) {
    std::sort(labels.begin(), labels.end(),
              [](const std::string& a, const std::string& b) { return std::stol(a) < std::stol(b); });
  }
  return GroundSet(std::move(labels));
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  auto lines = tokenize_lines(text);
  GroundSet v = sorted_labels(lines);
  std::vector<std::pair<int, int>> edges;
  for (const auto& l : lines) {
    if (l.size() != 2) throw ParseError("edge lines need exactly two labels");
    if (l[0] == l[1]) throw ParseError("self loop at '" + l[0] + "'");
    edges.emplace_back(v.index(l[0]), v.index(l[1]));
  }
  return Graph(std::move(v), std::move(edges));
}

Hypergraph parse_hyperedge_list(std::string_view text) {
  auto lines = tokenize_lines(text);
  GroundSet v = sorted_labels(lines);
  std::vector<ElementSet> edges;
  for (const auto& l : lines) {
    ElementSet e;
    for (const auto& t : l) {
      int i = v.index(t);
      if (e.contains(i)) throw ParseError("repeated vertex '" + t + "' in a hyperedge");
      e = e.with(i);
    }
    edges.push_back(e);
  }
  return Hypergraph(std::move(v), std::move(edges));
}

RemovalRule kcore_rule(const Graph& g, int k) {
  if (k < 1) throw PreconditionError("kcore_rule needs k >= 1");
  auto adj = g.adjacency();
  return RemovalRule(
      g.vertices,
      [adj = std::move(adj), k](ElementSet current, int v) {
        return (adj[static_cast<std::size_t>(v)] & current).size() < k;
      },
      "kcore:" + std::to_string(k));
}

RemovalRule leaf_rule(const Graph& g) {
  RemovalRule r = kcore_rule(g, 2);
  return RemovalRule(r.ground(), [r](ElementSet c, int v) { return r.removable(c, v); }, "leaf");
}

RemovalRule identifiable_rule(const Hypergraph& h) {
  std::vector<std::vector<ElementSet>> others(static_cast<std::size_t>(h.vertices.size()));
  for (ElementSet edge : h.edges) {
    edge.for_each([&](int v) { others[static_cast<std::size_t>(v)].push_back(edge.without(v)); });
  }
  return RemovalRule(
      h.vertices,
      [others = std::move(others)](ElementSet current, int v) {
        for (ElementSet rest : others[static_cast<std::size_t>(v)]) {
          if (!rest.intersects(current)) return true;
        }
        return false;
      },
      "identifiable");
}

RemovalRule circuit_rule(std::vector<RootedSet> rooted, const GroundSet& ground) {
  std::vector<std::vector<ElementSet>> by_root(static_cast<std::size_t>(ground.size()));
  for (const auto& r : rooted) by_root.at(static_cast<std::size_t>(r.root)).push_back(r.set.without(r.root));
  return RemovalRule(
      ground,
      [by_root = std::move(by_root)](ElementSet current, int e) {
        for (ElementSet rest : by_root[static_cast<std::size_t>(e)]) {
          if (rest.subset_of(current)) return false;
        }
        return true;
      },
      "circuits");
}

RemovalRule path_rule(std::vector<RootedSet> paths, const GroundSet& ground) {
  std::vector<std::vector<ElementSet>> by_root(static_cast<std::size_t>(ground.size()));
  for (const auto& p : paths) by_root.at(static_cast<std::size_t>(p.root)).push_back(p.set.without(p.root));
  return RemovalRule(
      ground,
      [by_root = std::move(by_root)](ElementSet current, int e) {
        for (ElementSet rest : by_root[static_cast<std::size_t>(e)]) {
          if (!rest.intersects(current)) return true;
        }
        return false;
      },
      "paths");
}

RemovalRule rule_from_spec(std::string_view spec, const Hypergraph& h) {
  if (spec == "identifiable") return identifiable_rule(h);
  auto as_graph = [&] {
    std::vector<std::pair<int, int>> edges;
    for (ElementSet e : h.edges) {
      if (e.size() != 2) throw ParseError("rule '" + std::string(spec) + "' needs a graph (two labels per line)");
      auto ends = e.elements();
      edges.emplace_back(ends[0], ends[1]);
    }
    return Graph(h.vertices, std::move(edges));
  };
  if (spec == "leaf") return leaf_rule(as_graph());
  if (spec.starts_with("kcore:")) {
    auto digits = spec.substr(6);
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || k < 1) {
      throw ParseError("bad k in rule '" + std::string(spec) + "'");
    }
    return kcore_rule(as_graph(), k);
  }
  throw ParseError("unknown rule '" + std::string(spec) + "' (expected leaf, kcore:K or identifiable)");
}

namespace {

void require_enumerable(const RemovalRule& rule, int limit, const char* what) {
  if (rule.ground().size() > limit) {
    throw LimitError(std::string(what) + ": n = " + std::to_string(rule.ground().size()) + " exceeds " +
                     std::to_string(limit));
  }
}

}  // namespace

SetFamily reachable_sets(const RemovalRule& rule) {
  require_enumerable(rule, kMaxEnumeration, "reachable_sets");
  const ElementSet top = rule.ground().full();
  std::vector<bool> seen(std::size_t{1} << rule.ground().size(), false);
  std::vector<ElementSet> out{top};
  std::deque<ElementSet> queue{top};
  seen[top.bits()] = true;
  while (!queue.empty()) {
    ElementSet s = queue.front();
    queue.pop_front();
    rule.removables(s).for_each([&](int e) {
      ElementSet t = s.without(e);
      if (!seen[t.bits()]) {
        seen[t.bits()] = true;
        out.push_back(t);
        queue.push_back(t);
      }
    });
  }
  return SetFamily(rule.ground(), std::move(out));
}

AxiomReport is_pruning_process(const RemovalRule& rule) {
  // A witness along any longer path implies one at its first failing step,
  // so single removals suffice.
  SetFamily reach = reachable_sets(rule);
  const auto& states = reach.members();
  auto step_witness = [&](std::size_t i) -> std::optional<std::pair<int, int>> {
    const ElementSet s = states[i];
    const ElementSet can = rule.removables(s);
    std::optional<std::pair<int, int>> found;
    can.for_each([&](int x) {
      if (found) return;
      const ElementSet t = s.without(x);
      (can.without(x)).for_each([&](int e) {
        if (!found && !rule.removable(t, e)) found = std::pair{x, e};
      });
    });
    return found;
  };
  AxiomReport report;
  if (auto i = find_first(states.size(), [&](std::size_t i) { return step_witness(i).has_value(); })) {
    auto [x, e] = *step_witness(*i);
    const ElementSet s = states[*i];
    const GroundSet& g = rule.ground();
    report.violations.push_back({"pruning", {s, s.without(x)}, {}, {e},
                                 g.label(e) + " is removable from " + g.format(s) + " but not from " +
                                     g.format(s.without(x)) + " after removing " + g.label(x)});
  }
  return report;
}

std::vector<SimpleWord> removal_words(const RemovalRule& rule, std::size_t max_len) {
  require_enumerable(rule, 12, "removal_words");
  std::vector<SimpleWord> out;
  std::vector<std::pair<SimpleWord, ElementSet>> stack{{SimpleWord{}, rule.ground().full()}};
  while (!stack.empty()) {
    auto [w, state] = std::move(stack.back());
    stack.pop_back();
    if (w.size() < max_len) {
      rule.removables(state).for_each([&](int e) { stack.emplace_back(w.extended(e), state.without(e)); });
    }
    out.push_back(std::move(w));
    if (out.size() > kMaxWords) throw LimitError("removal_words: more than " + std::to_string(kMaxWords) + " words");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PruningTrace> trace_word(const RemovalRule& rule, const SimpleWord& word) {
  PruningTrace trace{word, {rule.ground().full()}};
  for (int e : word.letters()) {
    const ElementSet cur = trace.states.back();
    if (!cur.contains(e) || !rule.removable(cur, e)) return std::nullopt;
    trace.states.push_back(cur.without(e));
  }
  return trace;
}

ElementSet tau_min_reachable(const RemovalRule& rule, ElementSet keep, std::span<const int> priority) {
  ElementSet cur = rule.ground().full();
  for (;;) {
    bool moved = false;
    for (int e : priority) {
      if (cur.contains(e) && !keep.contains(e) && rule.removable(cur, e)) {
        cur = cur.without(e);
        moved = true;
        break;
      }
    }
    if (!moved) return cur;
  }
}

ElementSet tau_min_reachable(const RemovalRule& rule, ElementSet keep) {
  const int n = rule.ground().size();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  ElementSet first = tau_min_reachable(rule, keep, order);
  std::reverse(order.begin(), order.end());
  ElementSet last = tau_min_reachable(rule, keep, order);
  if (first != last) {
    const GroundSet& g = rule.ground();
    throw NonUniqueError(first, last,
                         "greedy runs keeping " + g.format(keep) + " end in " + g.format(first) + " and " +
                             g.format(last) + "; the rule is not a pruning process");
  }
  return first;
}

SetFamily greedy_outcomes(const RemovalRule& rule, ElementSet keep) {
  require_enumerable(rule, kMaxEnumeration, "greedy_outcomes");
  const ElementSet top = rule.ground().full();
  std::vector<bool> seen(std::size_t{1} << rule.ground().size(), false);
  std::vector<ElementSet> terminal;
  std::vector<ElementSet> stack{top};
  seen[top.bits()] = true;
  while (!stack.empty()) {
    ElementSet s = stack.back();
    stack.pop_back();
    ElementSet moves = rule.removables(s) - keep;
    if (moves.empty()) terminal.push_back(s);
    moves.for_each([&](int e) {
      ElementSet t = s.without(e);
      if (!seen[t.bits()]) {
        seen[t.bits()] = true;
        stack.push_back(t);
      }
    });
  }
  return SetFamily(rule.ground(), std::move(terminal));
}

AxiomReport check_unique_minimal(const RemovalRule& rule) {
  require_enumerable(rule, 12, "check_unique_minimal");
  AxiomReport report;
  const std::size_t count = std::size_t{1} << rule.ground().size();
  auto outcomes_of = [&](std::size_t b) { return greedy_outcomes(rule, ElementSet(static_cast<ElementSet::Bits>(b))); };
  if (auto b = find_first(count, [&](std::size_t b) { return outcomes_of(b).size() != 1; })) {
    const ElementSet keep(static_cast<ElementSet::Bits>(*b));
    SetFamily outs = outcomes_of(*b);
    const GroundSet& g = rule.ground();
    report.violations.push_back({"unique-minimal", {keep, outs.members()[0], outs.members()[1]}, {}, {},
                                 "greedy runs keeping " + g.format(keep) + " end in " +
                                     std::to_string(outs.size()) + " different sets, e.g. " +
                                     g.format(outs.members()[0]) + " and " + g.format(outs.members()[1])});
  }
  return report;
}

std::vector<ElementSet> precedences(const RemovalRule& rule, int x) {
  require_enumerable(rule, 16, "precedences");
  const ElementSet top = rule.ground().full();
  const ElementSet others = top.without(x);
  std::vector<ElementSet> candidates;
  for (ElementSet::Bits b = 0; b <= others.bits(); ++b) {
    ElementSet a(b);
    if (a.subset_of(others)) candidates.push_back(a);
  }
  std::sort(candidates.begin(), candidates.end(), CanonicalLess{});
  std::vector<ElementSet> minimal;
  for (ElementSet a : candidates) {
    if (!rule.removable(top - a, x)) continue;
    bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](ElementSet m) { return m.subset_of(a); });
    if (!dominated) minimal.push_back(a);
  }
  return minimal;
}

}  // namespace prunix
