#pragma once

// Generators and brute-force oracles shared by the unit, property and
// acceptance tests. The oracles deliberately avoid the library's own
// algorithms: they work from definitions by exhaustive search.

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prunix/core_sets.hpp"
#include "prunix/geometry.hpp"
#include "prunix/partition_identity.hpp"
#include "prunix/pruning.hpp"
#include "prunix/rng.hpp"
#include "prunix/sat.hpp"

#ifndef PRUNIX_TEST_DATA
#define PRUNIX_TEST_DATA "tests/data"
#endif

namespace prunix::testing {

inline std::string data_path(const std::string& name) { return std::string(PRUNIX_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- generators -----------------------------------------------------------

inline ElementSet random_subset(int n, Rng& rng, double density = 0.5) {
  ElementSet s;
  for (int i = 0; i < n; ++i) {
    if (rng.coin(density)) s = s.with(i);
  }
  return s;
}

// `count` rooted sets with sizes in [min_size, max_size].
inline std::vector<RootedSet> random_rooted(int n, int count, int min_size, int max_size, Rng& rng) {
  std::vector<RootedSet> out;
  max_size = std::min(max_size, n);
  if (max_size < min_size) return out;
  for (int c = 0; c < count; ++c) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    rng.shuffle(std::span<int>(idx));
    const int size = rng.range(min_size, max_size);
    ElementSet s;
    for (int i = 0; i < size; ++i) s = s.with(idx[static_cast<std::size_t>(i)]);
    out.emplace_back(s, idx[static_cast<std::size_t>(rng.range(0, size - 1))]);
  }
  return out;
}

inline ConvexGeometry random_circuit_geometry(int n, Rng& rng, int max_size = 4, int max_count = 4) {
  GroundSet g = GroundSet::letters(n);
  auto rooted = random_rooted(n, rng.range(0, max_count), 2, std::max(2, max_size), rng);
  return generate_from_circuits(rooted, g);
}

// One or two paths per element; every element owns at least one.
inline std::vector<RootedSet> random_paths(int n, Rng& rng) {
  std::vector<RootedSet> out;
  for (int e = 0; e < n; ++e) {
    const int count = rng.range(1, 2);
    for (int c = 0; c < count; ++c) out.emplace_back(random_subset(n, rng, 0.3).with(e), e);
  }
  return out;
}

inline SetFamily random_family(int n, Rng& rng, bool with_top = true) {
  std::vector<ElementSet> members;
  const int count = rng.range(1, 1 << n);
  for (int i = 0; i < count; ++i) members.push_back(random_subset(n, rng));
  if (with_top) members.push_back(ElementSet::prefix(n));
  return SetFamily(GroundSet::letters(n), members);
}

inline Graph random_graph(int n, double edge_p, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.coin(edge_p)) edges.emplace_back(u, v);
    }
  }
  return Graph(GroundSet::letters(n), edges);
}

inline Graph fixture_graph() { return parse_edge_list(read_data("leaf_tree.edges")); }

inline CnfFormula sat_example() { return parse_dimacs(read_data("sat_example.cnf")); }

// ---- oracles --------------------------------------------------------------

// N1-N3 straight from the definitions.
inline bool oracle_is_geometry(const SetFamily& f) {
  const ElementSet e = f.ground().full();
  std::set<std::uint32_t> m;
  for (ElementSet a : f) m.insert(a.bits());
  if (!m.count(e.bits())) return false;
  for (auto a : m) {
    for (auto b : m) {
      if (!m.count(a & b)) return false;
    }
  }
  for (auto a : m) {
    if (a == e.bits()) continue;
    bool ok = false;
    for (int x = 0; x < f.ground().size(); ++x) {
      if (!((a >> x) & 1U) && m.count(a | (1U << x))) ok = true;
    }
    if (!ok) return false;
  }
  return true;
}

// Smallest member containing a, found by scanning all members; throws if the
// minimal superset is not unique.
inline ElementSet oracle_closure(const SetFamily& f, ElementSet a) {
  std::vector<ElementSet> supers;
  for (ElementSet c : f) {
    if (a.subset_of(c)) supers.push_back(c);
  }
  std::vector<ElementSet> minimal;
  for (ElementSet c : supers) {
    bool is_min = true;
    for (ElementSet d : supers) {
      if (d.proper_subset_of(c)) is_min = false;
    }
    if (is_min) minimal.push_back(c);
  }
  if (minimal.size() != 1) throw std::logic_error("no unique minimal superset");
  return minimal[0];
}

inline ElementSet oracle_excludable(const SetFamily& f, ElementSet a) {
  ElementSet out;
  for (int x : a.elements()) {
    if (f.contains(a.without(x))) out = out.with(x);
  }
  return out;
}

// Terms summed in long double in member order.
inline long double oracle_identity(const SetFamily& f, const WeightVector& w) {
  long double total = 0;
  for (ElementSet a : f) {
    const ElementSet ex = oracle_excludable(f, a);
    long double t = 1;
    for (int i = 0; i < f.ground().size(); ++i) {
      if (!a.contains(i)) t *= w.p(i);
      if (ex.contains(i)) t *= w.q(i);
    }
    total += t;
  }
  return total;
}

// Number of members A with ex(A) ⊆ d ⊆ A.
inline int oracle_cover_count(const SetFamily& f, ElementSet d) {
  int c = 0;
  for (ElementSet a : f) {
    if (oracle_excludable(f, a).subset_of(d) && d.subset_of(a)) ++c;
  }
  return c;
}

// Queue-based k-core peeling with explicit degree counters.
inline std::set<int> oracle_kcore(int n, const std::vector<std::pair<int, int>>& edges, int k) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<bool> gone(static_cast<std::size_t>(n), false);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    if (deg[static_cast<std::size_t>(v)] < k) {
      queue.push_back(v);
      gone[static_cast<std::size_t>(v)] = true;
    }
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (gone[static_cast<std::size_t>(u)]) continue;
      if (--deg[static_cast<std::size_t>(u)] < k) {
        gone[static_cast<std::size_t>(u)] = true;
        queue.push_back(u);
      }
    }
  }
  std::set<int> core;
  for (int v = 0; v < n; ++v) {
    if (!gone[static_cast<std::size_t>(v)]) core.insert(v);
  }
  return core;
}

// Greedy run that always removes the first removable element of `order`
// not in keep.
inline ElementSet greedy_in_order(const RemovalRule& rule, ElementSet keep, const std::vector<int>& order) {
  ElementSet cur = rule.ground().full();
  for (bool moved = true; moved;) {
    moved = false;
    for (int e : order) {
      if (cur.contains(e) && !keep.contains(e) && rule.removable(cur, e)) {
        cur = cur.without(e);
        moved = true;
        break;
      }
    }
  }
  return cur;
}

// Clause-by-clause evaluation; 'stars' and 'true literals' counted directly.
inline bool oracle_valid(const CnfFormula& f, const PartialAssignment& x) {
  for (const auto& clause : f.clauses) {
    int stars = 0, sat = 0;
    for (int lit : clause) {
      const Value v = x[std::abs(lit) - 1];
      if (v == Value::Star) {
        ++stars;
      } else if ((v == Value::One) == (lit > 0)) {
        ++sat;
      }
    }
    if (sat == 0 && stars <= 1) return false;
  }
  return true;
}

// Every valid assignment reachable from a by starring one numeric variable
// at a time, by depth-first search over strings.
inline std::set<std::string> oracle_poset(const CnfFormula& f, const PartialAssignment& a) {
  std::set<std::string> seen;
  std::vector<PartialAssignment> stack{a};
  seen.insert(a.str());
  while (!stack.empty()) {
    PartialAssignment b = stack.back();
    stack.pop_back();
    for (int i = 0; i < b.size(); ++i) {
      if (b.is_star(i)) continue;
      PartialAssignment c = b.starred(i);
      if (oracle_valid(f, c) && seen.insert(c.str()).second) stack.push_back(c);
    }
  }
  return seen;
}

// All 3^n assignments.
inline std::vector<PartialAssignment> all_partial_assignments(int n) {
  std::vector<PartialAssignment> out;
  std::vector<Value> v(static_cast<std::size_t>(n), Value::Zero);
  for (;;) {
    out.emplace_back(v);
    int i = 0;
    while (i < n && v[static_cast<std::size_t>(i)] == Value::Star) v[static_cast<std::size_t>(i++)] = Value::Zero;
    if (i == n) break;
    v[static_cast<std::size_t>(i)] = static_cast<Value>(static_cast<int>(v[static_cast<std::size_t>(i)]) + 1);
  }
  return out;
}

inline bool satisfiable(const CnfFormula& f) {
  for (std::uint32_t m = 0; m < (1U << f.num_vars); ++m) {
    std::vector<Value> v;
    for (int i = 0; i < f.num_vars; ++i) v.push_back((m >> i) & 1U ? Value::One : Value::Zero);
    if (oracle_valid(f, PartialAssignment(v))) return true;
  }
  return false;
}

inline std::set<std::uint32_t> bits_of(const SetFamily& f) {
  std::set<std::uint32_t> out;
  for (ElementSet a : f) out.insert(a.bits());
  return out;
}

}  // namespace prunix::testing
