#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prunix/core_sets.hpp"
#include "prunix/geometry.hpp"

namespace prunix {

/// A removal process: which element may be removed from the current set.
///
/// The predicate is only ever asked about elements of `current` and must be
/// a pure function of its arguments.
class RemovalRule {
 public:
  using Predicate = std::function<bool(ElementSet current, int element)>;

  RemovalRule(GroundSet ground, Predicate removable, std::string name = "custom");

  const GroundSet& ground() const { return ground_; }
  const std::string& name() const { return name_; }
  bool removable(ElementSet current, int element) const { return pred_(current, element); }
  ElementSet removables(ElementSet current) const;

 private:
  GroundSet ground_;
  Predicate pred_;
  std::string name_;
};

struct PruningTrace {
  SimpleWord word;
  std::vector<ElementSet> states;  // states[0] = E, states[i+1] = states[i] - word[i]
};

struct Graph {
  GroundSet vertices;
  std::vector<std::pair<int, int>> edges;

  // Throws PreconditionError on self loops or unknown vertices.
  Graph(GroundSet v, std::vector<std::pair<int, int>> e);
  std::vector<ElementSet> adjacency() const;
};

struct Hypergraph {
  GroundSet vertices;
  std::vector<ElementSet> edges;

  Hypergraph(GroundSet v, std::vector<ElementSet> e);
};

// One edge per line, whitespace-separated labels; blank lines and '#'
// comments ignored. Vertices are numbered in order of first appearance.
Graph parse_edge_list(std::string_view text);
Hypergraph parse_hyperedge_list(std::string_view text);

/// Removable iff fewer than k neighbours remain.
RemovalRule kcore_rule(const Graph& g, int k);
/// Leaf removal: the k = 2 case of kcore_rule, whose fixpoint is the 2-core.
RemovalRule leaf_rule(const Graph& g);
/// Removable iff some hyperedge through the vertex has lost every other vertex.
RemovalRule identifiable_rule(const Hypergraph& h);
/// e removable iff every circuit rooted at e has lost some non-root element.
RemovalRule circuit_rule(std::vector<RootedSet> rooted, const GroundSet& ground);
/// e removable iff some path rooted at e has lost every non-root element.
RemovalRule path_rule(std::vector<RootedSet> paths, const GroundSet& ground);

// Parses "leaf", "kcore:K" or "identifiable" against a hypergraph whose
// edges all have size 2 for the graph rules.
RemovalRule rule_from_spec(std::string_view spec, const Hypergraph& h);

/// History independence of removability, checked over every reachable state
/// and every single further removal. Witness: sets {S, S'} and element e.
AxiomReport is_pruning_process(const RemovalRule& rule);

/// BFS from E over single allowed removals.
SetFamily reachable_sets(const RemovalRule& rule);

/// Every removal sequence of length <= max_len, ordered by length then
/// lexicographically. n <= 12 and at most kMaxWords words.
inline constexpr std::size_t kMaxWords = 2'000'000;
std::vector<SimpleWord> removal_words(const RemovalRule& rule, std::size_t max_len);

/// Applies a word from E; nullopt if some step was not removable.
std::optional<PruningTrace> trace_word(const RemovalRule& rule, const SimpleWord& word);

struct NonUniqueError : Error {
  ElementSet first;
  ElementSet second;
  NonUniqueError(ElementSet a, ElementSet b, const std::string& msg) : Error(msg), first(a), second(b) {}
};

/// Greedy removal from E of removable elements outside `keep`, always taking
/// the lowest-index one. The run is repeated with the highest-index choice
/// and a NonUniqueError carrying both outcomes is thrown if they differ.
ElementSet tau_min_reachable(const RemovalRule& rule, ElementSet keep);

/// Greedy removal taking, at each step, the first removable element in
/// `priority` (a permutation of the ground indices) that is outside `keep`.
ElementSet tau_min_reachable(const RemovalRule& rule, ElementSet keep, std::span<const int> priority);

/// Every terminal state of every greedy run (all removal orders) from E
/// that never removes an element of `keep`.
SetFamily greedy_outcomes(const RemovalRule& rule, ElementSet keep);

/// For every S, all greedy runs keeping S must end in the same set. A rule
/// failing this is not a pruning process. Witness: S and two outcomes.
AxiomReport check_unique_minimal(const RemovalRule& rule);

/// Minimal A not containing x such that x is removable from E - A.
std::vector<ElementSet> precedences(const RemovalRule& rule, int x);

}  // namespace prunix
