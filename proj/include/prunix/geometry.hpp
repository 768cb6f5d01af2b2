#pragma once

#include <span>
#include <string>
#include <vector>

#include "prunix/core_sets.hpp"

namespace prunix {

/// One failed axiom together with the witnesses that show the failure.
struct Violation {
  std::string axiom;              // "N1", "L2", "pruning", "partition", ...
  std::vector<ElementSet> sets;   // witness sets, meaning depends on the axiom
  std::vector<SimpleWord> words;  // witness words (antimatroid axioms)
  std::vector<int> elements;      // witness elements
  std::string detail;             // human-readable description
};

struct AxiomReport {
  std::vector<Violation> violations;

  bool holds() const { return violations.empty(); }
  const Violation* find(std::string_view axiom) const;
};

std::string describe(const AxiomReport& report);

/// Checks (N1) E in the family, (N2) closure under pairwise intersection and
/// (N3) accessibility from the top. At most one witness per failed axiom,
/// the first one in canonical order.
AxiomReport check_convex_geometry(const SetFamily& f);

/// The closed sets of a convex geometry.
class ConvexGeometry {
 public:
  struct Unchecked {};

  // Throws PreconditionError if f violates N1-N3.
  explicit ConvexGeometry(SetFamily f);
  // For generators whose output satisfies the axioms by construction.
  ConvexGeometry(SetFamily f, Unchecked) : family_(std::move(f)) {}

  const SetFamily& family() const { return family_; }
  const GroundSet& ground() const { return family_.ground(); }
  bool is_closed(ElementSet a) const { return family_.contains(a); }

  // Minimum closed set containing a.
  ElementSet closure(ElementSet a) const;
  // Intersection of all closed sets (the lattice bottom).
  ElementSet bottom() const;

  friend bool operator==(const ConvexGeometry& a, const ConvexGeometry& b) { return a.family_ == b.family_; }

 private:
  SetFamily family_;
};

ElementSet closure(const ConvexGeometry& g, ElementSet a);

/// ex(A) = {a in A : A - a in f}. Throws PreconditionError if A is not in f.
ElementSet excludable(const SetFamily& f, ElementSet a);

/// Complements of every member.
SetFamily dual(const SetFamily& f);

/// Checks (L1) prefix closure, (L2) exchange and (L3) persistence literally
/// on an explicit finite language.
AxiomReport check_antimatroid_words(std::span<const SimpleWord> words, const GroundSet& ground);

/// All simple words whose every prefix support lies in `feasible`.
std::vector<SimpleWord> feasible_words(const SetFamily& feasible);

/// S is full when no rooted set misses exactly its root.
bool is_full(ElementSet s, std::span<const RootedSet> rooted);
SetFamily full_sets(std::span<const RootedSet> rooted, const GroundSet& ground);

/// Full sets reachable from E by single-element steps through full sets.
ConvexGeometry generate_from_circuits(std::span<const RootedSet> rooted, const GroundSet& ground);

/// Geometry generated by rooted paths. A removed set R = E - S is path-full
/// when every e in R owns a path (P, e) with P inside R; S is closed when
/// its complement is path-full and S is reachable from E through such sets.
/// Throws PreconditionError when some element has no path at all.
ConvexGeometry generate_from_paths(std::span<const RootedSet> paths, const GroundSet& ground);

/// A is free iff ex(closure(A)) = A.
bool is_free(const ConvexGeometry& g, ElementSet a);

/// Minimal non-free sets with their unique roots, in canonical order.
std::vector<RootedSet> rooted_circuits(const ConvexGeometry& g);

std::string format_rooted(const GroundSet& ground, const RootedSet& r);

}  // namespace prunix
