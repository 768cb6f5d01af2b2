#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "prunix/core_sets.hpp"
#include "prunix/geometry.hpp"

namespace prunix {

/// Closed sets ordered by inclusion, with the cover relation precomputed.
///
/// meet(A, B) = A ∩ B and join(A, B) = the smallest member containing A ∪ B.
/// Elements are addressed by their position in the family's canonical order.
class ClosedSetLattice {
 public:
  const SetFamily& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  ElementSet at(std::size_t i) const { return elements_.members()[i]; }

  // (upper, lower) index pairs, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }
  const std::vector<std::size_t>& lower_covers(std::size_t i) const { return lower_[i]; }

  std::size_t top() const { return elements_.size() - 1; }
  std::size_t bottom() const { return 0; }

  std::size_t meet(std::size_t a, std::size_t b) const;
  std::size_t join(std::size_t a, std::size_t b) const;
  std::size_t index_of(ElementSet s) const;

 private:
  friend ClosedSetLattice build_lattice(const ConvexGeometry& g);
  friend ClosedSetLattice build_lattice(const SetFamily& f);
  void set_covers(std::vector<std::pair<std::size_t, std::size_t>> covers);

  SetFamily elements_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::size_t>> lower_;
};

/// Covers by the one-element-difference criterion, valid under (N3).
ClosedSetLattice build_lattice(const ConvexGeometry& g);

/// Generic transitive reduction. The family must contain E and be closed
/// under intersection (so that it is a lattice); throws otherwise.
ClosedSetLattice build_lattice(const SetFamily& f);

/// For every x other than the bottom, [m(x), x] must be Boolean, where m(x)
/// is the meet of the lower covers of x.
AxiomReport is_meet_distributive(const ClosedSetLattice& l);

/// x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) over all triples.
inline constexpr std::size_t kMaxDistributiveElements = 500;
AxiomReport is_distributive(const ClosedSetLattice& l);

/// k-distributive law
///   x ∧ (y_0 ∨ ... ∨ y_k) = ∨_i ( x ∧ ∨_{j≠i} y_j )
/// over all x and y_0..y_k. Tuples with a repeated or comparable pair of y's
/// satisfy the law trivially, so only (k+1)-antichains are scanned. Refuses
/// (LimitError) past kMaxLawEvaluations evaluations.
inline constexpr std::size_t kMaxLawEvaluations = 100'000'000;
AxiomReport is_k_distributive(const ClosedSetLattice& l, int k);

/// Graphviz digraph with covers as edges from the larger to the smaller set.
std::string export_dot(const ClosedSetLattice& l, bool edge_labels);

}  // namespace prunix
