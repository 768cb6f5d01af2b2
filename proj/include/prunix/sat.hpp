#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prunix/core_sets.hpp"
#include "prunix/geometry.hpp"
#include "prunix/partition_identity.hpp"
#include "prunix/pruning.hpp"
#include "prunix/rng.hpp"

namespace prunix {

/// CNF formula over variables 1..num_vars; literal v or -v.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  // Throws PreconditionError on out-of-range literals or a variable
  // repeated within one clause.
  CnfFormula(int n, std::vector<std::vector<int>> cls);
};

CnfFormula parse_dimacs(std::string_view text);
std::string write_dimacs(const CnfFormula& f);

enum class Value : std::uint8_t { Zero, One, Star };

/// Values in {0, 1, *}, index i is variable i + 1.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::vector<Value> values) : values_(std::move(values)) {}

  // "1,1,*,0" or "11*0".
  static PartialAssignment parse(std::string_view text);
  static PartialAssignment all_stars(int n) { return PartialAssignment(std::vector<Value>(static_cast<std::size_t>(n), Value::Star)); }

  int size() const { return static_cast<int>(values_.size()); }
  Value operator[](int var) const { return values_[static_cast<std::size_t>(var)]; }
  const std::vector<Value>& values() const { return values_; }
  bool is_star(int var) const { return (*this)[var] == Value::Star; }
  PartialAssignment starred(int var) const;
  // Compact form "11*0".
  std::string str() const;

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;
  friend auto operator<=>(const PartialAssignment&, const PartialAssignment&) = default;

 private:
  std::vector<Value> values_;
};

struct Validity {
  bool valid = true;
  std::optional<std::size_t> clause;  // first invalid clause
};

/// A clause is valid when some literal is satisfied or when at least two of
/// its variables are stars.
Validity is_valid(const CnfFormula& f, const PartialAssignment& x);

/// Star, unconstrained, constrained and numeric variables (0-based indices).
struct VarClassification {
  std::vector<int> stars;
  std::vector<int> unconstrained;
  std::vector<int> constrained;
  std::vector<int> numeric;
};

VarClassification classify_vars(const CnfFormula& f, const PartialAssignment& b);

/// P(F) below a: the valid assignments reachable from a by starring numeric
/// variables one at a time while staying valid.
struct SatPoset {
  PartialAssignment top;
  std::vector<int> numeric_vars;          // N(a), ascending, 0-based
  GroundSet ground;                        // labels "i" for variable i, over N(a)
  std::vector<PartialAssignment> members;  // canonical order of their supports
  std::vector<ElementSet> supports;        // N(b) over `ground`
  struct Cover {
    std::size_t upper;
    std::size_t lower;
    int var;  // 0-based variable starred along the cover
  };
  std::vector<Cover> covers;

  SetFamily support_family() const { return SetFamily(ground, supports); }
  // Rebuilds the assignment below `top` with numeric support s.
  PartialAssignment assignment_of(ElementSet s) const;
};

SatPoset poset_below(const CnfFormula& f, const PartialAssignment& a);

/// Whitening as a removal process on N(a): a numeric variable is removable
/// when starring it keeps the assignment valid.
RemovalRule whitening_rule(const CnfFormula& f, const PartialAssignment& a);

/// Rooted sets from the clauses a satisfies through exactly one literal with
/// every other literal numeric and false; root = the satisfying variable.
/// Expressed over the ground set of N(a).
std::vector<RootedSet> unique_satisfied_rooted_sets(const CnfFormula& f, const PartialAssignment& a);

ConvexGeometry geometry_from_assignment(const CnfFormula& f, const PartialAssignment& a);

/// prod_{i in S(b)} p_i prod_{j in U(b)} q_j over all variables.
double weight(const CnfFormula& f, const PartialAssignment& b, const WeightVector& w);

/// sum over b <= a of prod_{i in S(b) ∩ N(a)} p_i prod_{j in U(b)} q_j.
/// Stars already present in a are not charged; for a fully assigned a this
/// is the plain sum of weight(b).
double verify_sat_identity(const CnfFormula& f, const PartialAssignment& a, const WeightVector& w);

/// Sum of weight(b) over every valid partial assignment (3^n enumeration).
double total_weight(const CnfFormula& f, const WeightVector& w);

/// Random whitening: star a uniformly chosen unconstrained variable until
/// none remain.
PartialAssignment core(const CnfFormula& f, const PartialAssignment& a, std::uint64_t seed);

struct IntersectionWitness {
  PartialAssignment c;
  PartialAssignment pattern;  // c_i = * where a and b disagree, a_i otherwise
  bool check = false;         // P(F)<=a ∩ P(F)<=b == P(F)<=c
};

/// Top element of P(F)<=a ∩ P(F)<=b and whether the intersection is exactly
/// the poset below it. Throws PreconditionError on an empty intersection
/// and ConsistencyError when the intersection has several maximal elements.
IntersectionWitness geometry_intersection_witness(const CnfFormula& f, const PartialAssignment& a,
                                                  const PartialAssignment& b);

/// Random k-CNF: k distinct variables per clause, uniform signs. With a
/// planted assignment, clauses it falsifies are redrawn.
CnfFormula random_kcnf(int num_vars, int num_clauses, int k, Rng& rng,
                       const std::optional<PartialAssignment>& planted = std::nullopt);

PartialAssignment random_full_assignment(int n, Rng& rng);

}  // namespace prunix
