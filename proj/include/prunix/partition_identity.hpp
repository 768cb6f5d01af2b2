#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "prunix/core_sets.hpp"
#include "prunix/geometry.hpp"
#include "prunix/rng.hpp"

namespace prunix {

using Rational = boost::multiprecision::cpp_rational;

/// Per-element deletion probabilities p_i; q_i = 1 - p_i is derived.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> p);

  static WeightVector uniform(int n, double p);
  // Uniform draws from [lo, hi].
  static WeightVector random(int n, Rng& rng, double lo = 0.05, double hi = 0.95);
  // p_a = 0 for a in d, 1 otherwise.
  static WeightVector indicator(int n, ElementSet d);

  int size() const { return static_cast<int>(p_.size()); }
  double p(int i) const { return p_[static_cast<std::size_t>(i)]; }
  double q(int i) const { return 1.0 - p_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& ps() const { return p_; }
  WeightVector restricted(std::span<const int> indices) const;

 private:
  std::vector<double> p_;
};

/// Exact counterpart of WeightVector.
class ExactWeights {
 public:
  ExactWeights() = default;
  explicit ExactWeights(std::vector<Rational> p);

  static ExactWeights indicator(int n, ElementSet d);
  // Dyadic k / 2^bits drawn uniformly from [lo, hi].
  static ExactWeights random_dyadic(int n, Rng& rng, double lo = 0.05, double hi = 0.95, int bits = 20);

  int size() const { return static_cast<int>(p_.size()); }
  const Rational& p(int i) const { return p_[static_cast<std::size_t>(i)]; }
  Rational q(int i) const { return Rational(1) - p_[static_cast<std::size_t>(i)]; }
  WeightVector to_double() const;

 private:
  std::vector<Rational> p_;
};

// "a=0.3,b=1/2" against a ground set; every element must be given.
WeightVector parse_weights(std::string_view text, const GroundSet& ground);
ExactWeights parse_exact_weights(std::string_view text, const GroundSet& ground);
// {"p": {"a": 0.3, ...}}
WeightVector parse_weights_json(std::string_view text, const GroundSet& ground);
Rational parse_rational(std::string_view text);

struct Interval {
  ElementSet lower;  // ex(A)
  ElementSet upper;  // A
};

/// The intervals [ex(A), A] for every A in f, in canonical order of A.
std::vector<Interval> interval_cover(const SetFamily& f);

struct PartitionError : Error {
  ElementSet d;
  std::vector<ElementSet> candidates;
  PartitionError(ElementSet d_, std::vector<ElementSet> c, const std::string& msg)
      : Error(msg), d(d_), candidates(std::move(c)) {}
};

/// The unique A in f with ex(A) ⊆ D ⊆ A; PartitionError when there is
/// none or more than one.
ElementSet phi(const SetFamily& f, ElementSet d);

/// Every D in 2^E lies in exactly one interval. Witness: D and the count.
AxiomReport verify_interval_partition(const SetFamily& f);

/// Number of intervals [ex(A), A] of f containing D, for every D (index = bits).
std::vector<std::uint32_t> cover_counts(const SetFamily& f);

/// sum over A in f of prod_{i not in A} p_i prod_{j in ex(A)} q_j.
double identity_sum(const SetFamily& f, const WeightVector& w);
Rational identity_sum_exact(const SetFamily& f, const ExactWeights& w);

/// The summands of identity_sum, in canonical order of f.
std::vector<double> identity_terms(const SetFamily& f, const WeightVector& w);

struct Classification {
  bool is_geometry = false;
  bool is_partition = false;
  bool identity_holds = false;
  double max_float_deviation = 0.0;  // over the random weight trials

  bool agree() const { return is_geometry == is_partition && is_partition == identity_holds; }
};

/// Evaluates the three equivalent conditions independently: the axioms, the
/// exhaustive interval partition, and the identity evaluated exactly at all
/// 2^n indicator weights plus `trials` random dyadic weights.
Classification classify(const SetFamily& f, int trials, std::uint64_t seed);

/// Independent Bernoulli deletion: e leaves with probability p_e.
ElementSet sample_pi1(const WeightVector& w, Rng& rng);
ElementSet sample_pi1(const WeightVector& w, std::uint64_t seed);

/// Probability of a subset under the product distribution.
double pi1_probability(const WeightVector& w, ElementSet d);

struct Distribution {
  SetFamily support;
  std::vector<double> prob;  // aligned with support.members()

  Distribution(SetFamily s, std::vector<double> p);
  double at(ElementSet a) const;
};

/// Pr(A) = prod_{i not in A} p_i prod_{j in ex(A)} q_j over the closed sets.
Distribution pi2_exact(const ConvexGeometry& g, const WeightVector& w);

/// Empirical law of closure(sample_pi1) over `samples` draws.
Distribution pi2_empirical(const ConvexGeometry& g, const WeightVector& w, std::size_t samples, std::uint64_t seed);

double total_variation(const Distribution& a, const Distribution& b);

struct ClosureInvarianceError : Error {
  ElementSet d;
  ClosureInvarianceError(ElementSet d_, const std::string& msg) : Error(msg), d(d_) {}
};

/// lhs = E_pi1[f] over all of 2^E, rhs = E_pi2[f] over the closed sets.
/// f must satisfy f(D) = f(closure(D)); this is verified for n <= 12.
std::pair<double, double> expectation_check(const ConvexGeometry& g, const WeightVector& w,
                                            const std::function<double(ElementSet)>& f);

}  // namespace prunix
