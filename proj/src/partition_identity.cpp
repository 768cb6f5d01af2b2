#include "prunix/partition_identity.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "json.hpp"
#include "prunix/parallel.hpp"

namespace prunix {

WeightVector::WeightVector(std::vector<double> p) : p_(std::move(p)) {
  for (double x : p_) {
    if (!(x >= 0.0 && x <= 1.0)) throw PreconditionError("weights must lie in [0, 1]");
  }
}

WeightVector WeightVector::uniform(int n, double p) {
  return WeightVector(std::vector<double>(static_cast<std::size_t>(n), p));
}

WeightVector WeightVector::random(int n, Rng& rng, double lo, double hi) {
  std::vector<double> p(static_cast<std::size_t>(n));
  for (auto& x : p) x = rng.uniform(lo, hi);
  return WeightVector(std::move(p));
}

WeightVector WeightVector::indicator(int n, ElementSet d) {
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = d.contains(i) ? 0.0 : 1.0;
  return WeightVector(std::move(p));
}

WeightVector WeightVector::restricted(std::span<const int> indices) const {
  std::vector<double> p;
  p.reserve(indices.size());
  for (int i : indices) p.push_back(p_.at(static_cast<std::size_t>(i)));
  return WeightVector(std::move(p));
}

ExactWeights::ExactWeights(std::vector<Rational> p) : p_(std::move(p)) {
  for (const auto& x : p_) {
    if (x < 0 || x > 1) throw PreconditionError("weights must lie in [0, 1]");
  }
}

ExactWeights ExactWeights::indicator(int n, ElementSet d) {
  std::vector<Rational> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = d.contains(i) ? 0 : 1;
  return ExactWeights(std::move(p));
}

ExactWeights ExactWeights::random_dyadic(int n, Rng& rng, double lo, double hi, int bits) {
  const std::int64_t denom = std::int64_t{1} << bits;
  const auto k_lo = static_cast<std::int64_t>(std::ceil(lo * static_cast<double>(denom)));
  const auto k_hi = static_cast<std::int64_t>(std::floor(hi * static_cast<double>(denom)));
  std::vector<Rational> p;
  for (int i = 0; i < n; ++i) {
    std::int64_t k = k_lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(k_hi - k_lo + 1)));
    p.emplace_back(k, denom);
  }
  return ExactWeights(std::move(p));
}

WeightVector ExactWeights::to_double() const {
  std::vector<double> p;
  for (const auto& x : p_) p.push_back(static_cast<double>(x));
  return WeightVector(std::move(p));
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view digits) {
    if (digits.empty()) throw ParseError("bad number '" + std::string(text) + "'");
    for (char c : digits) {
      if (c < '0' || c > '9') throw ParseError("bad number '" + std::string(text) + "'");
    }
    return boost::multiprecision::cpp_int(std::string(digits));
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text));
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  boost::multiprecision::cpp_int scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  auto w = whole.empty() ? boost::multiprecision::cpp_int(0) : parse_int(whole);
  auto f = frac.empty() ? boost::multiprecision::cpp_int(0) : parse_int(frac);
  return Rational(w * scale + f, scale);
}

namespace {

std::map<int, std::string> split_assignments(std::string_view text, const GroundSet& ground) {
  std::map<int, std::string> values;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("weight entries look like label=value");
    int e = ground.index(item.substr(0, eq));
    if (!values.emplace(e, std::string(item.substr(eq + 1))).second) {
      throw ParseError("weight for '" + ground.label(e) + "' given twice");
    }
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  if (static_cast<int>(values.size()) != ground.size()) throw ParseError("every element needs a weight");
  return values;
}

}  // namespace

ExactWeights parse_exact_weights(std::string_view text, const GroundSet& ground) {
  std::vector<Rational> p;
  for (auto& [e, v] : split_assignments(text, ground)) p.push_back(parse_rational(v));
  try {
    return ExactWeights(std::move(p));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

WeightVector parse_weights(std::string_view text, const GroundSet& ground) {
  return parse_exact_weights(text, ground).to_double();
}

WeightVector parse_weights_json(std::string_view text, const GroundSet& ground) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("p") || !doc["p"].is_object()) throw ParseError("weights need a \"p\" object");
  std::vector<double> p(static_cast<std::size_t>(ground.size()), -1.0);
  for (auto& [label, value] : doc["p"].items()) {
    if (!value.is_number()) throw ParseError("weight for '" + label + "' is not a number");
    p[static_cast<std::size_t>(ground.index(label))] = value.get<double>();
  }
  for (double x : p) {
    if (x < 0.0) throw ParseError("every element needs a weight in [0, 1]");
  }
  try {
    return WeightVector(std::move(p));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

std::vector<Interval> interval_cover(const SetFamily& f) {
  std::vector<Interval> out;
  out.reserve(f.size());
  for (ElementSet a : f) out.push_back({excludable(f, a), a});
  return out;
}

ElementSet phi(const SetFamily& f, ElementSet d) {
  std::vector<ElementSet> hits;
  for (const auto& iv : interval_cover(f)) {
    if (iv.lower.subset_of(d) && d.subset_of(iv.upper)) hits.push_back(iv.upper);
  }
  if (hits.size() == 1) return hits.front();
  const GroundSet& g = f.ground();
  std::string msg = hits.empty() ? "no covering interval for " + g.format(d)
                                 : std::to_string(hits.size()) + " intervals cover " + g.format(d);
  throw PartitionError(d, std::move(hits), msg);
}

std::vector<std::uint32_t> cover_counts(const SetFamily& f) {
  const int n = f.ground().size();
  if (n > kMaxEnumeration) throw LimitError("cover_counts: ground set too large for enumeration");
  std::vector<std::uint32_t> counts(std::size_t{1} << n, 0);
  for (const auto& iv : interval_cover(f)) {
    const ElementSet::Bits free_bits = (iv.upper - iv.lower).bits();
    // Enumerate every R ⊆ A - ex(A), including the empty set.
    for (ElementSet::Bits r = free_bits;; r = (r - 1) & free_bits) {
      ++counts[iv.lower.bits() | r];
      if (r == 0) break;
    }
  }
  return counts;
}

AxiomReport verify_interval_partition(const SetFamily& f) {
  auto counts = cover_counts(f);
  AxiomReport report;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    if (counts[b] != 1) {
      const ElementSet d(static_cast<ElementSet::Bits>(b));
      report.violations.push_back({"partition", {d}, {}, {},
                                   f.ground().format(d) + " lies in " + std::to_string(counts[b]) + " intervals"});
      break;
    }
  }
  return report;
}

std::vector<double> identity_terms(const SetFamily& f, const WeightVector& w) {
  const int n = f.ground().size();
  if (w.size() != n) throw PreconditionError("weight vector size does not match the ground set");
  std::vector<double> terms;
  terms.reserve(f.size());
  for (ElementSet a : f) {
    const ElementSet ex = excludable(f, a);
    double t = 1.0;
    for (int i = 0; i < n; ++i) {
      if (!a.contains(i)) {
        t *= w.p(i);
      } else if (ex.contains(i)) {
        t *= w.q(i);
      }
    }
    terms.push_back(t);
  }
  return terms;
}

double identity_sum(const SetFamily& f, const WeightVector& w) {
  auto terms = identity_terms(f, w);
  return pairwise_sum(terms);
}

Rational identity_sum_exact(const SetFamily& f, const ExactWeights& w) {
  const int n = f.ground().size();
  if (w.size() != n) throw PreconditionError("weight vector size does not match the ground set");
  Rational total = 0;
  for (ElementSet a : f) {
    const ElementSet ex = excludable(f, a);
    Rational t = 1;
    for (int i = 0; i < n && t != 0; ++i) {
      if (!a.contains(i)) {
        t *= w.p(i);
      } else if (ex.contains(i)) {
        t *= w.q(i);
      }
    }
    total += t;
  }
  return total;
}

Classification classify(const SetFamily& f, int trials, std::uint64_t seed) {
  const int n = f.ground().size();
  if (n > 16) throw LimitError("classify: n = " + std::to_string(n) + " exceeds 16");
  Classification c;
  c.is_geometry = check_convex_geometry(f).holds();
  c.is_partition = verify_interval_partition(f).holds();

  bool holds = true;
  for (ElementSet::Bits d = 0; holds && d < (ElementSet::Bits{1} << n); ++d) {
    holds = identity_sum_exact(f, ExactWeights::indicator(n, ElementSet(d))) == 1;
  }
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    ExactWeights w = ExactWeights::random_dyadic(n, rng);
    holds = holds && identity_sum_exact(f, w) == 1;
    c.max_float_deviation = std::max(c.max_float_deviation, std::abs(identity_sum(f, w.to_double()) - 1.0));
  }
  c.identity_holds = holds;
  return c;
}

ElementSet sample_pi1(const WeightVector& w, Rng& rng) {
  ElementSet kept;
  for (int i = 0; i < w.size(); ++i) {
    if (!(rng.uniform() < w.p(i))) kept = kept.with(i);
  }
  return kept;
}

ElementSet sample_pi1(const WeightVector& w, std::uint64_t seed) {
  Rng rng(seed);
  return sample_pi1(w, rng);
}

double pi1_probability(const WeightVector& w, ElementSet d) {
  double t = 1.0;
  for (int i = 0; i < w.size(); ++i) t *= d.contains(i) ? w.q(i) : w.p(i);
  return t;
}

Distribution::Distribution(SetFamily s, std::vector<double> p) : support(std::move(s)), prob(std::move(p)) {
  if (prob.size() != support.size()) throw PreconditionError("distribution size mismatch");
  for (double x : prob) {
    if (!(x >= 0.0)) throw PreconditionError("negative probability");
  }
  double total = pairwise_sum(prob);
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConsistencyError("distribution sums to " + std::to_string(total) + ", not 1");
  }
}

double Distribution::at(ElementSet a) const {
  long i = support.index_of(a);
  return i < 0 ? 0.0 : prob[static_cast<std::size_t>(i)];
}

Distribution pi2_exact(const ConvexGeometry& g, const WeightVector& w) {
  return Distribution(g.family(), identity_terms(g.family(), w));
}

Distribution pi2_empirical(const ConvexGeometry& g, const WeightVector& w, std::size_t samples,
                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> counts(g.family().size(), 0.0);
  for (std::size_t s = 0; s < samples; ++s) {
    ElementSet c = g.closure(sample_pi1(w, rng));
    counts[static_cast<std::size_t>(g.family().index_of(c))] += 1.0;
  }
  for (auto& x : counts) x /= static_cast<double>(samples);
  return Distribution(g.family(), std::move(counts));
}

double total_variation(const Distribution& a, const Distribution& b) {
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.support.size(); ++i) {
    diffs.push_back(std::abs(a.prob[i] - b.at(a.support.members()[i])));
  }
  for (std::size_t i = 0; i < b.support.size(); ++i) {
    if (!a.support.contains(b.support.members()[i])) diffs.push_back(b.prob[i]);
  }
  return 0.5 * pairwise_sum(diffs);
}

std::pair<double, double> expectation_check(const ConvexGeometry& g, const WeightVector& w,
                                            const std::function<double(ElementSet)>& f) {
  const int n = g.ground().size();
  if (n > kMaxEnumeration) throw LimitError("expectation_check: ground set too large for enumeration");
  if (w.size() != n) throw PreconditionError("weight vector size does not match the ground set");
  const std::size_t count = std::size_t{1} << n;
  if (n <= 12) {
    for (std::size_t b = 0; b < count; ++b) {
      const ElementSet d(static_cast<ElementSet::Bits>(b));
      if (f(d) != f(g.closure(d))) {
        throw ClosureInvarianceError(d, "f(" + g.ground().format(d) + ") differs from f of its closure");
      }
    }
  }
  std::vector<double> lhs_terms(count);
  for (std::size_t b = 0; b < count; ++b) {
    const ElementSet d(static_cast<ElementSet::Bits>(b));
    lhs_terms[b] = f(d) * pi1_probability(w, d);
  }
  auto pi2 = identity_terms(g.family(), w);
  std::vector<double> rhs_terms;
  for (std::size_t i = 0; i < pi2.size(); ++i) rhs_terms.push_back(f(g.family().members()[i]) * pi2[i]);
  return {pairwise_sum(lhs_terms), pairwise_sum(rhs_terms)};
}

}  // namespace prunix
