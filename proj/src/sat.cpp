#include "prunix/sat.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "prunix/parallel.hpp"

namespace prunix {

CnfFormula::CnfFormula(int n, std::vector<std::vector<int>> cls) : num_vars(n), clauses(std::move(cls)) {
  if (n < 0) throw PreconditionError("negative variable count");
  for (const auto& c : clauses) {
    std::vector<int> seen;
    for (int lit : c) {
      int v = lit < 0 ? -lit : lit;
      if (lit == 0 || v > n) throw PreconditionError("literal " + std::to_string(lit) + " out of range");
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) {
        throw PreconditionError("variable " + std::to_string(v) + " repeated in a clause");
      }
      seen.push_back(v);
    }
  }
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  long m = -1;
  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == "c" || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      if (n >= 0) throw ParseError("duplicate DIMACS header");
      if (!(words >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) throw ParseError("malformed 'p cnf n m' header");
      continue;
    }
    if (n < 0) throw ParseError("clause before the 'p cnf' header");
    std::istringstream lits(line);
    std::string tok;
    while (lits >> tok) {
      int lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) throw ParseError("bad literal '" + tok + "'");
      } catch (const std::logic_error&) {
        throw ParseError("bad literal '" + tok + "'");
      }
      if (lit == 0) {
        clauses.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (n < 0) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) throw ParseError("last clause is not 0-terminated");
  if (static_cast<long>(clauses.size()) != m) {
    throw ParseError("header announces " + std::to_string(m) + " clauses, found " + std::to_string(clauses.size()));
  }
  try {
    return CnfFormula(n, std::move(clauses));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

std::string write_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

PartialAssignment PartialAssignment::parse(std::string_view text) {
  std::vector<Value> values;
  for (char ch : text) {
    switch (ch) {
      case '0': values.push_back(Value::Zero); break;
      case '1': values.push_back(Value::One); break;
      case '*': values.push_back(Value::Star); break;
      case ',': case ' ': break;
      default: throw ParseError(std::string("bad assignment symbol '") + ch + "'");
    }
  }
  return PartialAssignment(std::move(values));
}

PartialAssignment PartialAssignment::starred(int var) const {
  auto v = values_;
  v.at(static_cast<std::size_t>(var)) = Value::Star;
  return PartialAssignment(std::move(v));
}

std::string PartialAssignment::str() const {
  std::string out;
  for (Value v : values_) out += v == Value::Zero ? '0' : v == Value::One ? '1' : '*';
  return out;
}

namespace {

void require_size(const CnfFormula& f, const PartialAssignment& x) {
  if (x.size() != f.num_vars) {
    throw PreconditionError("assignment has " + std::to_string(x.size()) + " values, formula has " +
                            std::to_string(f.num_vars) + " variables");
  }
}

struct ClauseState {
  int satisfied = 0;
  int stars = 0;
};

ClauseState evaluate(const std::vector<int>& clause, const PartialAssignment& x) {
  ClauseState s;
  for (int lit : clause) {
    const Value v = x[std::abs(lit) - 1];
    if (v == Value::Star) {
      ++s.stars;
    } else if ((lit > 0) == (v == Value::One)) {
      ++s.satisfied;
    }
  }
  return s;
}

void require_valid(const CnfFormula& f, const PartialAssignment& x, const char* what) {
  auto v = is_valid(f, x);
  if (!v.valid) {
    throw PreconditionError(std::string(what) + ": assignment " + x.str() + " is invalid (clause " +
                            std::to_string(*v.clause + 1) + ")");
  }
}

std::vector<int> numeric_vars_of(const PartialAssignment& a) {
  std::vector<int> out;
  for (int i = 0; i < a.size(); ++i) {
    if (!a.is_star(i)) out.push_back(i);
  }
  return out;
}

GroundSet ground_of(const std::vector<int>& vars) {
  std::vector<std::string> labels;
  for (int v : vars) labels.push_back(std::to_string(v + 1));
  return GroundSet(std::move(labels));
}

PartialAssignment restrict_to(const PartialAssignment& top, const std::vector<int>& vars, ElementSet s) {
  auto values = top.values();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!s.contains(static_cast<int>(i))) values[static_cast<std::size_t>(vars[i])] = Value::Star;
  }
  return PartialAssignment(std::move(values));
}

}  // namespace

Validity is_valid(const CnfFormula& f, const PartialAssignment& x) {
  require_size(f, x);
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    auto s = evaluate(f.clauses[i], x);
    if (s.satisfied == 0 && s.stars < 2) return {false, i};
  }
  return {};
}

VarClassification classify_vars(const CnfFormula& f, const PartialAssignment& b) {
  require_valid(f, b, "classify_vars");
  VarClassification c;
  for (int i = 0; i < b.size(); ++i) {
    if (b.is_star(i)) {
      c.stars.push_back(i);
      continue;
    }
    c.numeric.push_back(i);
    (is_valid(f, b.starred(i)).valid ? c.unconstrained : c.constrained).push_back(i);
  }
  return c;
}

PartialAssignment SatPoset::assignment_of(ElementSet s) const { return restrict_to(top, numeric_vars, s); }

SatPoset poset_below(const CnfFormula& f, const PartialAssignment& a) {
  require_valid(f, a, "poset_below");
  SatPoset p;
  p.top = a;
  p.numeric_vars = numeric_vars_of(a);
  if (p.numeric_vars.size() > static_cast<std::size_t>(kMaxEnumeration)) {
    throw LimitError("poset_below: more than " + std::to_string(kMaxEnumeration) + " numeric variables");
  }
  p.ground = ground_of(p.numeric_vars);

  const ElementSet full = p.ground.full();
  std::vector<bool> seen(std::size_t{1} << p.ground.size(), false);
  std::vector<ElementSet> found{full};
  std::deque<ElementSet> queue{full};
  seen[full.bits()] = true;
  while (!queue.empty()) {
    ElementSet s = queue.front();
    queue.pop_front();
    s.for_each([&](int e) {
      ElementSet t = s.without(e);
      if (!seen[t.bits()] && is_valid(f, p.assignment_of(t)).valid) {
        seen[t.bits()] = true;
        found.push_back(t);
        queue.push_back(t);
      }
    });
  }
  std::sort(found.begin(), found.end(), CanonicalLess{});
  p.supports = found;
  for (ElementSet s : found) p.members.push_back(p.assignment_of(s));

  SetFamily fam(p.ground, found);
  for (std::size_t i = 0; i < found.size(); ++i) {
    found[i].for_each([&](int e) {
      long j = fam.index_of(found[i].without(e));
      if (j >= 0) p.covers.push_back({i, static_cast<std::size_t>(j), p.numeric_vars[static_cast<std::size_t>(e)]});
    });
  }
  return p;
}

RemovalRule whitening_rule(const CnfFormula& f, const PartialAssignment& a) {
  require_valid(f, a, "whitening_rule");
  auto vars = numeric_vars_of(a);
  GroundSet ground = ground_of(vars);
  return RemovalRule(
      ground,
      [f, a, vars](ElementSet current, int e) {
        PartialAssignment b = restrict_to(a, vars, current);
        return is_valid(f, b.starred(vars[static_cast<std::size_t>(e)])).valid;
      },
      "whitening");
}

std::vector<RootedSet> unique_satisfied_rooted_sets(const CnfFormula& f, const PartialAssignment& a) {
  require_size(f, a);
  auto vars = numeric_vars_of(a);
  std::vector<int> position(static_cast<std::size_t>(f.num_vars), -1);
  for (std::size_t i = 0; i < vars.size(); ++i) position[static_cast<std::size_t>(vars[i])] = static_cast<int>(i);

  std::vector<RootedSet> out;
  for (const auto& clause : f.clauses) {
    auto s = evaluate(clause, a);
    if (s.satisfied != 1 || s.stars != 0) continue;
    ElementSet set;
    int root = -1;
    for (int lit : clause) {
      const int var = std::abs(lit) - 1;
      const int pos = position[static_cast<std::size_t>(var)];
      set = set.with(pos);
      if ((lit > 0) == (a[var] == Value::One)) root = pos;
    }
    out.emplace_back(set, root);
  }
  std::sort(out.begin(), out.end(), rooted_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConvexGeometry geometry_from_assignment(const CnfFormula& f, const PartialAssignment& a) {
  require_valid(f, a, "geometry_from_assignment");
  auto rooted = unique_satisfied_rooted_sets(f, a);
  return generate_from_circuits(rooted, ground_of(numeric_vars_of(a)));
}

double weight(const CnfFormula& f, const PartialAssignment& b, const WeightVector& w) {
  if (w.size() != f.num_vars) throw PreconditionError("weight vector size does not match the formula");
  auto c = classify_vars(f, b);
  std::vector<char> unconstrained(static_cast<std::size_t>(f.num_vars), 0);
  for (int i : c.unconstrained) unconstrained[static_cast<std::size_t>(i)] = 1;
  double t = 1.0;
  for (int i = 0; i < f.num_vars; ++i) {
    if (b.is_star(i)) {
      t *= w.p(i);
    } else if (unconstrained[static_cast<std::size_t>(i)]) {
      t *= w.q(i);
    }
  }
  return t;
}

double verify_sat_identity(const CnfFormula& f, const PartialAssignment& a, const WeightVector& w) {
  if (w.size() != f.num_vars) throw PreconditionError("weight vector size does not match the formula");
  SatPoset p = poset_below(f, a);
  std::vector<double> terms;
  terms.reserve(p.members.size());
  for (const auto& b : p.members) {
    double t = 1.0;
    for (int var : p.numeric_vars) {
      if (b.is_star(var)) {
        t *= w.p(var);
      } else if (is_valid(f, b.starred(var)).valid) {
        t *= w.q(var);
      }
    }
    terms.push_back(t);
  }
  return pairwise_sum(terms);
}

double total_weight(const CnfFormula& f, const WeightVector& w) {
  const int n = f.num_vars;
  if (n > 12) throw LimitError("total_weight: 3^n enumeration limited to n <= 12");
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= 3;
  std::vector<double> terms;
  std::vector<Value> values(static_cast<std::size_t>(n));
  for (std::size_t code = 0; code < count; ++code) {
    std::size_t c = code;
    for (int i = 0; i < n; ++i, c /= 3) values[static_cast<std::size_t>(i)] = static_cast<Value>(c % 3);
    PartialAssignment b(values);
    if (is_valid(f, b).valid) terms.push_back(weight(f, b, w));
  }
  return pairwise_sum(terms);
}

PartialAssignment core(const CnfFormula& f, const PartialAssignment& a, std::uint64_t seed) {
  require_valid(f, a, "core");
  Rng rng(seed);
  PartialAssignment cur = a;
  for (;;) {
    auto c = classify_vars(f, cur);
    if (c.unconstrained.empty()) return cur;
    cur = cur.starred(c.unconstrained[rng.below(c.unconstrained.size())]);
  }
}

IntersectionWitness geometry_intersection_witness(const CnfFormula& f, const PartialAssignment& a,
                                                  const PartialAssignment& b) {
  require_size(f, a);
  require_size(f, b);
  auto below = [&](const PartialAssignment& x) {
    SatPoset p = poset_below(f, x);
    return std::set<PartialAssignment>(p.members.begin(), p.members.end());
  };
  auto pa = below(a);
  auto pb = below(b);
  std::vector<PartialAssignment> common;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
  if (common.empty()) {
    throw PreconditionError("the posets below " + a.str() + " and " + b.str() + " do not intersect");
  }

  auto numeric = [](const PartialAssignment& x) {
    ElementSet s;
    for (int i = 0; i < x.size(); ++i) {
      if (!x.is_star(i)) s = s.with(i);
    }
    return s;
  };
  std::vector<PartialAssignment> maximal;
  for (const auto& x : common) {
    bool dominated = std::any_of(common.begin(), common.end(),
                                 [&](const PartialAssignment& y) { return numeric(x).proper_subset_of(numeric(y)); });
    if (!dominated) maximal.push_back(x);
  }
  if (maximal.size() != 1) {
    throw ConsistencyError("intersection has " + std::to_string(maximal.size()) + " maximal assignments");
  }

  IntersectionWitness w;
  w.c = maximal.front();
  std::vector<Value> pattern(a.values());
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) pattern[static_cast<std::size_t>(i)] = Value::Star;
  }
  w.pattern = PartialAssignment(std::move(pattern));
  auto pc = below(w.c);
  w.check = std::vector<PartialAssignment>(pc.begin(), pc.end()) == common;
  return w;
}

CnfFormula random_kcnf(int num_vars, int num_clauses, int k, Rng& rng,
                       const std::optional<PartialAssignment>& planted) {
  if (k < 1 || k > num_vars) throw PreconditionError("clause width must be in 1..num_vars");
  if (planted && planted->size() != num_vars) throw PreconditionError("planted assignment size mismatch");
  std::vector<int> vars(static_cast<std::size_t>(num_vars));
  std::vector<std::vector<int>> clauses;
  while (static_cast<int>(clauses.size()) < num_clauses) {
    std::iota(vars.begin(), vars.end(), 1);
    std::vector<int> clause;
    bool satisfied = false;
    for (int j = 0; j < k; ++j) {
      std::size_t pick = static_cast<std::size_t>(j) + rng.below(static_cast<std::uint64_t>(num_vars - j));
      std::swap(vars[static_cast<std::size_t>(j)], vars[pick]);
      int v = vars[static_cast<std::size_t>(j)];
      int lit = rng.coin(0.5) ? v : -v;
      clause.push_back(lit);
      if (planted && (lit > 0) == ((*planted)[v - 1] == Value::One)) satisfied = true;
    }
    if (planted && !satisfied) continue;
    clauses.push_back(std::move(clause));
  }
  return CnfFormula(num_vars, std::move(clauses));
}

PartialAssignment random_full_assignment(int n, Rng& rng) {
  std::vector<Value> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng.coin(0.5) ? Value::One : Value::Zero;
  return PartialAssignment(std::move(v));
}

}  // namespace prunix
