#include "prunix/geometry.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "prunix/parallel.hpp"

namespace prunix {

const Violation* AxiomReport::find(std::string_view axiom) const {
  for (const auto& v : violations) {
    if (v.axiom == axiom) return &v;
  }
  return nullptr;
}

std::string describe(const AxiomReport& report) {
  if (report.holds()) return "holds";
  std::ostringstream out;
  for (std::size_t i = 0; i < report.violations.size(); ++i) {
    if (i > 0) out << '\n';
    out << report.violations[i].axiom << ": " << report.violations[i].detail;
  }
  return out.str();
}

AxiomReport check_convex_geometry(const SetFamily& f) {
  AxiomReport report;
  const GroundSet& ground = f.ground();
  const ElementSet top = ground.full();
  const auto& m = f.members();

  if (!f.contains(top)) {
    report.violations.push_back({"N1", {top}, {}, {}, "E = " + ground.format(top) + " is not in the family"});
  }

  auto bad_pair_from = [&](std::size_t i) -> long {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!f.contains(m[i] & m[j])) return static_cast<long>(j);
    }
    return -1;
  };
  if (auto i = find_first(m.size(), [&](std::size_t i) { return bad_pair_from(i) >= 0; })) {
    const ElementSet a = m[*i];
    const ElementSet b = m[static_cast<std::size_t>(bad_pair_from(*i))];
    report.violations.push_back({"N2", {a, b, a & b}, {}, {},
                                 ground.format(a) + " ∩ " + ground.format(b) + " = " + ground.format(a & b) +
                                     " is not in the family"});
  }

  auto inaccessible = [&](std::size_t i) {
    const ElementSet a = m[i];
    if (a == top) return false;
    const ElementSet outside = top - a;
    bool ok = false;
    outside.for_each([&](int x) { ok = ok || f.contains(a.with(x)); });
    return !ok;
  };
  if (auto i = find_first(m.size(), inaccessible)) {
    report.violations.push_back({"N3", {m[*i]}, {}, {},
                                 "no x outside " + ground.format(m[*i]) + " with A ∪ {x} in the family"});
  }
  return report;
}

ConvexGeometry::ConvexGeometry(SetFamily f) : family_(std::move(f)) {
  auto report = check_convex_geometry(family_);
  if (!report.holds()) throw PreconditionError("not a convex geometry: " + describe(report));
}

ElementSet ConvexGeometry::closure(ElementSet a) const {
  ElementSet result = ground().full();
  for (ElementSet c : family_) {
    if (a.subset_of(c)) result = result & c;
  }
  return result;
}

ElementSet ConvexGeometry::bottom() const { return closure(ElementSet{}); }

ElementSet closure(const ConvexGeometry& g, ElementSet a) { return g.closure(a); }

ElementSet excludable(const SetFamily& f, ElementSet a) {
  if (!f.contains(a)) throw PreconditionError("excludable: " + f.ground().format(a) + " is not in the family");
  ElementSet ex;
  a.for_each([&](int x) {
    if (f.contains(a.without(x))) ex = ex.with(x);
  });
  return ex;
}

SetFamily dual(const SetFamily& f) {
  std::vector<ElementSet> out;
  out.reserve(f.size());
  for (ElementSet s : f) out.push_back(f.ground().complement(s));
  return SetFamily(f.ground(), std::move(out));
}

AxiomReport check_antimatroid_words(std::span<const SimpleWord> words, const GroundSet& ground) {
  const ElementSet universe = ground.full();
  for (const auto& w : words) {
    if (!w.support().subset_of(universe)) throw PreconditionError("word uses a letter outside the ground set");
  }
  std::set<SimpleWord> language(words.begin(), words.end());
  std::vector<SimpleWord> sorted(language.begin(), language.end());
  AxiomReport report;

  for (const auto& w : sorted) {
    bool found = false;
    for (std::size_t len = 0; len < w.size(); ++len) {
      SimpleWord p = w.prefix(len);
      if (!language.contains(p)) {
        report.violations.push_back({"L1", {}, {w, p}, {},
                                     "prefix '" + format_word(ground, p) + "' of '" + format_word(ground, w) +
                                         "' is missing"});
        found = true;
        break;
      }
    }
    if (found) break;
  }

  [&] {
    for (const auto& alpha : sorted) {
      for (const auto& beta : sorted) {
        if (beta.size() >= alpha.size()) break;
        bool ok = false;
        for (int x : alpha.letters()) {
          if (!beta.support().contains(x) && language.contains(beta.extended(x))) {
            ok = true;
            break;
          }
        }
        if (!ok) {
          report.violations.push_back({"L2", {}, {alpha, beta}, {},
                                       "no letter x of '" + format_word(ground, alpha) + "' with '" +
                                           format_word(ground, beta) + "x' in the language"});
          return;
        }
      }
    }
  }();

  // L3: alpha x and alpha beta in L, x not in beta  =>  alpha beta x in L.
  [&] {
    for (const auto& ax : sorted) {
      if (ax.empty()) continue;
      const int x = ax.letters().back();
      const SimpleWord alpha = ax.prefix(ax.size() - 1);
      for (const auto& ab : sorted) {
        if (ab.size() <= alpha.size() || ab.prefix(alpha.size()) != alpha) continue;
        if (ab.support().contains(x)) continue;
        SimpleWord abx = ab.extended(x);
        if (!language.contains(abx)) {
          report.violations.push_back({"L3", {}, {ax, ab, abx}, {x},
                                       "'" + format_word(ground, ax) + "' and '" + format_word(ground, ab) +
                                           "' are in the language but '" + format_word(ground, abx) + "' is not"});
          return;
        }
      }
    }
  }();
  return report;
}

std::vector<SimpleWord> feasible_words(const SetFamily& feasible) {
  std::vector<SimpleWord> out;
  if (!feasible.contains(ElementSet{})) return out;
  const ElementSet universe = feasible.ground().full();
  std::vector<SimpleWord> stack{SimpleWord{}};
  while (!stack.empty()) {
    SimpleWord w = std::move(stack.back());
    stack.pop_back();
    (universe - w.support()).for_each([&](int x) {
      if (feasible.contains(w.support().with(x))) stack.push_back(w.extended(x));
    });
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_full(ElementSet s, std::span<const RootedSet> rooted) {
  for (const auto& r : rooted) {
    if (r.set.without(r.root).subset_of(s) && !s.contains(r.root)) return false;
  }
  return true;
}

SetFamily full_sets(std::span<const RootedSet> rooted, const GroundSet& ground) {
  const int n = ground.size();
  if (n > kMaxEnumeration) throw LimitError("full_sets: ground set too large for enumeration");
  std::vector<ElementSet> out;
  for (ElementSet::Bits b = 0; b < (ElementSet::Bits{1} << n); ++b) {
    if (is_full(ElementSet(b), rooted)) out.emplace_back(b);
  }
  return SetFamily(ground, std::move(out));
}

namespace {

// Downward BFS from E through sets accepted by `keep`, one element at a time.
template <typename Keep>
SetFamily accessible_from_top(const GroundSet& ground, Keep keep) {
  if (ground.size() > kMaxEnumeration) throw LimitError("ground set too large for enumeration");
  const ElementSet top = ground.full();
  std::vector<bool> seen(std::size_t{1} << ground.size(), false);
  std::vector<ElementSet> out{top};
  std::deque<ElementSet> queue{top};
  seen[top.bits()] = true;
  while (!queue.empty()) {
    ElementSet s = queue.front();
    queue.pop_front();
    s.for_each([&](int e) {
      ElementSet t = s.without(e);
      if (!seen[t.bits()] && keep(t)) {
        seen[t.bits()] = true;
        out.push_back(t);
        queue.push_back(t);
      }
    });
  }
  return SetFamily(ground, std::move(out));
}

}  // namespace

ConvexGeometry generate_from_circuits(std::span<const RootedSet> rooted, const GroundSet& ground) {
  for (const auto& r : rooted) {
    if (!r.set.subset_of(ground.full())) throw PreconditionError("rooted set outside the ground set");
  }
  return ConvexGeometry(accessible_from_top(ground, [&](ElementSet s) { return is_full(s, rooted); }),
                        ConvexGeometry::Unchecked{});
}

ConvexGeometry generate_from_paths(std::span<const RootedSet> paths, const GroundSet& ground) {
  ElementSet has_path;
  for (const auto& p : paths) {
    if (!p.set.subset_of(ground.full())) throw PreconditionError("path outside the ground set");
    has_path = has_path.with(p.root);
  }
  ElementSet missing = ground.full() - has_path;
  if (!missing.empty()) {
    throw PreconditionError("E is not path-full: no path for " + ground.format(missing));
  }
  const ElementSet top = ground.full();
  auto removed_is_path_full = [&](ElementSet s) {
    const ElementSet removed = top - s;
    bool ok = true;
    removed.for_each([&](int e) {
      if (!ok) return;
      bool owns = false;
      for (const auto& p : paths) {
        if (p.root == e && p.set.subset_of(removed)) {
          owns = true;
          break;
        }
      }
      ok = owns;
    });
    return ok;
  };
  return ConvexGeometry(accessible_from_top(ground, removed_is_path_full), ConvexGeometry::Unchecked{});
}

bool is_free(const ConvexGeometry& g, ElementSet a) {
  return excludable(g.family(), g.closure(a)) == a;
}

std::vector<RootedSet> rooted_circuits(const ConvexGeometry& g) {
  const GroundSet& ground = g.ground();
  const int n = ground.size();
  if (n > kMaxEnumeration) throw LimitError("rooted_circuits: ground set too large for enumeration");
  const std::size_t count = std::size_t{1} << n;
  std::vector<char> free(count, 0);
  std::vector<RootedSet> out;
  // Subsets A - a have smaller bit patterns than A, so one increasing pass
  // sees every immediate subset before the set itself.
  for (std::size_t b = 0; b < count; ++b) {
    const ElementSet a(static_cast<ElementSet::Bits>(b));
    free[b] = is_free(g, a) ? 1 : 0;
    if (free[b]) continue;
    bool minimal = true;
    a.for_each([&](int x) { minimal = minimal && free[a.without(x).bits()]; });
    if (!minimal) continue;
    std::vector<int> roots;
    a.for_each([&](int x) {
      if (g.closure(a.without(x)).contains(x)) roots.push_back(x);
    });
    if (roots.size() != 1) {
      throw ConsistencyError("circuit " + ground.format(a) + " has " + std::to_string(roots.size()) +
                             " candidate roots; the family is not a convex geometry");
    }
    out.emplace_back(a, roots.front());
  }
  std::sort(out.begin(), out.end(), rooted_less);
  return out;
}

std::string format_rooted(const GroundSet& ground, const RootedSet& r) {
  return "(" + ground.format(r.set) + ", " + ground.label(r.root) + ")";
}

}  // namespace prunix
