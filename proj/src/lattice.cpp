#include "prunix/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "prunix/parallel.hpp"

namespace prunix {

std::size_t ClosedSetLattice::index_of(ElementSet s) const {
  long i = elements_.index_of(s);
  if (i < 0) throw ConsistencyError(elements_.ground().format(s) + " is not a lattice element");
  return static_cast<std::size_t>(i);
}

std::size_t ClosedSetLattice::meet(std::size_t a, std::size_t b) const { return index_of(at(a) & at(b)); }

std::size_t ClosedSetLattice::join(std::size_t a, std::size_t b) const {
  const ElementSet u = at(a) | at(b);
  ElementSet j = elements_.ground().full();
  for (ElementSet c : elements_) {
    if (u.subset_of(c)) j = j & c;
  }
  return index_of(j);
}

void ClosedSetLattice::set_covers(std::vector<std::pair<std::size_t, std::size_t>> covers) {
  std::sort(covers.begin(), covers.end());
  covers_ = std::move(covers);
  lower_.assign(elements_.size(), {});
  for (auto [up, low] : covers_) lower_[up].push_back(low);
}

ClosedSetLattice build_lattice(const ConvexGeometry& g) {
  ClosedSetLattice l;
  l.elements_ = g.family();
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < l.size(); ++i) {
    const ElementSet a = l.at(i);
    a.for_each([&](int e) {
      long j = l.elements_.index_of(a.without(e));
      if (j >= 0) covers.emplace_back(i, static_cast<std::size_t>(j));
    });
  }
  l.set_covers(std::move(covers));
  return l;
}

ClosedSetLattice build_lattice(const SetFamily& f) {
  if (!f.contains(f.ground().full())) throw PreconditionError("build_lattice: family does not contain E");
  for (ElementSet a : f) {
    for (ElementSet b : f) {
      if (!f.contains(a & b)) throw PreconditionError("build_lattice: family is not closed under intersection");
    }
  }
  ClosedSetLattice l;
  l.elements_ = f;
  const auto& m = f.members();
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (!m[j].proper_subset_of(m[i])) continue;
      bool between = false;
      for (std::size_t k = 0; k < m.size() && !between; ++k) {
        between = m[j].proper_subset_of(m[k]) && m[k].proper_subset_of(m[i]);
      }
      if (!between) covers.emplace_back(i, j);
    }
  }
  l.set_covers(std::move(covers));
  return l;
}

AxiomReport is_meet_distributive(const ClosedSetLattice& l) {
  AxiomReport report;
  const GroundSet& g = l.elements().ground();
  for (std::size_t x = 0; x < l.size(); ++x) {
    if (x == l.bottom()) continue;
    const ElementSet top = l.at(x);
    ElementSet m = top;
    for (std::size_t y : l.lower_covers(x)) m = m & l.at(y);
    const ElementSet::Bits free_bits = (top - m).bits();
    for (ElementSet::Bits r = free_bits;; r = (r - 1) & free_bits) {
      const ElementSet d(m.bits() | r);
      if (!l.elements().contains(d)) {
        report.violations.push_back({"meet-distributive", {top, m, d}, {}, {},
                                     "[" + g.format(m) + ", " + g.format(top) + "] is not Boolean: " + g.format(d) +
                                         " is missing"});
        return report;
      }
      if (r == 0) break;
    }
  }
  return report;
}

namespace {

std::vector<std::size_t> join_table(const ClosedSetLattice& l) {
  const std::size_t n = l.size();
  std::vector<std::size_t> table(n * n);
  parallel_blocks(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      for (std::size_t b = a; b < n; ++b) table[a * n + b] = table[b * n + a] = l.join(a, b);
    }
  });
  return table;
}

}  // namespace

AxiomReport is_distributive(const ClosedSetLattice& l) {
  const std::size_t n = l.size();
  if (n > kMaxDistributiveElements) {
    throw LimitError("is_distributive: " + std::to_string(n) + " elements exceed " +
                     std::to_string(kMaxDistributiveElements));
  }
  auto jt = join_table(l);
  auto join = [&](std::size_t a, std::size_t b) { return jt[a * n + b]; };
  auto meet = [&](std::size_t a, std::size_t b) { return l.meet(a, b); };
  auto fails_at = [&](std::size_t x, std::size_t& y_out, std::size_t& z_out) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) {
          y_out = y;
          z_out = z;
          return true;
        }
      }
    }
    return false;
  };
  AxiomReport report;
  std::size_t y = 0, z = 0;
  if (auto x = find_first(n, [&](std::size_t x) {
        std::size_t a, b;
        return fails_at(x, a, b);
      })) {
    fails_at(*x, y, z);
    const GroundSet& g = l.elements().ground();
    report.violations.push_back({"distributive", {l.at(*x), l.at(y), l.at(z)}, {}, {},
                                 "x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z) at x=" + g.format(l.at(*x)) +
                                     ", y=" + g.format(l.at(y)) + ", z=" + g.format(l.at(z))});
  }
  return report;
}

AxiomReport is_k_distributive(const ClosedSetLattice& l, int k) {
  if (k < 1) throw PreconditionError("is_k_distributive needs k >= 1");
  const std::size_t n = l.size();
  const std::size_t width = static_cast<std::size_t>(k) + 1;
  if (n > 4096) throw LimitError("is_k_distributive: lattice too large for a join table");
  auto jt = join_table(l);
  auto join = [&](std::size_t a, std::size_t b) { return jt[a * n + b]; };
  std::vector<std::vector<char>> comparable(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      comparable[a][b] = l.at(a).subset_of(l.at(b)) || l.at(b).subset_of(l.at(a));
    }
  }

  std::size_t evaluations = 0;
  std::vector<std::size_t> ys;
  std::vector<std::size_t> witness;
  std::size_t witness_x = 0;

  auto law_holds = [&](std::size_t x) {
    std::size_t all = ys[0];
    for (std::size_t i = 1; i < width; ++i) all = join(all, ys[i]);
    const std::size_t lhs = l.meet(x, all);
    std::size_t rhs = l.bottom();
    for (std::size_t i = 0; i < width; ++i) {
      std::size_t rest = l.bottom();
      for (std::size_t j = 0; j < width; ++j) {
        if (j != i) rest = join(rest, ys[j]);
      }
      rhs = join(rhs, l.meet(x, rest));
    }
    return lhs == rhs;
  };

  // Antichains of y's in increasing index order, for each x.
  auto scan = [&](auto&& self, std::size_t x, std::size_t start) -> bool {
    if (ys.size() == width) {
      if (++evaluations > kMaxLawEvaluations) {
        throw LimitError("is_k_distributive: more than " + std::to_string(kMaxLawEvaluations) +
                         " law evaluations");
      }
      if (!law_holds(x)) {
        witness = ys;
        witness_x = x;
        return false;
      }
      return true;
    }
    for (std::size_t y = start; y < n; ++y) {
      bool ok = true;
      for (std::size_t prev : ys) ok = ok && !comparable[prev][y];
      if (!ok) continue;
      ys.push_back(y);
      bool fine = self(self, x, y + 1);
      ys.pop_back();
      if (!fine) return false;
    }
    return true;
  };

  AxiomReport report;
  for (std::size_t x = 0; x < n; ++x) {
    if (!scan(scan, x, 0)) {
      const GroundSet& g = l.elements().ground();
      std::vector<ElementSet> sets{l.at(witness_x)};
      std::string detail = "law fails at x=" + g.format(l.at(witness_x)) + ", y=";
      for (std::size_t i = 0; i < witness.size(); ++i) {
        sets.push_back(l.at(witness[i]));
        detail += (i ? "," : "") + g.format(l.at(witness[i]));
      }
      report.violations.push_back({std::to_string(k) + "-distributive", std::move(sets), {}, {}, detail});
      break;
    }
  }
  return report;
}

std::string export_dot(const ClosedSetLattice& l, bool edge_labels) {
  const GroundSet& g = l.elements().ground();
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=TB;\n  node [shape=box];\n";
  for (std::size_t i = l.size(); i-- > 0;) {
    out << "  n" << i << " [label=\"" << g.format(l.at(i)) << "\"];\n";
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges(l.covers().rbegin(), l.covers().rend());
  for (auto [up, low] : edges) {
    out << "  n" << up << " -> n" << low;
    if (edge_labels) {
      std::string label;
      bool first = true;
      (l.at(up) - l.at(low)).for_each([&](int e) {
        if (!first) label += ',';
        label += g.label(e);
        first = false;
      });
      out << " [label=\"" << label << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace prunix
