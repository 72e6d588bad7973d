#pragma once

// Filtered knot chain complexes: the complex of the three-sphere together
// with the Alexander filtration a knot induces on it.

#include <algorithm>
#include <compare>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hfkcable/errors.hpp"
#include "hfkcable/homalg.hpp"

namespace hfk {

struct Generator {
  std::string id;
  int maslov = 0;
  int alexander = 0;

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// d(from) contains coefficient * (to).
struct Edge {
  std::string from;
  std::string to;
  Int coefficient = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Generators sorted by id; edges sorted by (from, to) with parallel edges
/// merged and zero coefficients dropped. Duplicate ids are kept so that
/// validate() can report them.
class FilteredComplex {
 public:
  FilteredComplex() = default;

  FilteredComplex(std::string name, std::vector<Generator> generators, std::vector<Edge> edges)
      : name_(std::move(name)), generators_(std::move(generators)) {
    std::stable_sort(generators_.begin(), generators_.end(),
                     [](const Generator& a, const Generator& b) { return a.id < b.id; });
    std::map<std::pair<std::string, std::string>, Int> merged;
    for (auto& e : edges) merged[{e.from, e.to}] += e.coefficient;
    for (auto& [k, c] : merged)
      if (c != 0) edges_.push_back(Edge{k.first, k.second, c});
  }

  const std::string& name() const { return name_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return generators_.size(); }
  bool empty() const { return generators_.empty(); }

  const Generator* find(const std::string& id) const {
    auto it = std::lower_bound(generators_.begin(), generators_.end(), id,
                               [](const Generator& g, const std::string& k) { return g.id < k; });
    return (it != generators_.end() && it->id == id) ? &*it : nullptr;
  }

  int max_alexander() const {
    int m = generators_.empty() ? 0 : generators_.front().alexander;
    for (const auto& g : generators_) m = std::max(m, g.alexander);
    return m;
  }
  int min_alexander() const {
    int m = generators_.empty() ? 0 : generators_.front().alexander;
    for (const auto& g : generators_) m = std::min(m, g.alexander);
    return m;
  }

  // Subcomplex (or quotient) spanned by the generators satisfying keep,
  // with every edge that leaves the span deleted.
  template <typename Pred>
  FilteredComplex restricted(std::string name, Pred keep) const {
    std::vector<Generator> gens;
    std::set<std::string> ids;
    for (const auto& g : generators_)
      if (keep(g)) {
        gens.push_back(g);
        ids.insert(g.id);
      }
    std::vector<Edge> es;
    for (const auto& e : edges_)
      if (ids.count(e.from) && ids.count(e.to)) es.push_back(e);
    return FilteredComplex(std::move(name), std::move(gens), std::move(es));
  }

  friend bool operator==(const FilteredComplex&, const FilteredComplex&) = default;

 private:
  std::string name_;
  std::vector<Generator> generators_;
  std::vector<Edge> edges_;
};

struct Bigrading {
  int alexander = 0;
  int maslov = 0;

  friend auto operator<=>(const Bigrading&, const Bigrading&) = default;
};

/// (Alexander, Maslov) -> abelian group, finitely supported, no zero entries.
class HFKTable {
 public:
  HFKTable() = default;

  void set(int alexander, int maslov, const AbelianGroup& g) {
    if (g.is_zero())
      entries_.erase({alexander, maslov});
    else
      entries_[{alexander, maslov}] = g;
  }

  AbelianGroup at(int alexander, int maslov) const {
    auto it = entries_.find({alexander, maslov});
    return it == entries_.end() ? AbelianGroup{} : it->second;
  }

  GradedGroup row(int alexander) const {
    GradedGroup out;
    for (auto it = entries_.lower_bound({alexander, std::numeric_limits<int>::min()});
         it != entries_.end() && it->first.alexander == alexander; ++it)
      out.set(it->first.maslov, it->second);
    return out;
  }

  // Writes every group of row into Alexander grading `alexander`, replacing
  // whatever was there.
  void set_row(int alexander, const GradedGroup& row) {
    erase_row(alexander);
    for (const auto& [m, g] : row) set(alexander, m, g);
  }

  void erase_row(int alexander) {
    auto lo = entries_.lower_bound({alexander, std::numeric_limits<int>::min()});
    auto hi = entries_.upper_bound({alexander, std::numeric_limits<int>::max()});
    entries_.erase(lo, hi);
  }

  std::set<int> alexander_support() const {
    std::set<int> s;
    for (const auto& [k, g] : entries_) s.insert(k.alexander);
    return s;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::map<Bigrading, AbelianGroup>& entries() const { return entries_; }
  bool has_torsion() const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const auto& kv) { return kv.second.has_torsion(); });
  }

  friend bool operator==(const HFKTable&, const HFKTable&) = default;

 private:
  std::map<Bigrading, AbelianGroup> entries_;
};

// ---------------------------------------------------------------------------
// Homology

namespace detail {

// Boundary matrices of a complex, grouped by Maslov grading. Assumes every
// edge drops the Maslov grading by exactly one.
struct GradedChains {
  std::map<int, std::vector<std::string>> basis;             // maslov -> ids
  std::map<int, std::map<std::string, std::size_t>> index;  // maslov -> id -> position

  explicit GradedChains(const FilteredComplex& c) {
    for (const auto& g : c.generators()) {
      auto& b = basis[g.maslov];
      index[g.maslov][g.id] = b.size();
      b.push_back(g.id);
    }
  }

  std::size_t dim(int m) const {
    auto it = basis.find(m);
    return it == basis.end() ? 0 : it->second.size();
  }

  // The map C_m -> C_{m-1}.
  IntMatrix boundary(const FilteredComplex& c, int m) const {
    IntMatrix d(dim(m - 1), dim(m));
    if (d.rows() == 0 || d.cols() == 0) return d;
    const auto& src = index.at(m);
    const auto& dst = index.at(m - 1);
    for (const auto& e : c.edges()) {
      auto s = src.find(e.from);
      if (s == src.end()) continue;
      auto t = dst.find(e.to);
      if (t == dst.end()) continue;
      d.add(t->second, s->second, e.coefficient);
    }
    return d;
  }
};

}  // namespace detail

/// Homology of the whole complex, by Maslov grading.
inline GradedGroup graded_homology(const FilteredComplex& c) {
  for (const auto& e : c.edges()) {
    const auto* f = c.find(e.from);
    const auto* t = c.find(e.to);
    if (!f || !t || f->maslov - t->maslov != 1)
      throw InvalidComplex("edge " + e.from + " -> " + e.to +
                           " does not drop the Maslov grading by one");
  }
  detail::GradedChains chains(c);
  GradedGroup out;
  for (const auto& [m, ids] : chains.basis)
    out.set(m, chain_homology(chains.boundary(c, m + 1), chains.boundary(c, m)));
  return out;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> offenders;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  std::string summary() const {
    std::string s;
    for (const auto& c : checks) {
      if (c.passed) continue;
      if (!s.empty()) s += "; ";
      s += c.name + " failed";
      if (!c.offenders.empty()) {
        s += " (";
        for (std::size_t i = 0; i < c.offenders.size(); ++i)
          s += (i ? ", " : "") + c.offenders[i];
        s += ")";
      }
    }
    return s.empty() ? "ok" : s;
  }
};

namespace check_names {
inline constexpr const char* unique_ids = "generator ids unique";
inline constexpr const char* endpoints = "edge endpoints exist";
inline constexpr const char* d_squared = "d^2 = 0";
inline constexpr const char* maslov_drop = "edges drop Maslov by 1";
inline constexpr const char* filtration = "filtration never increases";
inline constexpr const char* total_homology = "total homology is Z in Maslov 0";
}  // namespace check_names

/// Checks the structural and knot-complex invariants. Never throws.
inline ValidationReport validate(const FilteredComplex& c) {
  ValidationReport report;
  const auto edge_label = [](const Edge& e) { return e.from + "->" + e.to; };

  ValidationCheck ids{check_names::unique_ids};
  for (std::size_t i = 1; i < c.generators().size(); ++i)
    if (c.generators()[i].id == c.generators()[i - 1].id) {
      ids.passed = false;
      ids.offenders.push_back(c.generators()[i].id);
    }
  report.checks.push_back(ids);

  ValidationCheck endpoints{check_names::endpoints};
  for (const auto& e : c.edges())
    if (!c.find(e.from) || !c.find(e.to)) {
      endpoints.passed = false;
      endpoints.offenders.push_back(edge_label(e));
    }
  report.checks.push_back(endpoints);

  ValidationCheck dsq{check_names::d_squared};
  {
    std::map<std::string, std::vector<const Edge*>> out_edges;
    for (const auto& e : c.edges()) out_edges[e.from].push_back(&e);
    for (const auto& [src, first] : out_edges) {
      std::map<std::string, Int> image;
      for (const Edge* e1 : first) {
        auto it = out_edges.find(e1->to);
        if (it == out_edges.end()) continue;
        for (const Edge* e2 : it->second) image[e2->to] += e1->coefficient * e2->coefficient;
      }
      for (const auto& [dst, coeff] : image)
        if (coeff != 0) {
          dsq.passed = false;
          dsq.offenders.push_back(src + "->->" + dst + " (" + coeff.str() + ")");
        }
    }
  }
  report.checks.push_back(dsq);

  ValidationCheck drop{check_names::maslov_drop};
  ValidationCheck filt{check_names::filtration};
  for (const auto& e : c.edges()) {
    const auto* f = c.find(e.from);
    const auto* t = c.find(e.to);
    if (!f || !t) continue;
    if (f->maslov - t->maslov != 1) {
      drop.passed = false;
      drop.offenders.push_back(edge_label(e));
    }
    if (t->alexander > f->alexander) {
      filt.passed = false;
      filt.offenders.push_back(edge_label(e));
    }
  }
  report.checks.push_back(drop);
  report.checks.push_back(filt);

  ValidationCheck total{check_names::total_homology};
  if (!(ids.passed && endpoints.passed && dsq.passed && drop.passed)) {
    total.passed = false;
    total.offenders.emplace_back("not evaluated: complex is malformed");
  } else {
    GradedGroup expected;
    expected.set(0, AbelianGroup::free(1));
    GradedGroup h = graded_homology(c);
    if (!(h == expected)) {
      total.passed = false;
      total.offenders.push_back("homology is " + h.to_string());
    }
  }
  report.checks.push_back(total);
  return report;
}

inline void require_valid(const FilteredComplex& c) {
  auto report = validate(c);
  if (!report.ok())
    throw InvalidComplex("complex '" + c.name() + "' is invalid: " + report.summary());
}

// ---------------------------------------------------------------------------
// Filtration levels

/// Span of generators with Alexander grading <= j.
inline FilteredComplex filtration_subcomplex(const FilteredComplex& c, int j) {
  return c.restricted(c.name() + " F<=" + std::to_string(j),
                      [j](const Generator& g) { return g.alexander <= j; });
}

/// C / F(C, j): generators with Alexander grading > j.
inline FilteredComplex quotient_complex(const FilteredComplex& c, int j) {
  return c.restricted(c.name() + " / F<=" + std::to_string(j),
                      [j](const Generator& g) { return g.alexander > j; });
}

inline GradedGroup filtration_homology(const FilteredComplex& c, int j) {
  return graded_homology(filtration_subcomplex(c, j));
}

inline GradedGroup quotient_homology(const FilteredComplex& c, int j) {
  return graded_homology(quotient_complex(c, j));
}

/// Homology of the associated graded complex: one Alexander level at a time,
/// keeping only the edges that preserve the Alexander grading.
inline HFKTable associated_graded(const FilteredComplex& c) {
  std::map<int, std::vector<Generator>> levels;
  for (const auto& g : c.generators()) levels[g.alexander].push_back(g);
  HFKTable table;
  for (const auto& [a, gens] : levels) {
    std::vector<Edge> es;
    for (const auto& e : c.edges()) {
      const auto* f = c.find(e.from);
      const auto* t = c.find(e.to);
      if (f && t && f->alexander == a && t->alexander == a) es.push_back(e);
    }
    FilteredComplex level(c.name(), gens, std::move(es));
    for (const auto& [m, g] : graded_homology(level)) table.set(a, m, g);
  }
  return table;
}

/// Largest Alexander grading carrying a nonzero group. For knots this is
/// the genus, so the unknot gets 0.
inline int degree(const HFKTable& t) {
  if (t.empty()) throw EmptyTable("degree of an empty table");
  return t.entries().rbegin()->first.alexander;
}

/// group(i, m) == group(-i, m - 2i) for every bigrading.
inline bool symmetry_check(const HFKTable& t) {
  for (const auto& [k, g] : t.entries())
    if (!(t.at(-k.alexander, k.maslov - 2 * k.alexander) == g)) return false;
  return true;
}

/// Completes a table known on one side of i = 0 by the conjugation symmetry.
/// Rows present on both sides must already agree; row 0 is left as is.
inline HFKTable symmetrize_table(const HFKTable& half) {
  HFKTable out = half;
  for (int a : half.alexander_support()) {
    if (a == 0) continue;
    GradedGroup reflected = half.row(a).shifted(-2 * a);
    GradedGroup existing = half.row(-a);
    if (existing.is_zero()) {
      out.set_row(-a, reflected);
    } else if (!(existing == reflected)) {
      throw ConflictingEntry("row " + std::to_string(-a) + " is " + existing.to_string() +
                             " but the reflection of row " + std::to_string(a) + " gives " +
                             reflected.to_string());
    }
  }
  return out;
}

/// Dual complex: gradings negated and the differential transposed. For
/// complexes with torsion in homology this is the cochain dual.
inline FilteredComplex mirror(const FilteredComplex& c) {
  std::vector<Generator> gens;
  for (const auto& g : c.generators()) gens.push_back({g.id, -g.maslov, -g.alexander});
  std::vector<Edge> es;
  for (const auto& e : c.edges()) es.push_back({e.to, e.from, e.coefficient});
  std::string name = c.name();
  const std::string prefix = "mirror(";
  if (name.rfind(prefix, 0) == 0 && name.back() == ')')
    name = name.substr(prefix.size(), name.size() - prefix.size() - 1);
  else
    name = prefix + name + ")";
  return FilteredComplex(std::move(name), std::move(gens), std::move(es));
}

/// True when any filtration level or the associated graded carries torsion.
inline bool filtration_has_torsion(const FilteredComplex& c) {
  if (associated_graded(c).has_torsion()) return true;
  for (int j = c.min_alexander(); j <= c.max_alexander(); ++j)
    if (filtration_homology(c, j).has_torsion() || quotient_homology(c, j).has_torsion())
      return true;
  return false;
}

inline FilteredComplex unknot_complex() {
  return FilteredComplex("unknot", {{"x0", 0, 0}}, {});
}

}  // namespace hfk
