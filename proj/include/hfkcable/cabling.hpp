#pragma once

// HFK of (p, pn+1) cables computed from the filtered complex of the
// companion knot, valid once |n| is large.
//
// Indexing: for n > 0 the cable's row i = D - p*k carries H(F(K, k-d)) with
// every Maslov grading lowered by 2(k-d), and row i-1 the same lowered by one
// more; D = p*d + (p-1)*p*n/2. For n < 0 the roles of subcomplex and quotient
// swap: row i = p*k - D carries H(C / F(K, d-k-1)) lowered by 2(d-k), row
// i+1 the same raised by one, with D = p*d + (p-1)(p|n|-2)/2.

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "hfkcable/errors.hpp"
#include "hfkcable/knotcx.hpp"

namespace hfk {

struct CableParams {
  int p = 2;
  int n = 0;
  std::optional<int> c_prime;
  bool large_n_override = false;
};

/// Rows of a cable table that the large-n formulas determine.
struct ValidRange {
  enum class Side { all, above, below };
  Side side = Side::all;
  int threshold = 0;

  bool contains(int alexander) const {
    switch (side) {
      case Side::all:
        return true;
      case Side::above:
        return alexander > threshold;
      case Side::below:
        return alexander < threshold;
    }
    return false;
  }

  std::string describe() const {
    switch (side) {
      case Side::all:
        return "all i";
      case Side::above:
        return "i > " + std::to_string(threshold);
      case Side::below:
        return "i < " + std::to_string(threshold);
    }
    return "";
  }
};

struct CableAssumptions {
  int heuristic_n_bound = 0;  // N = 2 * deg HFK(K)
  bool large_n_satisfied = false;
  bool large_n_override = false;
  bool conjectural = false;
  std::optional<int> c_prime;
  bool torsion_present = false;
  std::vector<std::string> warnings;
};

struct PartialHFKTable {
  std::string name;
  HFKTable table;
  ValidRange valid_range;
  CableAssumptions assumptions;
  int p = 2;
  int n = 0;
  int companion_degree = 0;
  int degree = 0;  // predicted degree of the cable
};

struct TopGroups {
  GradedGroup top;
  GradedGroup next;
  int degree = 0;
};

inline int cable_degree(int d, int p, int n) {
  if (p < 2) throw InvalidParameter("cable needs p >= 2");
  if (n == 0) throw InvalidParameter("cable needs n != 0");
  if (n > 0) return p * d + (p - 1) * p * n / 2;
  return p * d + (p - 1) * (p * std::abs(n) - 2) / 2;
}

/// c(c', n, p) = p*d + (p-1)*p*n/2 - p*(n - c') - 1 for n > 0. For n < 0 the
/// spiral has two exterior points fewer, so |n| - 1 takes the place of n and
/// the n < 0 degree is used; the determined rows are then i < -c.
inline int threshold_c(int d, int p, int n, int c_prime) {
  if (c_prime < 0) throw InvalidParameter("c' must be nonnegative");
  const int windings = n > 0 ? n : std::abs(n) - 1;
  return cable_degree(d, p, n) - p * (windings - c_prime) - 1;
}

namespace detail {

struct Companion {
  HFKTable hfk;
  int degree = 0;
};

inline Companion analyze_companion(const FilteredComplex& c) {
  require_valid(c);
  Companion out;
  out.hfk = associated_graded(c);
  out.degree = degree(out.hfk);
  return out;
}

inline CableAssumptions make_assumptions(const FilteredComplex& c, int d, const CableParams& params) {
  CableAssumptions a;
  a.heuristic_n_bound = 2 * d;
  a.large_n_satisfied = std::abs(params.n) > a.heuristic_n_bound;
  a.large_n_override = params.large_n_override;
  a.conjectural = !a.large_n_satisfied;
  a.c_prime = params.c_prime;
  if (!a.large_n_satisfied && !params.large_n_override)
    a.warnings.push_back("large-n hypothesis unverified: |n| = " + std::to_string(std::abs(params.n)) +
                         " <= N = " + std::to_string(a.heuristic_n_bound) +
                         "; values are conjectural");
  a.torsion_present = filtration_has_torsion(c);
  if (a.torsion_present)
    a.warnings.push_back("filtration homology has torsion; it is carried through unchanged");
  return a;
}

inline void check_params(const CableParams& params, bool need_c_prime) {
  if (params.p < 2) throw InvalidParameter("cable needs p >= 2");
  if (params.n == 0) throw InvalidParameter("cable needs n != 0");
  if (need_c_prime && !params.c_prime)
    throw MissingCPrime("p = " + std::to_string(params.p) + " needs the constant c'");
  if (params.c_prime && *params.c_prime < 0) throw InvalidParameter("c' must be nonnegative");
}

inline std::string cable_name(const FilteredComplex& c, int p, int n) {
  return "(" + c.name() + ")_{" + std::to_string(p) + "," + std::to_string(p * n + 1) + "}";
}

// Rows i >= lowest (exclusive bound when strict) of the n > 0 formula.
inline HFKTable positive_rows(const FilteredComplex& c, int d, int p, int n, int lowest_allowed) {
  HFKTable t;
  const int top = cable_degree(d, p, n);
  for (int k = 0;; ++k) {
    const int i = top - p * k;
    if (i < lowest_allowed) break;
    const GradedGroup h = filtration_homology(c, k - d);
    t.set_row(i, h.shifted(-2 * (k - d)));
    if (i - 1 >= lowest_allowed) t.set_row(i - 1, h.shifted(-2 * (k - d) - 1));
  }
  return t;
}

// Rows i <= highest_allowed of the n < 0 formula.
inline HFKTable negative_rows(const FilteredComplex& c, int d, int p, int n, int highest_allowed) {
  HFKTable t;
  const int bottom = -cable_degree(d, p, n);
  for (int k = 0;; ++k) {
    const int i = bottom + p * k;
    if (i > highest_allowed) break;
    const GradedGroup q = quotient_homology(c, d - k - 1);
    t.set_row(i, q.shifted(-2 * (d - k)));
    if (i + 1 <= highest_allowed) t.set_row(i + 1, q.shifted(-2 * (d - k) + 1));
  }
  return t;
}

}  // namespace detail

/// Full HFK table of the (2, 2n+1) cable, n > 0: rows i >= 0 from the
/// formula, the rest by the conjugation symmetry.
inline PartialHFKTable cable2_hfk(const FilteredComplex& c, int n, bool large_n_override = false) {
  CableParams params{2, n, std::nullopt, large_n_override};
  detail::check_params(params, false);
  if (n < 0) throw InvalidParameter("cable2_hfk needs n > 0; use cablep_neg_hfk");
  const auto comp = detail::analyze_companion(c);
  PartialHFKTable out;
  out.name = detail::cable_name(c, 2, n);
  out.p = 2;
  out.n = n;
  out.companion_degree = comp.degree;
  out.degree = cable_degree(comp.degree, 2, n);
  out.assumptions = detail::make_assumptions(c, comp.degree, params);
  out.table = symmetrize_table(detail::positive_rows(c, comp.degree, 2, n, 0));
  out.valid_range = {ValidRange::Side::all, 0};
  return out;
}

/// Rows i > c(c', n, p) of the (p, pn+1) cable, n > 0. Rows in that range
/// not of the form D - p*k or D - p*k - 1 are zero and stored as absent.
inline PartialHFKTable cablep_hfk(const FilteredComplex& c, const CableParams& params) {
  detail::check_params(params, params.p > 2);
  if (params.n < 0) throw InvalidParameter("cablep_hfk needs n > 0; use cablep_neg_hfk");
  const auto comp = detail::analyze_companion(c);
  const int c_prime = params.c_prime.value_or(0);
  const int threshold = threshold_c(comp.degree, params.p, params.n, c_prime);
  PartialHFKTable out;
  out.name = detail::cable_name(c, params.p, params.n);
  out.p = params.p;
  out.n = params.n;
  out.companion_degree = comp.degree;
  out.degree = cable_degree(comp.degree, params.p, params.n);
  out.assumptions = detail::make_assumptions(c, comp.degree, params);
  out.assumptions.c_prime = c_prime;
  out.table = detail::positive_rows(c, comp.degree, params.p, params.n, threshold + 1);
  out.valid_range = {ValidRange::Side::above, threshold};
  return out;
}

/// The (p, pn+1) cable for n < 0: rows i < -c(c', n, p) for p > 2, the full
/// table (rows i <= 0 plus symmetry) for p = 2.
inline PartialHFKTable cablep_neg_hfk(const FilteredComplex& c, const CableParams& params) {
  detail::check_params(params, params.p > 2);
  if (params.n > 0) throw InvalidParameter("cablep_neg_hfk needs n < 0; use cablep_hfk");
  const auto comp = detail::analyze_companion(c);
  const int c_prime = params.c_prime.value_or(0);
  const int threshold = threshold_c(comp.degree, params.p, params.n, c_prime);
  PartialHFKTable out;
  out.name = detail::cable_name(c, params.p, params.n);
  out.p = params.p;
  out.n = params.n;
  out.companion_degree = comp.degree;
  out.degree = cable_degree(comp.degree, params.p, params.n);
  out.assumptions = detail::make_assumptions(c, comp.degree, params);
  out.assumptions.c_prime = c_prime;
  if (params.p == 2) {
    if (threshold >= 0)
      out.assumptions.warnings.push_back("threshold c = " + std::to_string(threshold) +
                                         " is not negative; rows near i = 0 are unproven");
    out.table = symmetrize_table(detail::negative_rows(c, comp.degree, 2, params.n, 0));
    out.valid_range = {ValidRange::Side::all, 0};
  } else {
    out.table = detail::negative_rows(c, comp.degree, params.p, params.n, -threshold - 1);
    out.valid_range = {ValidRange::Side::below, -threshold};
  }
  return out;
}

/// Dispatches on p and the sign of n.
inline PartialHFKTable cable_hfk(const FilteredComplex& c, const CableParams& params) {
  if (params.n < 0) return cablep_neg_hfk(c, params);
  if (params.p == 2 && !params.c_prime) return cable2_hfk(c, params.n, params.large_n_override);
  if (params.p == 2) {
    // p = 2 with an explicit c': the full table, c' echoed for the record.
    auto out = cable2_hfk(c, params.n, params.large_n_override);
    out.assumptions.c_prime = params.c_prime;
    return out;
  }
  return cablep_hfk(c, params);
}

/// The two highest rows of the (p, pn+1) cable, n > 0: HFK(K, d) and its
/// copy one Maslov grading lower.
inline TopGroups top_groups(const FilteredComplex& c, int p, int n) {
  if (n <= 0) throw InvalidParameter("top_groups needs n > 0");
  const auto comp = detail::analyze_companion(c);
  TopGroups out;
  out.top = comp.hfk.row(comp.degree);
  out.next = out.top.shifted(-1);
  out.degree = cable_degree(comp.degree, p, n);
  return out;
}

}  // namespace hfk
