#include <gtest/gtest.h>

#include "hfkcable/alexpoly.hpp"
#include "hfkcable/cabling.hpp"
#include "hfkcable/torus.hpp"
#include "hfkcable/verify.hpp"
#include "support/oracles.hpp"

using namespace hfk;

namespace {

HFKTable restrict_rows(const HFKTable& t, const ValidRange& r) {
  HFKTable out;
  for (const auto& [k, g] : t.entries())
    if (r.contains(k.alexander)) out.set(k.alexander, k.maslov, g);
  return out;
}

HFKTable rows_at_least(const HFKTable& t, int lo) {
  HFKTable out;
  for (const auto& [k, g] : t.entries())
    if (k.alexander >= lo) out.set(k.alexander, k.maslov, g);
  return out;
}

CableParams params(int p, int n, std::optional<int> c = 0, bool override_n = false) {
  return CableParams{p, n, c, override_n};
}

}  // namespace

TEST(CableDegree, Values) {
  EXPECT_EQ(cable_degree(1, 2, 11), 13);
  EXPECT_EQ(cable_degree(0, 3, 2), 6);
  // Negative n: 2*1 + (2*7 - 2)/2; the (2,-13) cable of the trefoil, whose
  // closed-form table has top row 2m + |n| = 8 with n = -6 there.
  EXPECT_EQ(cable_degree(1, 2, -7), 8);
  EXPECT_EQ(degree(oracle::two_bridge_cable_table(1, -6)), 8);
  EXPECT_EQ(cable_degree(0, 5, 2), 20);
  EXPECT_THROW(cable_degree(0, 1, 2), InvalidParameter);
  EXPECT_THROW(cable_degree(0, 2, 0), InvalidParameter);
}

TEST(CableDegree, MatchesTorusGenus) {
  // Cables of the unknot are torus knots: degree = (p-1)(q-1)/2.
  for (int p = 2; p <= 6; ++p)
    for (int n = -5; n <= 5; ++n) {
      if (n == 0) continue;
      const int q = p * n + 1;
      EXPECT_EQ(cable_degree(0, p, n), (p - 1) * (std::abs(q) - 1) / 2) << p << " " << n;
    }
}

TEST(Threshold, Values) {
  EXPECT_EQ(threshold_c(0, 3, 2, 0), -1);
  for (int n = 3; n < 40; ++n) EXPECT_EQ(threshold_c(1, 2, n, 0), 1 - n);
  EXPECT_EQ(threshold_c(2, 4, 5, 1), 21);
  EXPECT_THROW(threshold_c(0, 3, 2, -1), InvalidParameter);
  // n < 0: |n| - 1 windings, e.g. the unknot with p = 3, n = -2 gives 4 - 3 - 1.
  EXPECT_EQ(threshold_c(0, 3, -2, 0), 0);
}

TEST(Cable2, UnknotGivesTorusKnot) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(cable2_hfk(unknot_complex(), n).table, hfk_torus_2(n)) << n;
}

TEST(Cable2, TrefoilN11) {
  const auto r = cable2_hfk(staircase_T2(1), 11);
  const auto& t = r.table;
  EXPECT_EQ(r.degree, 13);
  EXPECT_EQ(t.at(13, 0), AbelianGroup::free(1));
  EXPECT_EQ(t.at(12, -1), AbelianGroup::free(1));
  EXPECT_TRUE(t.row(11).is_zero());
  EXPECT_TRUE(t.row(10).is_zero());
  for (int i = 0; i <= 9; ++i) {
    EXPECT_EQ(t.row(i).groups().size(), 1u);
    EXPECT_EQ(t.at(i, i - 11), AbelianGroup::free(1)) << i;
  }
  EXPECT_EQ(t, oracle::two_bridge_cable_table(1, 11));
  EXPECT_TRUE(symmetry_check(t));
  EXPECT_TRUE(r.assumptions.large_n_satisfied);
  EXPECT_TRUE(r.assumptions.warnings.empty());
}

TEST(Cable2, StaircaseTwoN21) {
  const auto t = cable2_hfk(staircase_T2(2), 21).table;
  for (int k = 0; k < 2; ++k) {
    const int top = 25 - 4 * k;
    EXPECT_EQ(t.row(top).to_string(), "(Z)_{" + std::to_string(-2 * k) + "}");
    EXPECT_EQ(t.at(top, -2 * k), AbelianGroup::free(1));
    EXPECT_EQ(t.at(top - 1, -2 * k - 1), AbelianGroup::free(1));
    EXPECT_TRUE(t.row(top - 2).is_zero());
    EXPECT_TRUE(t.row(top - 3).is_zero());
  }
  for (int i = 0; i <= 17; ++i) EXPECT_EQ(t.at(i, i - 21), AbelianGroup::free(1));
  EXPECT_EQ(t, oracle::two_bridge_cable_table(2, 21));
}

// The k = 0 row of a trefoil cable: (i, M) = (n+2, 0) from H_{-2}(F(K,-1)).
TEST(Cable2, MaslovBookkeeping) {
  for (int n = 3; n <= 15; ++n) {
    const auto t = cable2_hfk(staircase_T2(1), n).table;
    EXPECT_EQ(t.row(n + 2), filtration_homology(staircase_T2(1), -1).shifted(2));
    EXPECT_EQ(t.at(n + 2, 0), AbelianGroup::free(1));
  }
}

TEST(Cable2, WarnsBelowHeuristicBound) {
  const auto r = cable2_hfk(staircase_T2(1), 2);
  EXPECT_FALSE(r.assumptions.large_n_satisfied);
  EXPECT_TRUE(r.assumptions.conjectural);
  ASSERT_FALSE(r.assumptions.warnings.empty());
  EXPECT_NE(r.assumptions.warnings[0].find("large-n"), std::string::npos);
  const auto o = cable2_hfk(staircase_T2(1), 2, true);
  EXPECT_TRUE(o.assumptions.warnings.empty());
  EXPECT_TRUE(o.assumptions.conjectural);
}

TEST(Cable2, RejectsBadInput) {
  EXPECT_THROW(cable2_hfk(unknot_complex(), 0), InvalidParameter);
  EXPECT_THROW(cable2_hfk(unknot_complex(), -3), InvalidParameter);
  const FilteredComplex bad("bad", {{"a", 0, 0}, {"b", 0, 0}}, {});
  EXPECT_THROW(cable2_hfk(bad, 5), InvalidComplex);
}

TEST(CableP, KeystoneT37) {
  const auto r = cablep_hfk(unknot_complex(), params(3, 2));
  EXPECT_EQ(r.valid_range.side, ValidRange::Side::above);
  EXPECT_EQ(r.valid_range.threshold, -1);
  EXPECT_EQ(r.degree, 6);
  EXPECT_EQ(rows_at_least(r.table, 0), rows_at_least(hfk_torus_3_7(), 0));
  EXPECT_EQ(r.table, rows_at_least(hfk_torus_3_7(), 0));
}

TEST(CableP, PEqualsTwoConsistency) {
  const auto r = cablep_hfk(unknot_complex(), params(2, 3));
  // d = 0: 0 + 3 - 2*3 - 1.
  EXPECT_EQ(r.valid_range.threshold, -4);
  EXPECT_EQ(rows_at_least(r.table, -1), rows_at_least(cable2_hfk(unknot_complex(), 3).table, -1));
  EXPECT_EQ(r.table, restrict_rows(cable2_hfk(unknot_complex(), 3).table, r.valid_range));
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 12; ++n) {
      const auto pr = cablep_hfk(staircase_T2(m), params(2, n, 0, true));
      EXPECT_EQ(pr.table, restrict_rows(cable2_hfk(staircase_T2(m), n, true).table, pr.valid_range)) << m << " " << n;
    }
}

TEST(CableP, TrefoilP3N20TopRows) {
  const auto r = cablep_hfk(staircase_T2(1), params(3, 20));
  const auto& t = r.table;
  EXPECT_EQ(r.degree, 63);
  EXPECT_EQ(r.valid_range.threshold, 63 - 60 - 1);
  EXPECT_EQ(t.at(63, 0), AbelianGroup::free(1));
  EXPECT_EQ(t.at(62, -1), AbelianGroup::free(1));
  for (int i : {61, 60, 59, 58}) EXPECT_TRUE(t.row(i).is_zero()) << i;
  EXPECT_EQ(t.at(57, -2), AbelianGroup::free(1));
  EXPECT_EQ(t.at(56, -3), AbelianGroup::free(1));
  EXPECT_TRUE(t.row(55).is_zero());
  EXPECT_EQ(t.at(54, -4), AbelianGroup::free(1));
  EXPECT_EQ(t.at(53, -5), AbelianGroup::free(1));
  // Independent check: the cable is an L-space knot.
  const auto truth = oracle::lspace_hfk(cable_alexander(torus_alexander(2, 3), 3, 61));
  EXPECT_EQ(t, restrict_rows(truth, r.valid_range));
}

TEST(CableP, MissingCPrime) {
  EXPECT_THROW(cablep_hfk(unknot_complex(), params(3, 2, std::nullopt)), MissingCPrime);
  EXPECT_THROW(cablep_neg_hfk(unknot_complex(), params(3, -2, std::nullopt)), MissingCPrime);
  EXPECT_NO_THROW(cablep_hfk(unknot_complex(), params(2, 2, std::nullopt)));
}

// Rows not congruent to D or D-1 mod p are zero inside the valid range.
TEST(CableP, GapStructure) {
  for (int m = 1; m <= 3; ++m)
    for (int p = 3; p <= 5; ++p)
      for (int n = 2 * m + 1; n <= 2 * m + 4; ++n) {
        const auto r = cablep_hfk(staircase_T2(m), params(p, n));
        for (int i = r.valid_range.threshold + 1; i <= r.degree; ++i) {
          const int off = ((r.degree - i) % p + p) % p;
          if (off != 0 && off != 1) EXPECT_TRUE(r.table.row(i).is_zero()) << m << " " << p << " " << n << " " << i;
        }
        for (const auto& [k, g] : r.table.entries()) EXPECT_TRUE(r.valid_range.contains(k.alexander));
      }
}

// Above the threshold the engine agrees with the L-space oracle for cables
// of positive staircases, and with the torus-knot oracle for the unknot.
TEST(CableP, AgreesWithLSpaceOracle) {
  for (int m = 1; m <= 3; ++m)
    for (int p = 2; p <= 4; ++p)
      for (int n = 1; n <= 12; ++n) {
        const auto r = cablep_hfk(staircase_T2(m), params(p, n, 0, true));
        const auto truth = oracle::lspace_hfk(cable_alexander(torus_alexander(2, 2 * m + 1), p, p * n + 1));
        EXPECT_EQ(r.table, restrict_rows(truth, r.valid_range)) << m << " " << p << " " << n;
      }
  for (int p = 2; p <= 5; ++p)
    for (int n = -6; n <= 6; ++n) {
      if (n == 0) continue;
      const auto r = cable_hfk(unknot_complex(), params(p, n, 0, true));
      EXPECT_EQ(restrict_rows(r.table, r.valid_range), restrict_rows(oracle::torus_hfk(p, p * n + 1), r.valid_range))
          << p << " " << n;
    }
}

TEST(CableNeg, UnknotTorusKnot) {
  const auto r = cablep_neg_hfk(unknot_complex(), params(2, -4, std::nullopt));
  EXPECT_EQ(r.table, hfk_torus_2(-4));
  EXPECT_EQ(r.valid_range.side, ValidRange::Side::all);
  EXPECT_EQ(r.degree, 3);
}

TEST(CableNeg, TrefoilBranchThree) {
  // The (2,-15) cable of T(2,3): bottom row -2 - 7 = -9.
  const auto r = cablep_neg_hfk(staircase_T2(1), params(2, -8, std::nullopt));
  const auto& t = r.table;
  EXPECT_EQ(t.at(-9, -2), AbelianGroup::free(1));
  EXPECT_EQ(t.at(-8, -1), AbelianGroup::free(1));
  EXPECT_EQ(t.at(-7, -1), AbelianGroup::free(1));
  EXPECT_EQ(t.at(-7, 0), AbelianGroup::free(1));
  EXPECT_EQ(t, oracle::two_bridge_cable_table(1, -7));
}

TEST(CableNeg, MirrorTrefoilBranchFour) {
  const auto r = cablep_neg_hfk(mirror(staircase_T2(1)), params(2, -12, std::nullopt));
  EXPECT_EQ(r.table, oracle::two_bridge_cable_table(-1, -11));
  EXPECT_TRUE(symmetry_check(r.table));
}

TEST(CableNeg, RangeForLargerP) {
  const auto r = cablep_neg_hfk(staircase_T2(-1), params(3, -10));
  EXPECT_EQ(r.valid_range.side, ValidRange::Side::below);
  EXPECT_EQ(r.valid_range.threshold, -threshold_c(1, 3, -10, 0));
  for (const auto& [k, g] : r.table.entries()) EXPECT_TRUE(r.valid_range.contains(k.alexander));
  EXPECT_EQ(-r.table.entries().begin()->first.alexander, r.degree);
}

// Cables of mirrored staircases with n < 0 are mirrors of L-space knots.
TEST(CableNeg, AgreesWithMirroredLSpaceOracle) {
  for (int m = 1; m <= 3; ++m)
    for (int p = 2; p <= 4; ++p)
      for (int n = -12; n <= -1; ++n) {
        const auto r = cablep_neg_hfk(staircase_T2(-m), params(p, n, 0, true));
        if (p == 2 && std::abs(n) <= r.assumptions.heuristic_n_bound) continue;  // not proven there
        const auto pos = oracle::lspace_hfk(cable_alexander(torus_alexander(2, 2 * m + 1), p, -(p * n + 1)));
        HFKTable truth;
        for (const auto& [k, g] : pos.entries()) truth.set(-k.alexander, -k.maslov, g);
        EXPECT_EQ(r.table, restrict_rows(truth, r.valid_range)) << m << " " << p << " " << n;
      }
}

TEST(CableNeg, RejectsPositiveN) {
  EXPECT_THROW(cablep_neg_hfk(unknot_complex(), params(2, 3)), InvalidParameter);
  EXPECT_THROW(cablep_hfk(unknot_complex(), params(2, -3)), InvalidParameter);
}

TEST(CableDispatch, Routes) {
  EXPECT_EQ(cable_hfk(unknot_complex(), params(2, 3, std::nullopt)).table, hfk_torus_2(3));
  const auto withc = cable_hfk(unknot_complex(), params(2, 3, 4));
  EXPECT_EQ(withc.table, hfk_torus_2(3));
  EXPECT_EQ(withc.assumptions.c_prime, 4);
  EXPECT_EQ(cable_hfk(unknot_complex(), params(3, 2)).valid_range.side, ValidRange::Side::above);
  EXPECT_EQ(cable_hfk(unknot_complex(), params(2, -4)).table, hfk_torus_2(-4));
  EXPECT_EQ(cable_hfk(staircase_T2(1), params(2, 5)).name, "(T(2,3))_{2,11}");
}

TEST(TopGroups, Examples) {
  const auto a = top_groups(staircase_T2(1), 2, 11);
  EXPECT_EQ(a.top.to_string(), "(Z)_{0}");
  EXPECT_EQ(a.next.to_string(), "(Z)_{-1}");
  EXPECT_EQ(a.degree, 13);
  const auto b = top_groups(unknot_complex(), 5, 2);
  EXPECT_EQ(b.top.at(0), AbelianGroup::free(1));
  EXPECT_EQ(b.next.at(-1), AbelianGroup::free(1));
  EXPECT_EQ(b.degree, 20);
  EXPECT_THROW(top_groups(unknot_complex(), 2, -3), InvalidParameter);
}

TEST(TopGroups, MatchTablesRows) {
  for (int m = -3; m <= 3; ++m) {
    if (m == 0) continue;
    const auto c = staircase_T2(m);
    for (int p = 2; p <= 4; ++p)
      for (int n = 2 * std::abs(m) + 1; n <= 2 * std::abs(m) + 5; ++n) {
        const auto tg = top_groups(c, p, n);
        const auto r = cable_hfk(c, params(p, n));
        EXPECT_EQ(r.table.row(tg.degree), tg.top);
        EXPECT_EQ(r.table.row(tg.degree - 1), tg.next);
        EXPECT_EQ(degree(r.table), tg.degree);
      }
  }
}

// Properties of the (2, 2n+1) cable over many companions.
TEST(Cable2, DegreeSymmetryEulerProperties) {
  std::vector<FilteredComplex> companions{unknot_complex()};
  for (int m = -4; m <= 4; ++m)
    if (m != 0) companions.push_back(staircase_T2(m));
  for (const auto& c : companions) {
    const auto k = associated_graded(c);
    const int d = degree(k);
    for (int n = 2 * d + 1; n <= 2 * d + 8; ++n) {
      const auto r = cable2_hfk(c, n);
      EXPECT_EQ(degree(r.table), 2 * d + n);
      EXPECT_TRUE(symmetry_check(r.table));
      EXPECT_EQ(euler_poly(r.table), cable_alexander(euler_poly(k), 2, 2 * n + 1)) << c.name() << " " << n;
      EXPECT_LE(euler_poly(r.table).max_exponent(), degree(r.table));
      const auto end = check_end_rows(r.table, k, n, r.degree);
      EXPECT_TRUE(end.ok) << end.detail;
    }
  }
}

TEST(Cable, TorsionIsFlagged) {
  // Total homology Z + Z/2: not a knot complex.
  const FilteredComplex c("tors", {{"u", 0, 0}, {"a", 1, 1}, {"b", 0, -1}}, {{"a", "b", 2}});
  EXPECT_FALSE(validate(c).ok());
  // Total homology Z, but the level-0 graded piece has a -> 2b, so the
  // associated graded carries Z/2.
  const FilteredComplex c2("tors2", {{"u", 0, 0}, {"a", 1, 0}, {"b", 0, 0}, {"e", 1, 1}, {"f", 0, -1}},
                           {{"a", "b", 2}, {"a", "f", 1}, {"e", "b", 1}});
  ASSERT_TRUE(validate(c2).ok()) << validate(c2).summary();
  EXPECT_EQ(associated_graded(c2).at(0, 0), AbelianGroup(1, {2}));
  EXPECT_TRUE(filtration_has_torsion(c2));
  const auto r = cable2_hfk(c2, 5, true);
  EXPECT_TRUE(r.assumptions.torsion_present);
  bool warned = false;
  for (const auto& w : r.assumptions.warnings) warned = warned || w.find("torsion") != std::string::npos;
  EXPECT_TRUE(warned);
}
