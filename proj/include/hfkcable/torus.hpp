#pragma once

// Built-in torus knot data: closed-form tables for T(2,2n+1) and T(3,7), the
// staircase complex of T(2,2m+1), and grading propagation from disk data.

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hfkcable/errors.hpp"
#include "hfkcable/knotcx.hpp"

namespace hfk {

/// A Whitney disk between two generators. An empty maslov_index marks a
/// null-homology that only constrains the filtrations.
struct DiskDatum {
  std::string from_id;
  std::string to_id;
  std::optional<int> maslov_index;
  int n_w = 0;
  int n_z = 0;
  int n_zprime = 0;
};

struct Gradings {
  std::optional<int> maslov;  // empty when no Maslov-constrained path reaches it
  int filt_z = 0;
  int filt_zprime = 0;

  friend bool operator==(const Gradings&, const Gradings&) = default;
};

using GradingAssignment = std::map<std::string, Gradings>;

struct GradingAnchor {
  std::string id;
  int maslov = 0;
  int filt_z = 0;
  int filt_zprime = 0;
};

/// Solves the relative grading equations
///   gr(x) - gr(y) = mu(phi) - 2 n_w(phi)
///   F(x)  - F(y)  = n_z(phi)  - n_w(phi)
///   F'(x) - F'(y) = n_z'(phi) - n_w(phi)
/// for every disk phi from x to y, starting from the anchor.
inline GradingAssignment propagate_gradings(const std::vector<std::string>& ids,
                                            const std::vector<DiskDatum>& disks,
                                            const GradingAnchor& anchor) {
  struct Arc {
    std::string other;
    std::optional<int> d_maslov;  // value(other) - value(self)
    int d_z;
    int d_zprime;
  };
  std::map<std::string, std::vector<Arc>> adj;
  for (const auto& id : ids) adj[id];
  for (const auto& d : disks) {
    if (d.n_w < 0 || d.n_z < 0 || d.n_zprime < 0)
      throw InvalidParameter("disk " + d.from_id + "->" + d.to_id + " has negative multiplicity");
    if (!adj.count(d.from_id) || !adj.count(d.to_id))
      throw InvalidParameter("disk " + d.from_id + "->" + d.to_id + " names an unknown generator");
    std::optional<int> gr;
    if (d.maslov_index) gr = *d.maslov_index - 2 * d.n_w;
    const int fz = d.n_z - d.n_w;
    const int fzp = d.n_zprime - d.n_w;
    // value(to) = value(from) - difference
    adj[d.from_id].push_back(
        {d.to_id, gr ? std::optional<int>(-*gr) : std::nullopt, -fz, -fzp});
    adj[d.to_id].push_back({d.from_id, gr, fz, fzp});
  }
  if (!adj.count(anchor.id)) throw InvalidParameter("anchor " + anchor.id + " is not a generator");

  GradingAssignment out;
  out[anchor.id] = {anchor.maslov, anchor.filt_z, anchor.filt_zprime};
  std::deque<std::string> queue{anchor.id};
  while (!queue.empty()) {
    const std::string cur = queue.front();
    queue.pop_front();
    const Gradings here = out.at(cur);
    for (const auto& arc : adj.at(cur)) {
      Gradings there{std::nullopt, here.filt_z + arc.d_z, here.filt_zprime + arc.d_zprime};
      if (here.maslov && arc.d_maslov) there.maslov = *here.maslov + *arc.d_maslov;
      auto it = out.find(arc.other);
      if (it == out.end()) {
        out.emplace(arc.other, there);
        queue.push_back(arc.other);
        continue;
      }
      Gradings& seen = it->second;
      if (seen.filt_z != there.filt_z || seen.filt_zprime != there.filt_zprime)
        throw InconsistentDisks("filtration of " + arc.other + " is not path independent");
      if (seen.maslov && there.maslov && *seen.maslov != *there.maslov)
        throw InconsistentDisks("Maslov grading of " + arc.other + " is not path independent");
      if (!seen.maslov && there.maslov) {
        // A Maslov value arrived along a later path; spread it again.
        seen.maslov = there.maslov;
        queue.push_back(arc.other);
      }
    }
  }
  for (const auto& id : ids)
    if (!out.count(id)) throw DisconnectedGraph("generator " + id + " is not reachable from " +
                                                anchor.id);
  return out;
}

/// Disks of the genus one spiral diagram for T(2,2n+1), n > 0: for odd i a
/// disk x_i -> x_{i-1} through w and a disk x_i -> x_{i+1} through z'.
inline std::vector<DiskDatum> t2_spiral_disks(int n) {
  if (n <= 0) throw InvalidParameter("spiral disks need n > 0");
  std::vector<DiskDatum> disks;
  for (int i = 1; i < 2 * n; i += 2) {
    const std::string xi = "x" + std::to_string(i);
    disks.push_back({xi, "x" + std::to_string(i - 1), 1, 1, 0, 0});
    disks.push_back({xi, "x" + std::to_string(i + 1), 1, 0, 0, 1});
  }
  return disks;
}

inline std::vector<std::string> generator_ids(int count) {
  std::vector<std::string> ids;
  for (int i = 0; i < count; ++i) ids.push_back("x" + std::to_string(i));
  return ids;
}

/// Disks of the T(3,7) diagram plus the two null-homologies fixing the
/// filtration gaps between the separate spiral arms.
inline std::vector<DiskDatum> t37_disks() {
  return {
      {"x1", "x0", 1, 1, 0, 0},
      {"x3", "x2", 1, 1, 0, 0},
      {"x1", "x2", 1, 0, 0, 2},
      {"x3", "x4", 1, 0, 0, 2},
      {"x5", "x6", 1, 0, 0, 1},
      {"x7", "x8", 1, 0, 0, 1},
      {"x4", "x6", std::nullopt, 0, 0, 3},
      {"x5", "x7", std::nullopt, 0, 0, 3},
  };
}

/// HFK of T(2,2n+1): Z in Maslov i-n for |i| <= n when n >= 0, and Z in
/// Maslov i-n-1 for |i| <= -n-1 when n < 0.
inline HFKTable hfk_torus_2(int n) {
  HFKTable t;
  if (n >= 0) {
    for (int i = -n; i <= n; ++i) t.set(i, i - n, AbelianGroup::free(1));
  } else {
    for (int i = n + 1; i <= -n - 1; ++i) t.set(i, i - n - 1, AbelianGroup::free(1));
  }
  return t;
}

inline HFKTable hfk_torus_3_7() {
  HFKTable half;
  half.set(6, 0, AbelianGroup::free(1));
  half.set(5, -1, AbelianGroup::free(1));
  half.set(3, -2, AbelianGroup::free(1));
  half.set(2, -3, AbelianGroup::free(1));
  half.set(0, -4, AbelianGroup::free(1));
  return symmetrize_table(half);
}

inline std::string torus_name(int p, int q) {
  return "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

/// Staircase complex. For m > 0 it models T(2,2m+1): x_j in bigrading
/// (maslov, alexander) = (-j, m-j), with d x_j = x_{j+1} for odd j. This is
/// the only differential with Maslov drop 1, Alexander drop 1, total homology
/// Z in Maslov 0 and associated graded equal to the closed-form table.
/// For m < 0 it is the mirror of staircase_T2(-m), i.e. T(2,2m-1).
inline FilteredComplex staircase_T2(int m) {
  if (m == 0) throw ZeroParameter("staircase parameter must be nonzero");
  if (m < 0) {
    FilteredComplex c = mirror(staircase_T2(-m));
    return FilteredComplex(torus_name(2, 2 * m - 1), c.generators(), c.edges());
  }
  std::vector<Generator> gens;
  std::vector<Edge> edges;
  for (int j = 0; j <= 2 * m; ++j) gens.push_back({"x" + std::to_string(j), -j, m - j});
  for (int j = 1; j < 2 * m; j += 2)
    edges.push_back({"x" + std::to_string(j), "x" + std::to_string(j + 1), 1});
  return FilteredComplex(torus_name(2, 2 * m + 1), std::move(gens), std::move(edges));
}

}  // namespace hfk
