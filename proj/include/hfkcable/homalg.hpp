#pragma once

// Exact integer linear algebra: sparse integer matrices, Smith normal form
// and homology of chain complexes of free abelian groups.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hfkcable/errors.hpp"

namespace hfk {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

inline std::string int_to_string(const Int& v) { return v.str(); }

/// Sparse integer matrix in triplet form. Zero coefficients are never stored.
class IntMatrix {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static IntMatrix from_dense(const std::vector<std::vector<Int>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged dense matrix");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::map<Key, Int>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Int at(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Int(0) : it->second;
  }

  void set(std::size_t r, std::size_t c, const Int& v) {
    check_index(r, c);
    if (v == 0)
      entries_.erase({r, c});
    else
      entries_[{r, c}] = v;
  }

  void add(std::size_t r, std::size_t c, const Int& v) {
    check_index(r, c);
    if (v == 0) return;
    auto [it, inserted] = entries_.try_emplace({r, c}, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) entries_.erase(it);
    }
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (const auto& [k, v] : entries_) t.entries_[{k.second, k.first}] = v;
    return t;
  }

  std::vector<std::vector<Int>> to_dense() const {
    std::vector<std::vector<Int>> d(rows_, std::vector<Int>(cols_, 0));
    for (const auto& [k, v] : entries_) d[k.first][k.second] = v;
    return d;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("matrix product " + a.shape() + " * " + b.shape());
    // Bucket b by row so each entry of a meets only the row it multiplies.
    std::vector<std::vector<std::pair<std::size_t, const Int*>>> brow(b.rows_);
    for (const auto& [k, v] : b.entries_) brow[k.first].emplace_back(k.second, &v);
    IntMatrix out(a.rows_, b.cols_);
    for (const auto& [k, v] : a.entries_)
      for (const auto& [c, w] : brow[k.second]) out.add(k.first, c, v * *w);
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
      throw DimensionMismatch("index (" + std::to_string(r) + "," + std::to_string(c) +
                              ") outside " + shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Key, Int> entries_;
};

/// Finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_k with
/// d_1 | d_2 | ... | d_k and every d_i >= 2.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  explicit AbelianGroup(std::size_t free_rank, std::vector<Int> torsion = {})
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2)
        throw std::invalid_argument("torsion coefficient must be >= 2, got " +
                                    torsion_[i].str());
      if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
        throw std::invalid_argument("torsion coefficients must form a divisibility chain");
    }
  }

  static AbelianGroup free(std::size_t rank) { return AbelianGroup(rank); }

  // Normalizes an arbitrary list of cyclic orders (0 meaning Z) into
  // invariant-factor form. Defined below, after smith_normal_form.
  static AbelianGroup from_cyclic_orders(const std::vector<Int>& orders);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  bool is_zero() const { return free_rank_ == 0 && torsion_.empty(); }
  bool has_torsion() const { return !torsion_.empty(); }

  AbelianGroup direct_sum(const AbelianGroup& other) const;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<std::string> parts;
    if (free_rank_ == 1) parts.emplace_back("Z");
    if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
    for (const auto& t : torsion_) parts.push_back("Z/" + t.str());
    std::string s = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) s += "+" + parts[i];
    return s;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
};

/// Abelian groups indexed by Maslov grading; zero groups are not stored.
class GradedGroup {
 public:
  GradedGroup() = default;

  void set(int maslov, const AbelianGroup& g) {
    if (g.is_zero())
      groups_.erase(maslov);
    else
      groups_[maslov] = g;
  }

  void add(int maslov, const AbelianGroup& g) {
    if (g.is_zero()) return;
    auto it = groups_.find(maslov);
    if (it == groups_.end())
      groups_.emplace(maslov, g);
    else
      it->second = it->second.direct_sum(g);
  }

  AbelianGroup at(int maslov) const {
    auto it = groups_.find(maslov);
    return it == groups_.end() ? AbelianGroup{} : it->second;
  }

  // Group now living at maslov + delta.
  GradedGroup shifted(int delta) const {
    GradedGroup out;
    for (const auto& [m, g] : groups_) out.groups_.emplace(m + delta, g);
    return out;
  }

  bool is_zero() const { return groups_.empty(); }
  bool has_torsion() const {
    return std::any_of(groups_.begin(), groups_.end(),
                       [](const auto& kv) { return kv.second.has_torsion(); });
  }
  const std::map<int, AbelianGroup>& groups() const { return groups_; }
  auto begin() const { return groups_.begin(); }
  auto end() const { return groups_.end(); }

  std::string to_string() const {
    if (groups_.empty()) return "0";
    std::string s;
    for (const auto& [m, g] : groups_) {
      if (!s.empty()) s += " + ";
      s += "(" + g.to_string() + ")_{" + std::to_string(m) + "}";
    }
    return s;
  }

  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;

 private:
  std::map<int, AbelianGroup> groups_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i > 0.
struct SmithForm {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  std::vector<Int> diagonal;  // the nonzero invariant factors, in order

  std::size_t rank() const { return diagonal.size(); }
};

namespace detail {

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// s*a + t*b = g with g = gcd(a, b) > 0.
inline void extended_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  Int old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    Int q = floor_div(old_r, r);
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

// Row-major sparse storage with a column index, supporting the elementary
// unimodular operations used by the Smith reduction.
class SparseWork {
 public:
  SparseWork(std::size_t rows, std::size_t cols) : row_(rows), col_(cols) {}

  explicit SparseWork(const IntMatrix& m) : SparseWork(m.rows(), m.cols()) {
    for (const auto& [k, v] : m.entries()) put(k.first, k.second, v);
  }

  static SparseWork identity(std::size_t n) {
    SparseWork w(n, n);
    for (std::size_t i = 0; i < n; ++i) w.put(i, i, 1);
    return w;
  }

  std::size_t rows() const { return row_.size(); }
  std::size_t cols() const { return col_.size(); }
  const std::map<std::size_t, Int>& row(std::size_t r) const { return row_[r]; }
  const std::set<std::size_t>& col(std::size_t c) const { return col_[c]; }

  Int get(std::size_t r, std::size_t c) const {
    auto it = row_[r].find(c);
    return it == row_[r].end() ? Int(0) : it->second;
  }

  void put(std::size_t r, std::size_t c, const Int& v) {
    if (v == 0) {
      row_[r].erase(c);
      col_[c].erase(r);
    } else {
      row_[r][c] = v;
      col_[c].insert(r);
    }
  }

  // (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
  void mix_rows(std::size_t i, std::size_t j, const Int& a, const Int& b, const Int& c,
                const Int& d) {
    std::set<std::size_t> touched;
    for (const auto& [k, v] : row_[i]) touched.insert(k);
    for (const auto& [k, v] : row_[j]) touched.insert(k);
    for (std::size_t k : touched) {
      Int x = get(i, k), y = get(j, k);
      put(i, k, a * x + b * y);
      put(j, k, c * x + d * y);
    }
  }

  // (col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j)
  void mix_cols(std::size_t i, std::size_t j, const Int& a, const Int& b, const Int& c,
                const Int& d) {
    std::set<std::size_t> touched(col_[i]);
    touched.insert(col_[j].begin(), col_[j].end());
    for (std::size_t k : touched) {
      Int x = get(k, i), y = get(k, j);
      put(k, i, a * x + b * y);
      put(k, j, c * x + d * y);
    }
  }

  void add_row_multiple(std::size_t target, std::size_t src, const Int& f) {
    if (f == 0) return;
    std::vector<std::pair<std::size_t, Int>> src_row(row_[src].begin(), row_[src].end());
    for (const auto& [k, v] : src_row) put(target, k, get(target, k) + f * v);
  }

  void add_col_multiple(std::size_t target, std::size_t src, const Int& f) {
    if (f == 0) return;
    std::vector<std::size_t> src_rows(col_[src].begin(), col_[src].end());
    for (std::size_t k : src_rows) put(k, target, get(k, target) + f * get(k, src));
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    mix_rows(i, j, 0, 1, 1, 0);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    mix_cols(i, j, 0, 1, 1, 0);
  }
  void negate_row(std::size_t i) {
    for (auto& [c, v] : row_[i]) v = -v;
  }

  IntMatrix to_matrix() const {
    IntMatrix m(rows(), cols());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : row_[r]) m.set(r, c, v);
    return m;
  }

 private:
  std::vector<std::map<std::size_t, Int>> row_;
  std::vector<std::set<std::size_t>> col_;
};

// Drives a matrix to Smith form. U receives the row operations and V the
// column operations when transforms are tracked.
class SmithReducer {
 public:
  SmithReducer(const IntMatrix& m, bool track)
      : work_(m), track_(track),
        u_(track ? SparseWork::identity(m.rows()) : SparseWork(0, 0)),
        v_(track ? SparseWork::identity(m.cols()) : SparseWork(0, 0)) {}

  SmithForm run() {
    const std::size_t limit = std::min(work_.rows(), work_.cols());
    std::size_t t = 0;
    for (; t < limit; ++t) {
      auto pivot = choose_pivot(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      clear_cross(t);
    }
    const std::size_t rank = t;
    fix_divisibility(rank);

    SmithForm out;
    for (std::size_t i = 0; i < rank; ++i) {
      if (work_.get(i, i) < 0) {
        work_.negate_row(i);
        if (track_) u_.negate_row(i);
      }
      out.diagonal.push_back(work_.get(i, i));
    }
    out.D = work_.to_matrix();
    if (track_) {
      out.U = u_.to_matrix();
      out.V = v_.to_matrix();
    }
    return out;
  }

 private:
  // Markowitz-style choice: a unit entry with the smallest fill-in estimate,
  // otherwise the entry of least absolute value.
  std::optional<std::pair<std::size_t, std::size_t>> choose_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    bool best_unit = false;
    std::size_t best_cost = 0;
    Int best_abs;
    for (std::size_t r = t; r < work_.rows(); ++r) {
      for (auto it = work_.row(r).lower_bound(t); it != work_.row(r).end(); ++it) {
        const std::size_t c = it->first;
        Int a = abs_int(it->second);
        const bool unit = a == 1;
        const std::size_t cost =
            (work_.row(r).size() - 1) * (work_.col(c).size() - 1);
        bool better = false;
        if (!best) {
          better = true;
        } else if (unit != best_unit) {
          better = unit;
        } else if (unit) {
          better = cost < best_cost;
        } else {
          better = a < best_abs || (a == best_abs && cost < best_cost);
        }
        if (better) {
          best = {r, c};
          best_unit = unit;
          best_cost = cost;
          best_abs = a;
        }
      }
    }
    return best;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    work_.swap_rows(i, j);
    if (track_) u_.swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    work_.swap_cols(i, j);
    if (track_) v_.swap_cols(i, j);
  }
  void mix_rows(std::size_t i, std::size_t j, const Int& a, const Int& b, const Int& c,
                const Int& d) {
    work_.mix_rows(i, j, a, b, c, d);
    if (track_) u_.mix_rows(i, j, a, b, c, d);
  }
  void mix_cols(std::size_t i, std::size_t j, const Int& a, const Int& b, const Int& c,
                const Int& d) {
    work_.mix_cols(i, j, a, b, c, d);
    if (track_) v_.mix_cols(i, j, a, b, c, d);
  }
  void add_row_multiple(std::size_t target, std::size_t src, const Int& f) {
    work_.add_row_multiple(target, src, f);
    if (track_) u_.add_row_multiple(target, src, f);
  }
  void add_col_multiple(std::size_t target, std::size_t src, const Int& f) {
    work_.add_col_multiple(target, src, f);
    if (track_) v_.add_col_multiple(target, src, f);
  }

  // Zeroes row t and column t apart from the pivot (t, t), which must be
  // nonzero. The pivot ends up as the gcd of the cross it started from.
  void clear_cross(std::size_t t) {
    bool dirty = true;
    while (dirty) {
      dirty = false;
      std::vector<std::size_t> below;
      for (std::size_t r : work_.col(t))
        if (r != t) below.push_back(r);
      for (std::size_t r : below) {
        Int a = work_.get(t, t), b = work_.get(r, t);
        if (b == 0) continue;
        if (b % a == 0) {
          add_row_multiple(r, t, Int(-(b / a)));
        } else {
          Int g, s, u;
          extended_gcd(a, b, g, s, u);
          mix_rows(t, r, s, u, Int(-(b / g)), Int(a / g));
        }
      }
      std::vector<std::size_t> right;
      for (const auto& [c, v] : work_.row(t))
        if (c != t) right.push_back(c);
      for (std::size_t c : right) {
        Int a = work_.get(t, t), b = work_.get(t, c);
        if (b == 0) continue;
        if (b % a == 0) {
          add_col_multiple(c, t, Int(-(b / a)));
        } else {
          Int g, s, u;
          extended_gcd(a, b, g, s, u);
          mix_cols(t, c, s, u, Int(-(b / g)), Int(a / g));
          dirty = true;  // column t may have picked up new entries
        }
      }
      if (!dirty) {
        for (std::size_t r : work_.col(t))
          if (r != t) dirty = true;
      }
    }
  }

  void fix_divisibility(std::size_t rank) {
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = i + 1; j < rank; ++j) {
        if (work_.get(j, j) % work_.get(i, i) == 0) continue;
        add_col_multiple(i, j, 1);
        clear_cross(i);
      }
    }
  }

  SparseWork work_;
  bool track_;
  SparseWork u_;
  SparseWork v_;
};

}  // namespace detail

/// Smith normal form with unimodular transforms: U * M * V = D.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  return detail::SmithReducer(m, true).run();
}

/// Nonzero invariant factors of m (the diagonal of its Smith form).
inline std::vector<Int> invariant_factors(const IntMatrix& m) {
  if (m.is_zero()) return {};
  return detail::SmithReducer(m, false).run().diagonal;
}

inline std::size_t matrix_rank(const IntMatrix& m) { return invariant_factors(m).size(); }

inline AbelianGroup AbelianGroup::from_cyclic_orders(const std::vector<Int>& orders) {
  std::size_t free = 0;
  std::vector<Int> finite;
  for (const auto& o : orders) {
    Int a = abs_int(o);
    if (a == 0)
      ++free;
    else if (a > 1)
      finite.push_back(a);
  }
  IntMatrix diag(finite.size(), finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) diag.set(i, i, finite[i]);
  std::vector<Int> torsion;
  for (const auto& d : invariant_factors(diag))
    if (d > 1) torsion.push_back(d);
  return AbelianGroup(free, std::move(torsion));
}

inline AbelianGroup AbelianGroup::direct_sum(const AbelianGroup& other) const {
  std::vector<Int> orders(free_rank_ + other.free_rank_, Int(0));
  orders.insert(orders.end(), torsion_.begin(), torsion_.end());
  orders.insert(orders.end(), other.torsion_.begin(), other.torsion_.end());
  return from_cyclic_orders(orders);
}

/// Homology ker(boundary_out) / im(boundary_in) at the middle term of
///   C_{k+1} --boundary_in--> C_k --boundary_out--> C_{k-1}.
/// Matrices act on column vectors: columns index the source basis.
inline AbelianGroup chain_homology(const IntMatrix& boundary_in, const IntMatrix& boundary_out) {
  if (boundary_in.rows() != boundary_out.cols())
    throw DimensionMismatch("boundary_in is " + boundary_in.shape() + " but boundary_out is " +
                            boundary_out.shape());
  if (!(boundary_out * boundary_in).is_zero())
    throw CompositionNonzero("boundary_out * boundary_in != 0");

  const std::size_t middle = boundary_in.rows();
  const auto in_factors = invariant_factors(boundary_in);
  const std::size_t rank_out = matrix_rank(boundary_out);

  std::vector<Int> torsion;
  for (const auto& d : in_factors)
    if (d > 1) torsion.push_back(d);
  return AbelianGroup(middle - rank_out - in_factors.size(), std::move(torsion));
}

}  // namespace hfk
