#pragma once

// Laurent polynomials in one variable with integer coefficients, Euler
// characteristics of HFK tables and Alexander polynomials of torus knots
// and cables.

#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hfkcable/errors.hpp"
#include "hfkcable/homalg.hpp"
#include "hfkcable/knotcx.hpp"

namespace hfk {

class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<std::pair<const int, Int>> terms) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static LaurentPoly constant(const Int& c) {
    LaurentPoly p;
    p.add_term(0, c);
    return p;
  }
  static LaurentPoly monomial(int exponent, const Int& c = 1) {
    LaurentPoly p;
    p.add_term(exponent, c);
    return p;
  }

  void add_term(int exponent, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  Int coefficient(int exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? Int(0) : it->second;
  }

  const std::map<int, Int>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int max_exponent() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
  int min_exponent() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }

  bool is_symmetric() const {
    for (const auto& [e, c] : coeffs_)
      if (coefficient(-e) != c) return false;
    return true;
  }

  Int evaluate_at_one() const {
    Int s = 0;
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
  }

  /// f(t) -> f(t^p).
  LaurentPoly substitute_power(int p) const {
    LaurentPoly out;
    for (const auto& [e, c] : coeffs_) out.add_term(e * p, c);
    return out;
  }

  LaurentPoly shifted(int by) const {
    LaurentPoly out;
    for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e + by, c);
    return out;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [e, c] : b.coeffs_) out.add_term(e, c);
    return out;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [e, c] : b.coeffs_) out.add_term(e, -c);
    return out;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) out.add_term(ea + eb, ca * cb);
    return out;
  }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Highest powers first, e.g. "t^2 - 1 + t^-2".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      const int e = it->first;
      Int c = it->second;
      const bool negative = c < 0;
      Int mag = abs_int(c);
      if (s.empty())
        s += negative ? "-" : "";
      else
        s += negative ? " - " : " + ";
      std::string mono;
      if (e == 1)
        mono = "t";
      else if (e != 0)
        mono = "t^" + std::to_string(e);
      if (mono.empty())
        s += mag.str();
      else if (mag == 1)
        s += mono;
      else
        s += mag.str() + "*" + mono;
    }
    return s;
  }

 private:
  std::map<int, Int> coeffs_;
};

inline LaurentPoly multiply(const LaurentPoly& f, const LaurentPoly& g) { return f * g; }

inline LaurentPoly substitute_power(const LaurentPoly& f, int p) { return f.substitute_power(p); }

/// sum_i chi(HFK(K, i)) t^i, with chi = sum_m (-1)^m rank. Torsion is
/// invisible to the rational Euler characteristic.
inline LaurentPoly euler_poly(const HFKTable& t) {
  LaurentPoly p;
  for (const auto& [k, g] : t.entries()) {
    Int r = static_cast<long long>(g.free_rank());
    p.add_term(k.alexander, (k.maslov % 2 == 0) ? r : Int(-r));
  }
  return p;
}

/// Bigradings whose groups carry torsion, i.e. what euler_poly ignores.
inline std::vector<Bigrading> torsion_classes(const HFKTable& t) {
  std::vector<Bigrading> out;
  for (const auto& [k, g] : t.entries())
    if (g.has_torsion()) out.push_back(k);
  return out;
}

namespace detail {

// Ordinary polynomial with exponents 0..deg, coefficient vector.
inline std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// t^k - 1
inline std::vector<Int> power_minus_one(int k) {
  std::vector<Int> p(static_cast<std::size_t>(k) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(k)] = 1;
  return p;
}

// Exact division by a monic polynomial; throws if the remainder is nonzero.
inline std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) throw std::logic_error("polynomial division: degree too small");
  std::vector<Int> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    Int c = num[i];
    if (c == 0) continue;
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (const auto& r : num)
    if (r != 0) throw std::logic_error("polynomial division left a remainder");
  return q;
}

}  // namespace detail

/// Symmetrized Alexander polynomial of T(p, q):
///   (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)), centered at t^0.
/// Mirroring does not change it, so signs of p and q are dropped.
inline LaurentPoly torus_alexander(int p, int q) {
  const int a = std::abs(p), b = std::abs(q);
  if (std::gcd(a, b) != 1)
    throw NotCoprime("T(" + std::to_string(p) + "," + std::to_string(q) + ") is not a knot");
  if (a == 1 || b == 1) return LaurentPoly::constant(1);
  auto num = detail::poly_mul(detail::power_minus_one(a * b), detail::power_minus_one(1));
  auto den = detail::poly_mul(detail::power_minus_one(a), detail::power_minus_one(b));
  auto q_coeffs = detail::poly_div_exact(num, den);
  const int shift = (a - 1) * (b - 1) / 2;
  LaurentPoly out;
  for (std::size_t i = 0; i < q_coeffs.size(); ++i)
    out.add_term(static_cast<int>(i) - shift, q_coeffs[i]);
  if (out.evaluate_at_one() < 0) out = LaurentPoly::constant(-1) * out;
  return out;
}

/// Alexander polynomial of the (p, q) cable: Delta_{T(p,q)}(t) * Delta_K(t^p).
inline LaurentPoly cable_alexander(const LaurentPoly& delta_k, int p, int q) {
  return torus_alexander(p, q) * delta_k.substitute_power(p);
}

}  // namespace hfk
