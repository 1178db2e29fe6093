#pragma once

// Sparse multivariate polynomials over Int, always in canonical form
// (monomials sorted, no zero coefficients).  Variables are the doubly indexed
// y^i_j used by the pencil constructions: i = row ("level") of the argument
// matrix, j = column, both 1-based.

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "detrep/core.hpp"

namespace detrep {

struct Variable {
  int up = 0;  // superscript
  int lo = 0;  // subscript
  auto operator<=>(const Variable&) const = default;

  std::string str() const {
    return "y^" + std::to_string(up) + "_" + std::to_string(lo);
  }
};

class Monomial {
 public:
  Monomial() = default;

  static Monomial var(Variable v, int exp = 1) {
    DETREP_CHECK(exp >= 1, "monomial exponent must be positive");
    Monomial m;
    m.factors_.push_back({v, exp});
    return m;
  }

  const std::vector<std::pair<Variable, int>>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  int degree() const {
    int d = 0;
    for (auto& [v, e] : factors_) d += e;
    return d;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    auto a = factors_.begin();
    auto b = o.factors_.begin();
    while (a != factors_.end() || b != o.factors_.end()) {
      if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
        r.factors_.push_back(*a++);
      } else if (a == factors_.end() || b->first < a->first) {
        r.factors_.push_back(*b++);
      } else {
        r.factors_.push_back({a->first, a->second + b->second});
        ++a, ++b;
      }
    }
    return r;
  }

  auto operator<=>(const Monomial&) const = default;

  std::string str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (auto& [v, e] : factors_) {
      if (!s.empty()) s += "*";
      s += v.str();
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::vector<std::pair<Variable, int>> factors_;  // sorted by variable
};

class Polynomial {
 public:
  Polynomial() = default;
  /*implicit*/ Polynomial(Int c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
  }
  /*implicit*/ Polynomial(long c) : Polynomial(Int(c)) {}

  static Polynomial variable(Variable v) { return monomial(Monomial::var(v), 1); }

  static Polynomial monomial(const Monomial& m, Int c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(m, std::move(c));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Int>& terms() const { return terms_; }

  int degree() const {  // degree of 0 reported as -1
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  Int coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r;
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial& operator*=(const Int& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [m, v] : terms_) v *= c;
    }
    return *this;
  }
  friend Polynomial operator*(Polynomial a, const Int& c) { return a *= c; }
  friend Polynomial operator*(const Int& c, Polynomial a) { return a *= c; }

  Polynomial pow(unsigned e) const {
    Polynomial r(Int(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  bool operator==(const Polynomial&) const = default;

  // Evaluate at a point given as a lookup; every variable that occurs must be
  // assigned, otherwise this throws.
  template <class PointFn>
    requires std::invocable<PointFn&, Variable>
  Int eval(PointFn&& point) const {
    Int total = 0;
    for (auto& [m, c] : terms_) {
      Int t = c;
      for (auto& [v, e] : m.factors()) {
        Int x = point(v);
        for (int i = 0; i < e; ++i) t *= x;
      }
      total += t;
    }
    return total;
  }

  Int eval(const std::map<Variable, Int>& point) const {
    return eval([&](Variable v) -> Int {
      auto it = point.find(v);
      require(it != point.end(), "polynomial evaluation: unassigned variable " + v.str());
      return it->second;
    });
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [m, c] : terms_) {
      if (!s.empty()) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      Int a = abs(c);
      if (a != 1 || m.is_one()) s += a.get_str();
      if (!m.is_one()) {
        if (a != 1) s += "*";
        s += m.str();
      }
    }
    return s;
  }

 private:
  void add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Monomial, Int> terms_;
};

}  // namespace detrep
