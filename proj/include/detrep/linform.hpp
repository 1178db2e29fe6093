#pragma once

// Affine-linear forms  c0 + sum_k coeff_k * y^{i_k}_{j_k}  with coefficients
// in Int or Rat.  These are the entries of pencil matrices; the rational
// variant appears after group substitutions and regularity normalization.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "detrep/core.hpp"
#include "detrep/modular.hpp"
#include "detrep/polynomial.hpp"

namespace detrep {

template <class C>
class AffForm {
 public:
  struct Term {
    Variable var;
    C coeff;
    bool operator==(const Term&) const = default;
  };

  AffForm() : const_(0) {}
  /*implicit*/ AffForm(C c) : const_(std::move(c)) {}
  /*implicit*/ AffForm(long c) : const_(c) {}

  static AffForm variable(Variable v, C coeff = C(1)) {
    AffForm f;
    f.add_term(v, coeff);
    return f;
  }

  bool is_zero() const { return const_ == C(0) && terms_.empty(); }
  bool is_constant() const { return terms_.empty(); }
  const C& constant() const { return const_; }
  const std::vector<Term>& terms() const { return terms_; }

  void add_constant(const C& c) { const_ += c; }

  void add_term(Variable v, const C& coeff) {
    if (coeff == C(0)) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                               [](const Term& t, Variable x) { return t.var < x; });
    if (it != terms_.end() && it->var == v) {
      it->coeff += coeff;
      if (it->coeff == C(0)) terms_.erase(it);
    } else {
      terms_.insert(it, Term{v, coeff});
    }
  }

  AffForm& operator+=(const AffForm& o) {
    const_ += o.const_;
    for (auto& t : o.terms_) add_term(t.var, t.coeff);
    return *this;
  }
  friend AffForm operator+(AffForm a, const AffForm& b) { return a += b; }

  AffForm& operator-=(const AffForm& o) {
    const_ -= o.const_;
    for (auto& t : o.terms_) add_term(t.var, -t.coeff);
    return *this;
  }
  friend AffForm operator-(AffForm a, const AffForm& b) { return a -= b; }

  AffForm operator-() const {
    AffForm r;
    r.const_ = -const_;
    for (auto& t : terms_) r.terms_.push_back({t.var, -t.coeff});
    return r;
  }

  AffForm& operator*=(const C& c) {
    if (c == C(0)) return *this = AffForm();
    const_ *= c;
    for (auto& t : terms_) t.coeff *= c;
    return *this;
  }
  friend AffForm operator*(AffForm a, const C& c) { return a *= c; }
  friend AffForm operator*(const C& c, AffForm a) { return a *= c; }

  bool operator==(const AffForm&) const = default;

  template <class PointFn>  // PointFn: Variable -> C
  C eval(PointFn&& point) const {
    C total = const_;
    for (auto& t : terms_) total += t.coeff * point(t.var);
    return total;
  }

  // Replace every variable by another form (possibly over a wider ring).
  template <class C2>
  AffForm<C2> substitute(const std::function<AffForm<C2>(Variable)>& sub) const {
    AffForm<C2> r{C2(const_)};
    for (auto& t : terms_) {
      AffForm<C2> s = sub(t.var);
      s *= C2(t.coeff);
      r += s;
    }
    return r;
  }

  std::uint64_t eval_mod(const std::function<std::uint64_t(Variable)>& point,
                         std::uint64_t p) const {
    std::uint64_t total = mod_of(const_, p);
    for (auto& t : terms_)
      total = addmod(total, mulmod(mod_of(t.coeff, p), point(t.var), p), p);
    return total;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    auto append = [&](const C& coeff, const std::string& sym) {
      bool neg = coeff < C(0);
      C a = neg ? C(-coeff) : coeff;
      if (s.empty()) {
        if (neg) s += "-";
      } else {
        s += neg ? "-" : "+";
      }
      if (sym.empty()) {
        s += value_str(a);
      } else {
        if (!(a == C(1))) s += value_str(a) + "*";
        s += sym;
      }
    };
    if (!(const_ == C(0))) append(const_, "");
    for (auto& t : terms_) append(t.coeff, t.var.str());
    return s;
  }

 private:
  static std::string value_str(const Int& v) { return v.get_str(); }
  static std::string value_str(const Rat& v) { return v.get_str(); }

  C const_;
  std::vector<Term> terms_;  // sorted by variable
};

using IntForm = AffForm<Int>;
using RatForm = AffForm<Rat>;

inline Polynomial to_polynomial(const IntForm& f) {
  Polynomial p(f.constant());
  for (auto& t : f.terms()) p += Polynomial::monomial(Monomial::var(t.var), t.coeff);
  return p;
}

inline RatForm to_rational(const IntForm& f) {
  RatForm r{Rat(f.constant())};
  for (auto& t : f.terms()) r.add_term(t.var, Rat(t.coeff));
  return r;
}

}  // namespace detrep
