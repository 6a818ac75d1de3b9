#pragma once

// Quotients of Laurent polynomials, kept in a canonical reduced form:
//   * the denominator is an ordinary polynomial with trivial cluster
//     content (every cluster-monomial unit is folded into the numerator),
//   * numerator and denominator share no non-unit factor,
//   * the denominator's leading coefficient is positive.
// Two equal values therefore compare equal componentwise; a value is a
// Laurent polynomial exactly when the denominator is 1.

#include "lpa/gcd.hpp"
#include "lpa/poly.hpp"

namespace lpa {

class RationalFn {
 public:
  RationalFn() : num_(), den_(Int(1)) {}
  explicit RationalFn(Poly num) : num_(std::move(num)), den_(Int(1)) {}
  RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.is_one(); }

  const Poly& as_laurent() const {
    if (!is_laurent()) throw Error("lpa: value is not a Laurent polynomial");
    return num_;
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFn pow(Exp n) const {
    if (n >= 0) return RationalFn(num_.pow(n), den_.pow(n));
    return RationalFn(den_.pow(-n), num_.pow(-n));
  }

  friend bool operator==(const RationalFn&, const RationalFn&) = default;

 private:
  void normalize() {
    if (den_.is_zero()) throw Error("lpa: division by zero");
    if (num_.is_zero()) {
      den_ = Poly(Int(1));
      return;
    }
    // Cluster monomials are units: move the denominator's monomial part up.
    auto [md, dpart] = den_.split_cluster();
    if (!md.trivial()) num_ = num_.times_monomial(md.inverse());
    den_ = std::move(dpart);
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    if (den_.leading().second < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  Poly num_;
  Poly den_;
};

// p with v replaced by `value`, computed exactly.  With d = max exponent of
// v and m = min exponent, the result is
//   sum_a e_a N^(a-min(m,0)) D^(max(d,0)-a) / (N^(-min(m,0)) D^(max(d,0)))
// which the RationalFn constructor reduces.  Substituting 0 into a negative
// power surfaces as the division-by-zero error from normalization.
inline RationalFn substitute(const Poly& p, VarRef v, const RationalFn& value) {
  if (!p.involves(v)) return RationalFn(p);
  auto groups = p.coefficients_in(v);
  Exp lo = std::min<Exp>(groups.front().first, 0);
  Exp hi = std::max<Exp>(groups.back().first, 0);
  Poly num;
  for (const auto& [a, coef] : groups)
    num += coef * value.num().pow(a - lo) * value.den().pow(hi - a);
  return RationalFn(std::move(num), value.num().pow(-lo) * value.den().pow(hi));
}

inline RationalFn substitute(const Poly& p, VarRef v, const Poly& value) {
  return substitute(p, v, RationalFn(value));
}

}  // namespace lpa
