#pragma once

// Multivariate gcd over Z[A][X].  The workhorse is the evaluation heuristic
// (GCDHEU): substitute a large integer for one variable, recurse on the
// image, read the candidate back off the base-xi digits, and certify it by
// exact division.  Inputs it declines (too many shared variables, degrees
// too large, or persistent bad luck with evaluation points) fall back to
// recursive primitive polynomial remainder sequences.  Cluster monomials
// are units of the Laurent ring, so both inputs are stripped to their
// monomial-free parts first and the result never carries a cluster-monomial
// factor; the sign is normalized so the leading coefficient is positive.

#include <limits>
#include <optional>

#include "lpa/poly.hpp"

namespace lpa {

inline Int integer_content(const Poly& p) {
  Int g = 0;
  for (const auto& [m, c] : p.terms()) {
    (void)m;
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

namespace detail {

Poly gcd_poly_parts(const Poly& a, const Poly& b);

// Content of p as a polynomial in x: gcd of the coefficient polynomials.
inline Poly content_wrt(const Poly& p, VarRef x) {
  Poly g;
  for (const auto& [e, coef] : p.coefficients_in(x)) {
    (void)e;
    g = gcd_poly_parts(g, coef);
    if (g.is_one()) break;
  }
  return g;
}

inline Poly times_int(const Poly& p, const Int& c) {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, k] : p.terms()) r.add_term(m, k * c);
  return r;
}

// Only valid when c divides every coefficient of p.
inline Poly div_int_exact(const Poly& p, const Int& c) {
  Poly r;
  for (const auto& [m, k] : p.terms()) r.add_term(m, k / c);
  return r;
}

inline Int inf_norm(const Poly& p) {
  Int n = 0;
  for (const auto& [m, c] : p.terms()) {
    (void)m;
    Int a = boost::multiprecision::abs(c);
    if (a > n) n = std::move(a);
  }
  return n;
}

// Largest coefficient size in 64-bit words — an O(term count) scan, cheap
// enough to run before any per-coefficient gcd or division work.
inline long max_coeff_words(const Poly& p) {
  long w = 1;
  for (const auto& [m, c] : p.terms()) {
    (void)m;
    Int a = boost::multiprecision::abs(c);
    long b = long(boost::multiprecision::msb(a)) / 64 + 1;
    if (b > w) w = b;
  }
  return w;
}

inline Exp partial_degree_sum(const Poly& p) {
  Exp s = 0;
  for (VarRef v : p.variables()) s += p.degree_in(v);
  return s;
}

// Symmetric remainder of z modulo xi, in (-xi/2, xi/2].
inline Int smod(const Int& z, const Int& xi) {
  Int r = z % xi;
  if (r < 0) r += xi;
  if (2 * r > xi) r -= xi;
  return r;
}

// p with the integer xi substituted for x (Horner over the x-coefficients).
inline Poly eval_at_int(const Poly& p, VarRef x, const Int& xi) {
  auto groups = p.coefficients_in(x);
  Poly acc;
  Exp prev = 0;
  bool first = true;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    if (first) {
      acc = it->second;
      first = false;
    } else {
      acc = times_int(acc, boost::multiprecision::pow(xi, unsigned(prev - it->first)));
      acc += it->second;
    }
    prev = it->first;
  }
  if (prev > 0) acc = times_int(acc, boost::multiprecision::pow(xi, unsigned(prev)));
  return acc;
}

// Reads gamma as a base-xi integer whose "digits" are polynomials with
// coefficients in (-xi/2, xi/2]; digit i becomes the x^i coefficient.  Fails
// when more than cap+1 digits would be needed, since a common divisor cannot
// exceed either input's degree in x.
inline std::optional<Poly> digits_at(const Poly& gamma, VarRef x, const Int& xi, Exp cap) {
  Poly g;
  Poly cur = gamma;
  for (Exp i = 0; !cur.is_zero(); ++i) {
    if (i > cap) return std::nullopt;
    Poly digit;
    for (const auto& [m, c] : cur.terms()) {
      Int r = smod(c, xi);
      if (r != 0) digit.add_term(m, std::move(r));
    }
    Poly next;
    {
      Poly rest = cur - digit;
      for (const auto& [m, c] : rest.terms()) next.add_term(m, c / xi);
    }
    if (!digit.is_zero()) g += digit.times_monomial(Monomial::variable(x, i));
    cur = std::move(next);
  }
  return g;
}

// Evaluation gcd: substitute a large integer xi for one shared variable,
// take the gcd of the images recursively, and lift the result back through
// its base-xi digits.  Every non-trivial candidate is certified by exact
// division into both inputs before being accepted.  Certification is
// conclusive because xi exceeds twice the coefficient bound for divisors of
// the smaller input (Gelfond: a divisor of p has coefficients at most
// e^(sum of partial degrees of p) times the largest coefficient of p), so a
// certified candidate can miss a factor of the true gcd only if that factor
// evaluates to a unit at xi, which the bound rules out; for the same reason
// a constant result proves the inputs coprime.  Returns nullopt, leaving
// the caller to fall back to remainder sequences, when the inputs are out
// of range, repeated evaluation points are unlucky, or the shared work
// budget runs dry — coefficient sizes compound across nesting levels, and
// the budget (charged as terms times words-of-xi squared) keeps the total
// probe cost bounded for operand shapes the remainder sequences serve
// better.
inline std::optional<Poly> heuristic_gcd(const Poly& a, const Poly& b, long& budget) {
  if (budget < 0 || a.is_zero() || b.is_zero()) return std::nullopt;

  // All the shape gates are evaluated before the content computations:
  // stripping integer content costs a gcd per coefficient, which is exactly
  // the work that explodes on images whose coefficients have compounded
  // through nested evaluations, so an operand pair destined to decline must
  // decline on term counts, supports and degrees alone.

  // Evaluation cost scales with term count and coefficient size, and the
  // remainder sequences are already effective on the big structured inputs
  // the mutation pipeline produces, so the heuristic only volunteers for
  // compact operands.
  if (a.term_count() > 512 || b.term_count() > 512) return std::nullopt;

  auto vars_a = a.variables();
  auto vars_b = b.variables();
  std::vector<VarRef> common;
  for (VarRef v : vars_a)
    if (vars_b.count(v)) common.push_back(v);
  // Each shared variable adds one level of evaluation nesting, and
  // coefficient sizes compound per level, so deep eliminations are better
  // served by the remainder sequences.
  if (common.size() > 6) return std::nullopt;

  // The evaluation point grows like 2^(3 nu / 2) in the smaller operand's
  // partial degree sum nu, and the hat denominators produce very sparse
  // operands whose degrees — not term counts — are what compound: probing
  // those is futile (the remainder sequences dispatch them in under a
  // millisecond), so high-degree pairs decline here.
  Exp nu_a = partial_degree_sum(a);
  Exp nu_b = partial_degree_sum(b);
  if (!common.empty() && std::min(nu_a, nu_b) > 24) return std::nullopt;

  // The content gcds below cost quadratic work per coefficient in its word
  // size, so that work is charged before it is done — after the linear
  // scan here, a pair that has outgrown the budget declines without
  // touching its huge integers.
  long words_in = std::max(max_coeff_words(a), max_coeff_words(b));
  budget -= long(a.term_count() + b.term_count()) * words_in * words_in;
  if (budget < 0) return std::nullopt;

  Int ca = integer_content(a);
  Int cb = integer_content(b);
  Int cg = boost::multiprecision::gcd(ca, cb);
  if (common.empty()) return Poly(std::move(cg));
  Poly pa = div_int_exact(a, ca);
  Poly pb = div_int_exact(b, cb);

  VarRef x = common.front();
  Exp best = std::numeric_limits<Exp>::max();
  for (VarRef v : common) {
    Exp d = pa.degree_in(v) + pb.degree_in(v);
    if (d < best) {
      best = d;
      x = v;
    }
  }
  Int bound_a = nu_a > 64 ? Int(0) : inf_norm(pa) << unsigned(3 * nu_a / 2 + 2);
  Int bound_b = nu_b > 64 ? Int(0) : inf_norm(pb) << unsigned(3 * nu_b / 2 + 2);
  Int bound = bound_a == 0 ? bound_b : bound_b == 0 ? bound_a : std::min(bound_a, bound_b);
  Int xi = 2 * bound + 2;

  Exp cap = std::min(pa.degree_in(x), pb.degree_in(x));
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (boost::multiprecision::msb(xi) > 65536) return std::nullopt;
    long words = long(boost::multiprecision::msb(xi)) / 64 + 1;
    budget -= long(pa.term_count() + pb.term_count()) * words * words;
    if (budget < 0) return std::nullopt;
    Poly image_a = eval_at_int(pa, x, xi);
    Poly image_b = eval_at_int(pb, x, xi);
    if (image_a.is_zero() || image_b.is_zero()) return std::nullopt;
    auto gamma = heuristic_gcd(image_a, image_b, budget);
    // A declined recursion is structural: growing xi only enlarges the
    // images, so retrying cannot help and would multiply subtree work.
    if (!gamma) return std::nullopt;
    if (auto g = digits_at(*gamma, x, xi, cap); g && !g->is_zero()) {
      Poly gp = div_int_exact(*g, integer_content(*g));
      if (try_exact_div(pa, gp) && try_exact_div(pb, gp))
        return times_int(gp, cg).sign_normalized();
    }
    xi = xi * 73794 / 27011 + 1;
  }
  return std::nullopt;
}

// One pseudo-remainder step sequence: eliminates x from a against b.  The
// result is only ever used up to content, so integer content is shed along
// the way to keep coefficients small.
inline Poly pseudo_rem(const Poly& a, const Poly& b, VarRef x) {
  Exp db = b.degree_in(x);
  Poly lead_b;
  for (const auto& [e, coef] : b.coefficients_in(x))
    if (e == db) lead_b = coef;
  Poly r = a;
  while (!r.is_zero() && r.degree_in(x) >= db) {
    Exp dr = r.degree_in(x);
    Poly lead_r;
    for (const auto& [e, coef] : r.coefficients_in(x))
      if (e == dr) lead_r = coef;
    r = r * lead_b - (lead_r * b).times_monomial(Monomial::variable(x, dr - db));
    Int c = integer_content(r);
    if (c > 1) r = div_int_exact(r, c);
  }
  return r;
}

// gcd of two ordinary polynomials (every exponent >= 0).
inline Poly gcd_poly_parts(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.sign_normalized();
  if (b.is_zero()) return a.sign_normalized();
  if (a.is_constant() || b.is_constant())
    return Poly(boost::multiprecision::gcd(integer_content(a), integer_content(b)));

  auto vars_a = a.variables();
  auto vars_b = b.variables();
  std::vector<VarRef> common;
  for (VarRef v : vars_a)
    if (vars_b.count(v)) common.push_back(v);
  if (common.empty())
    return Poly(boost::multiprecision::gcd(integer_content(a), integer_content(b)));

  long budget = 16'000'000;
  if (auto h = heuristic_gcd(a, b, budget)) return std::move(*h);

  // Main variable: smallest combined degree keeps the remainder sequences
  // short; ties go to the smaller variable for determinism.
  VarRef x = common.front();
  Exp best = std::numeric_limits<Exp>::max();
  for (VarRef v : common) {
    Exp d = a.degree_in(v) + b.degree_in(v);
    if (d < best) {
      best = d;
      x = v;
    }
  }

  Poly ca = content_wrt(a, x);
  Poly cb = content_wrt(b, x);
  Poly pa = exact_div(a, ca);
  Poly pb = exact_div(b, cb);
  Poly cg = gcd_poly_parts(ca, cb);

  if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);
  Poly g;
  while (true) {
    Poly r = pseudo_rem(pa, pb, x);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(x) == 0) {
      g = Poly(Int(1));
      break;
    }
    pa = std::move(pb);
    pb = exact_div(r, content_wrt(r, x));
  }
  return (cg * g).sign_normalized();
}

}  // namespace detail

// gcd up to units of the Laurent ring; the result is monomial-free and
// sign-normalized, e.g. gcd(X1*(A1+X2), X3*(A1+X2)) == A1+X2 and
// gcd(X1, X2) == 1.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.split_cluster().second.sign_normalized();
  if (b.is_zero()) return a.split_cluster().second.sign_normalized();
  return detail::gcd_poly_parts(a.split_cluster().second, b.split_cluster().second);
}

// Equality up to a unit of the Laurent ring (sign and cluster monomial).
inline bool associates(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.split_cluster().second.sign_normalized() ==
         b.split_cluster().second.sign_normalized();
}

// Largest m with f^m dividing p exactly.  f must be neither zero nor a unit
// (units divide forever).
inline int factor_multiplicity(const Poly& p, const Poly& f) {
  if (p.is_zero()) throw Error("lpa: factor multiplicity in zero polynomial");
  if (f.is_zero() || f.split_cluster().second.is_integer_unit())
    throw Error("lpa: factor multiplicity of a unit or zero");
  int m = 0;
  Poly cur = p;
  while (auto q = try_exact_div(cur, f)) {
    cur = std::move(*q);
    ++m;
  }
  return m;
}

}  // namespace lpa
