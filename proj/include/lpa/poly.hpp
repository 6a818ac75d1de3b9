#pragma once

// Sparse multivariate Laurent polynomials over Z[A_1, A_2, ...].
//
// Two classes of variables share one global namespace:
//   * constant-class generators A_i of the coefficient ring (exponents are
//     never negative anywhere),
//   * cluster-class symbols X_i (exponents may be negative in Laurent
//     context; creation order of indices fixes the variable order).
//
// A fixed monomial order (graded lexicographic: total degree first, ties by
// exponents compared from the largest variable down) determines leading
// terms, sign normalization and the canonical text form.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lpa {

using Int = boost::multiprecision::cpp_int;
using Exp = std::int64_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct NotInvertible : Error {
  using Error::Error;
};
// Engine invariant broke; indicates a bug, not bad input.
struct EngineError : Error {
  using Error::Error;
};

enum class VarKind : std::uint8_t { constant = 0, cluster = 1 };

// Identity of one variable.  Ordering: all constant-class variables below
// all cluster-class ones, then by index; this is the variable order used by
// the monomial order and the canonical serialization.
struct VarRef {
  VarKind kind{VarKind::constant};
  std::uint32_t index{0};  // 1-based
  friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

inline VarRef constant_ref(std::uint32_t i) { return VarRef{VarKind::constant, i}; }
inline VarRef cluster_ref(std::uint32_t i) { return VarRef{VarKind::cluster, i}; }

// Default display names: constants "A<i>", clusters "X<i>".
inline std::string var_name(VarRef v) {
  return (v.kind == VarKind::constant ? "A" : "X") + std::to_string(v.index);
}

namespace detail {
inline Exp checked_add(Exp a, Exp b) {
  Exp r = a + b;
  if ((a > 0 && b > 0 && r < a) || (a < 0 && b < 0 && r > a))
    throw Error("lpa: exponent overflow");
  return r;
}
inline Exp checked_mul(Exp a, Exp b) {
  if (a != 0 && (b > (INT64_MAX / (a > 0 ? a : -a)) || b < (INT64_MIN / (a > 0 ? a : -a))))
    throw Error("lpa: exponent overflow");
  return a * b;
}
}  // namespace detail

// Product of variable powers; exponents never zero in the stored form.
class Monomial {
 public:
  using Factor = std::pair<VarRef, Exp>;

  Monomial() = default;

  static Monomial variable(VarRef v, Exp e = 1) {
    Monomial m;
    if (e != 0) {
      if (v.kind == VarKind::constant && e < 0)
        throw Error("lpa: negative exponent on constant-class variable");
      m.factors_.emplace_back(v, e);
    }
    return m;
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool trivial() const { return factors_.empty(); }

  Exp exponent(VarRef v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Factor& f, VarRef x) { return f.first < x; });
    return (it != factors_.end() && it->first == v) ? it->second : 0;
  }

  Exp degree() const {
    Exp d = 0;
    for (const auto& [v, e] : factors_) d = detail::checked_add(d, e);
    return d;
  }

  bool all_nonnegative() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const Factor& f) { return f.second >= 0; });
  }

  Monomial times(const Monomial& o) const {
    Monomial r;
    r.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() || b != o.factors_.end()) {
      if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
        r.factors_.push_back(*a++);
      } else if (a == factors_.end() || b->first < a->first) {
        r.factors_.push_back(*b++);
      } else {
        Exp e = detail::checked_add(a->second, b->second);
        if (e != 0) r.factors_.emplace_back(a->first, e);
        ++a;
        ++b;
      }
    }
    return r;
  }

  // this / o; cluster exponents may go negative, constants may not.
  Monomial divided_by(const Monomial& o) const {
    Monomial r = times(o.inverse_unchecked());
    for (const auto& [v, e] : r.factors_)
      if (v.kind == VarKind::constant && e < 0)
        throw Error("lpa: monomial division would need a negative constant exponent");
    return r;
  }

  // Componentwise <=: o / this has no negative exponent at all.
  bool divides(const Monomial& o) const {
    for (const auto& [v, e] : factors_)
      if (e > o.exponent(v)) return false;
    return true;
  }

  Monomial power(Exp n) const {
    Monomial r;
    for (const auto& [v, e] : factors_) {
      Exp ne = detail::checked_mul(e, n);
      if (ne != 0) r.factors_.emplace_back(v, ne);
    }
    if (n < 0)
      for (const auto& [v, e] : r.factors_)
        if (v.kind == VarKind::constant && e < 0)
          throw NotInvertible("lpa: not invertible (constant-class variable)");
    return r;
  }

  Monomial inverse() const { return power(-1); }

  bool involves(VarRef v) const { return exponent(v) != 0; }

  Monomial without(VarRef v) const {
    Monomial r;
    r.factors_.reserve(factors_.size());
    for (const auto& f : factors_)
      if (f.first != v) r.factors_.push_back(f);
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  Monomial inverse_unchecked() const {
    Monomial r;
    r.factors_.reserve(factors_.size());
    for (const auto& [v, e] : factors_) r.factors_.emplace_back(v, -e);
    return r;
  }

  std::vector<Factor> factors_;  // sorted ascending by variable
};

// Graded lexicographic comparison: total degree first; ties broken by the
// exponent of the largest variable where the two differ (missing = 0).
// Returns <0, 0, >0.  Multiplicative, so exact division by leading terms is
// sound even with negative exponents.
inline int compare_grlex(const Monomial& a, const Monomial& b) {
  Exp da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  auto ia = a.factors().rbegin(), ea = a.factors().rend();
  auto ib = b.factors().rbegin(), eb = b.factors().rend();
  while (ia != ea || ib != eb) {
    Exp xa = 0, xb = 0;
    if (ib == eb || (ia != ea && ib->first < ia->first)) {
      xa = ia->second;
      ++ia;
    } else if (ia == ea || ia->first < ib->first) {
      xb = ib->second;
      ++ib;
    } else {
      xa = ia->second;
      xb = ib->second;
      ++ia;
      ++ib;
    }
    if (xa != xb) return xa < xb ? -1 : 1;
  }
  return 0;
}

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_grlex(a, b) > 0;
  }
};

// Immutable-by-convention sparse polynomial; the term map iterates in
// descending monomial order, so begin() is the leading term and plain
// iteration yields the canonical term order.
class Poly {
 public:
  using TermMap = std::map<Monomial, Int, MonomialGreater>;

  Poly() = default;
  explicit Poly(Int c) { add_term(Monomial{}, std::move(c)); }
  explicit Poly(long c) { add_term(Monomial{}, Int(c)); }

  static Poly from_var(VarRef v, Exp e = 1) {
    Poly p;
    p.add_term(Monomial::variable(v, e), 1);
    return p;
  }
  static Poly from_term(Monomial m, Int c) {
    Poly p;
    p.add_term(std::move(m), std::move(c));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.trivial());
  }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.trivial() && terms_.begin()->second == 1;
  }
  // Unit of the polynomial coefficient ring Z[A]: exactly +-1.
  bool is_integer_unit() const {
    return terms_.size() == 1 && terms_.begin()->first.trivial() &&
           (terms_.begin()->second == 1 || terms_.begin()->second == -1);
  }
  bool is_single_term() const { return terms_.size() == 1; }

  const std::pair<const Monomial, Int>& leading() const {
    if (terms_.empty()) throw Error("lpa: leading term of zero polynomial");
    return *terms_.begin();
  }

  void add_term(Monomial m, Int c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(m), std::move(c));
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(Poly a, const Int& c) {
    if (c == 0) return Poly{};
    for (auto& [m, x] : a.terms_) x *= c;
    return a;
  }
  friend Poly operator*(const Int& c, Poly a) { return std::move(a) * c; }

  Poly times_monomial(const Monomial& m) const {
    Poly r;
    // Multiplying every term by one monomial preserves the relative order.
    auto hint = r.terms_.end();
    for (const auto& [mm, c] : terms_) hint = r.terms_.emplace_hint(hint, mm.times(m), c);
    return r;
  }

  // p^n.  Negative n requires a single invertible term (coefficient +-1 and
  // no constant-class variable).
  Poly pow(Exp n) const {
    if (n < 0) {
      if (!is_single_term()) throw NotInvertible("lpa: not invertible (non-monomial)");
      const auto& [m, c] = *terms_.begin();
      if (c != 1 && c != -1) throw NotInvertible("lpa: not invertible (coefficient)");
      Int cc = (n % 2 == 0) ? Int(1) : c;
      return from_term(m.power(n), cc);
    }
    Poly result(Int(1));
    Poly base = *this;
    Exp k = n;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  Exp degree() const {
    Exp d = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      (void)c;
      if (first || m.degree() > d) d = m.degree();
      first = false;
    }
    return d;
  }

  Exp degree_in(VarRef v) const {
    Exp d = 0;
    for (const auto& [m, c] : terms_) {
      (void)c;
      d = std::max(d, m.exponent(v));
    }
    return d;
  }

  Exp min_exponent_in(VarRef v) const {
    Exp d = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      (void)c;
      Exp e = m.exponent(v);
      if (first || e < d) d = e;
      first = false;
    }
    return d;
  }

  bool involves(VarRef v) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return t.first.involves(v); });
  }

  std::set<VarRef> variables() const {
    std::set<VarRef> vs;
    for (const auto& [m, c] : terms_) {
      (void)c;
      for (const auto& [v, e] : m.factors()) {
        (void)e;
        vs.insert(v);
      }
    }
    return vs;
  }

  // True if no cluster variable carries a negative exponent (constants never
  // do); i.e. the value lies in the ordinary polynomial ring.
  bool is_polynomial() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.all_nonnegative(); });
  }

  // Componentwise minimum of cluster-variable exponents over all terms
  // (absent variable counts as 0).  This is the Laurent monomial content;
  // dividing by it leaves, for each cluster variable, some term free of it.
  Monomial cluster_content() const {
    std::map<VarRef, Exp> acc;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      (void)c;
      if (first) {
        for (const auto& [v, e] : m.factors())
          if (v.kind == VarKind::cluster) acc[v] = e;
        first = false;
        continue;
      }
      for (auto& [v, e] : acc) e = std::min(e, m.exponent(v));
      for (const auto& [v, e] : m.factors())
        if (v.kind == VarKind::cluster && e < 0 && !acc.count(v)) acc[v] = std::min<Exp>(e, 0);
    }
    Monomial r;
    for (const auto& [v, e] : acc)
      if (e != 0) r = r.times(Monomial::variable(v, e));
    return r;
  }

  // p = content * part with trivial cluster content in the part.
  std::pair<Monomial, Poly> split_cluster() const {
    Monomial m = cluster_content();
    if (m.trivial()) return {m, *this};
    return {m, times_monomial(m.inverse())};
  }

  // Leading coefficient made positive (the canonical representative among
  // {p, -p}).
  Poly sign_normalized() const {
    if (is_zero() || leading().second > 0) return *this;
    return -*this;
  }

  // Terms grouped by the exponent of v, ascending; v removed from the
  // returned coefficient polynomials.
  std::vector<std::pair<Exp, Poly>> coefficients_in(VarRef v) const {
    std::map<Exp, Poly> groups;
    for (const auto& [m, c] : terms_) groups[m.exponent(v)].add_term(m.without(v), c);
    return {groups.begin(), groups.end()};
  }

  // p with v set to 0; requires that v never appears with negative exponent.
  Poly substitute_zero(VarRef v) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
      Exp e = m.exponent(v);
      if (e < 0) throw Error("lpa: cannot substitute 0 into a negative power");
      if (e == 0) r.add_term(m, c);
    }
    return r;
  }

 private:
  TermMap terms_;
};

inline Poly operator*(const Poly& a, long c) { return a * Int(c); }

// Evaluate p with the given cluster variables replaced by polynomial values
// (all occurrences must have nonnegative exponents); other variables stay.
inline Poly evaluate_clusters(const Poly& p, const std::map<VarRef, Poly>& values) {
  std::map<VarRef, std::vector<Poly>> power_cache;
  auto power_of = [&](VarRef v, Exp e) -> const Poly& {
    auto& tower = power_cache[v];
    if (tower.empty()) tower.push_back(Poly(Int(1)));
    while (static_cast<Exp>(tower.size()) <= e) tower.push_back(tower.back() * values.at(v));
    return tower[static_cast<std::size_t>(e)];
  };
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept;
    Poly term(c);
    for (const auto& [v, e] : m.factors()) {
      if (values.count(v)) {
        if (e < 0) throw Error("lpa: evaluation at a negative exponent");
        term *= power_of(v, e);
      } else {
        kept = kept.times(Monomial::variable(v, e));
      }
    }
    out += term.times_monomial(kept);
  }
  return out;
}

// Rename variables through `live` (old -> new); unmapped variables survive.
inline Poly rename(const Poly& p, const std::map<VarRef, VarRef>& live) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial nm;
    for (const auto& [v, e] : m.factors()) {
      auto it = live.find(v);
      nm = nm.times(Monomial::variable(it == live.end() ? v : it->second, e));
    }
    out.add_term(nm, c);
  }
  return out;
}

// --- exact division ---------------------------------------------------------

// Carries the first remainder that witnessed inexactness.
struct InexactDivision : Error {
  InexactDivision(const std::string& msg, Poly rem)
      : Error(msg), remainder(std::move(rem)) {}
  Poly remainder;
};

// Laurent-exact division: cluster monomials are units, so only the
// monomial-free parts must divide.  Returns std::nullopt when inexact (the
// witness remainder goes to *witness if given).
inline std::optional<Poly> try_exact_div(const Poly& p, const Poly& d, Poly* witness = nullptr) {
  if (d.is_zero()) throw Error("lpa: division by zero polynomial");
  if (p.is_zero()) return Poly{};
  auto [mp, np] = p.split_cluster();
  auto [md, nd] = d.split_cluster();
  const auto& [dm, dc] = nd.leading();
  Poly q;
  Poly r = np;
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    if (!dm.divides(rm) || rc % dc != 0) {
      if (witness) *witness = r.times_monomial(mp);
      return std::nullopt;
    }
    Monomial qm = rm.divided_by(dm);
    Int qc = rc / dc;
    q.add_term(qm, qc);
    r -= Poly::from_term(std::move(qm), std::move(qc)) * nd;
  }
  return q.times_monomial(mp.divided_by(md));
}

inline Poly exact_div(const Poly& p, const Poly& d) {
  Poly witness;
  if (auto q = try_exact_div(p, d, &witness)) return *q;
  throw InexactDivision("lpa: inexact division, remainder " +
                            std::to_string(witness.term_count()) + " term(s)",
                        witness);
}

// --- canonical text form -----------------------------------------------------
//
// Terms in descending monomial order, joined by +/-; each term is
// "coef*A1^e*X2^f" with factor order = variable order, coefficient 1 and
// exponent 1 omitted.  Negative exponents render as "X1^-1".  This string is
// the golden-file and hashing format; parse() inverts it exactly.

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    Int mag = c < 0 ? Int(-c) : c;
    out += (c < 0) ? "-" : (out.empty() ? "" : "+");
    std::string body;
    if (mag != 1 || m.trivial()) body = mag.str();
    for (const auto& [v, e] : m.factors()) {
      if (!body.empty()) body += "*";
      body += var_name(v);
      if (e != 1) body += "^" + std::to_string(e);
    }
    out += body;
  }
  return out;
}

namespace detail {

// name -> variable; defaults to the A<i>/X<i> scheme.
using VarResolver = std::function<VarRef(const std::string&)>;

inline VarRef default_resolver(const std::string& name) {
  if (name.size() < 2 || (name[0] != 'A' && name[0] != 'X'))
    throw ParseError("lpa: unknown variable '" + name + "'");
  std::uint32_t idx = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9')
      throw ParseError("lpa: unknown variable '" + name + "'");
    idx = idx * 10 + static_cast<std::uint32_t>(name[i] - '0');
  }
  if (idx == 0) throw ParseError("lpa: variable index must be positive in '" + name + "'");
  return name[0] == 'A' ? constant_ref(idx) : cluster_ref(idx);
}

}  // namespace detail

inline Poly parse_poly(const std::string& text,
                       const detail::VarResolver& resolve = detail::default_resolver) {
  std::string s;
  s.reserve(text.size());
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw ParseError("lpa: empty polynomial text");

  std::size_t pos = 0;
  auto read_int = [&]() -> Int {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw ParseError("lpa: expected integer at '" + s.substr(start) + "'");
    return Int(s.substr(start, pos - start));
  };

  Poly result;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw ParseError("lpa: expected '+' or '-' at '" + s.substr(pos) + "'");
    }
    first = false;
    Int coef(sign);
    Monomial mono;
    bool expect_factor = true;
    while (expect_factor) {
      if (pos >= s.size()) throw ParseError("lpa: dangling term in '" + text + "'");
      if (s[pos] >= '0' && s[pos] <= '9') {
        coef *= read_int();
      } else {
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != '*' && s[pos] != '^' && s[pos] != '+' && s[pos] != '-')
          ++pos;
        VarRef v = resolve(s.substr(start, pos - start));
        Exp e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = static_cast<Exp>(read_int().convert_to<long long>());
        }
        if (v.kind == VarKind::constant && e < 0)
          throw ParseError("lpa: negative exponent on constant-class variable in '" + text + "'");
        mono = mono.times(Monomial::variable(v, e));
      }
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        expect_factor = true;
      } else {
        expect_factor = false;
      }
    }
    result.add_term(std::move(mono), std::move(coef));
  }
  return result;
}

}  // namespace lpa
