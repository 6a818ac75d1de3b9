#pragma once

// Seeds of a Laurent phenomenon algebra over R = Z[A_1..A_n], and the seed
// mutation pipeline.
//
// A rank-n seed holds n slots.  Slot i carries
//   * symbol:   the cluster variable's name (a cluster-class VarRef),
//   * ambient:  its value as a Laurent polynomial in the initial variables
//     X_1..X_n (the faithful representation inside the ambient field),
//   * exchange: the exchange polynomial, an ordinary polynomial in the
//     seed's symbols with coefficients in R, sign-normalized.
// The slot index is the mutation direction.  Fresh symbols are minted
// deterministically from next_fresh(), so a seed is a pure value and
// mutation never touches shared state.

#include <cassert>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lpa/gcd.hpp"
#include "lpa/poly.hpp"

namespace lpa {

// A mutation produced a non-Laurent ambient value: the defining property of
// the algebra failed (or the input seed was not a valid LP seed).
struct LaurentViolation : Error {
  using Error::Error;
};

struct SeedSlot {
  VarRef symbol;
  Poly ambient;
  Poly exchange;
};

class Seed {
 public:
  Seed(std::vector<SeedSlot> slots, std::uint32_t next_fresh)
      : slots_(std::move(slots)), next_fresh_(next_fresh) {
    if (slots_.empty()) throw Error("lpa: seed must have at least one slot");
  }

  // The canonical starting seed: slot i holds X_{i+1} with the given
  // exchange polynomial (expressed in the initial cluster variables).
  static Seed initial(int n, std::vector<Poly> exchange) {
    if (n < 1 || exchange.size() != static_cast<std::size_t>(n))
      throw Error("lpa: rank/exchange mismatch");
    std::vector<SeedSlot> slots;
    slots.reserve(exchange.size());
    for (int i = 0; i < n; ++i) {
      VarRef v = cluster_ref(static_cast<std::uint32_t>(i + 1));
      slots.push_back({v, Poly::from_var(v), exchange[i].sign_normalized()});
    }
    return Seed(std::move(slots), static_cast<std::uint32_t>(n + 1));
  }

  int rank() const { return static_cast<int>(slots_.size()); }
  const SeedSlot& slot(int i) const { return slots_.at(static_cast<std::size_t>(i)); }
  const std::vector<SeedSlot>& slots() const { return slots_; }
  std::uint32_t next_fresh() const { return next_fresh_; }

 private:
  std::vector<SeedSlot> slots_;
  std::uint32_t next_fresh_;
};

// --- validation --------------------------------------------------------------

struct ValidationIssue {
  int slot;           // 0-based
  std::string check;  // "nonzero" | "lp2" | "variable-free" | "irreducible" | "ambient"
  bool pass;
  std::string note;
};

struct ValidationReport {
  std::vector<ValidationIssue> entries;
  bool ok() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
  std::string summary() const {
    std::string s;
    for (const auto& e : entries) {
      if (e.pass && e.note.empty()) continue;
      if (!s.empty()) s += "; ";
      s += "slot " + std::to_string(e.slot + 1) + " " + e.check + ": " +
           (e.pass ? "ok" : "FAIL");
      if (!e.note.empty()) s += " (" + e.note + ")";
    }
    return s.empty() ? "ok" : s;
  }
};

namespace detail {

// Sufficient structural criterion for irreducibility over Z[A][X]: some
// variable occurs with degree exactly 1 and its cofactor shares no non-unit
// factor with the rest.  Writing f = c*v + w, any factorization has a factor
// free of v dividing both c and w, so coprimality forces it to be a unit.
// Covers A_i + (monomial), A_i + (sum of variables), and the
// constant-in-one-variable exchange polynomials produced here; everything
// else is reported as not certified rather than failed.
inline bool linear_variable_certificate(const Poly& f, VarRef* cert) {
  for (VarRef v : f.variables()) {
    if (f.degree_in(v) != 1 || f.min_exponent_in(v) < 0) continue;
    auto groups = f.coefficients_in(v);
    Poly c1, c0;
    for (const auto& [e, coef] : groups) (e == 1 ? c1 : c0) = coef;
    if (c0.is_zero()) {
      // f = c1 * v is irreducible exactly when it is +-v itself.
      if (!c1.is_integer_unit()) continue;
      if (cert) *cert = v;
      return true;
    }
    if (!gcd(c1, c0).is_one()) continue;
    // gcd() ignores cluster-monomial units; those must be coprime too.
    Monomial m1 = c1.cluster_content();
    Monomial m0 = c0.cluster_content();
    bool share = false;
    for (const auto& [var, e] : m1.factors()) {
      (void)e;
      if (m0.involves(var)) share = true;
    }
    if (share) continue;
    if (cert) *cert = v;
    return true;
  }
  return false;
}

}  // namespace detail

inline ValidationReport validate_seed(const Seed& s) {
  ValidationReport report;
  for (int i = 0; i < s.rank(); ++i) {
    const auto& sl = s.slot(i);
    const Poly& f = sl.exchange;

    report.entries.push_back({i, "nonzero", !f.is_zero(), ""});
    if (f.is_zero()) continue;

    report.entries.push_back(
        {i, "lp2", !f.involves(sl.symbol), f.involves(sl.symbol) ? "depends on own symbol" : ""});

    bool var_free = f.cluster_content().trivial();
    report.entries.push_back(
        {i, "variable-free", var_free, var_free ? "" : "divisible by a cluster variable"});

    // "Constant" = lies in the coefficient ring R = Z[A]; such exchange
    // polynomials are legal and worth a note.
    bool in_R = true;
    for (VarRef v : f.variables())
      if (v.kind == VarKind::cluster) in_R = false;
    if (f.is_integer_unit()) {
      report.entries.push_back({i, "irreducible", false, "unit exchange polynomial"});
    } else if (VarRef cert; detail::linear_variable_certificate(f, &cert)) {
      std::string note = "certified: linear in " + var_name(cert);
      if (in_R) note += "; constant exchange polynomial";
      report.entries.push_back({i, "irreducible", true, note});
    } else {
      report.entries.push_back({i, "irreducible", true,
                                in_R ? "constant exchange polynomial, not certified"
                                     : "not certified (assumed)"});
    }

    bool amb_ok = !sl.ambient.is_zero();
    report.entries.push_back({i, "ambient", amb_ok, amb_ok ? "" : "zero ambient value"});
  }
  return report;
}

// --- hat polynomials ---------------------------------------------------------

// F-hat_i = (prod_j symbol_j^{a_j}) * F_i with the unique exponents a_j <= 0
// making the substitution symbol_j <- F_j / Z Laurent but not divisible by
// F_j.  Writing F_i = sum_a e_a * symbol_j^a, the exponent is
// a_j = -min_a (a + multiplicity of F_j in e_a).
struct HatPolynomial {
  int base = 0;                  // slot whose exchange polynomial was dressed
  Poly laurent;                  // the hat polynomial itself
  std::map<int, Exp> exponents;  // slot -> a_j, only nonzero entries
  Exp exponent(int j) const {
    auto it = exponents.find(j);
    return it == exponents.end() ? 0 : it->second;
  }
};

inline HatPolynomial compute_hat(const Seed& s, int i) {
  const Poly& fi = s.slot(i).exchange;
  if (fi.is_zero()) throw Error("lpa: hat of zero exchange polynomial");
  HatPolynomial hat;
  hat.base = i;
  hat.laurent = fi;
  for (int j = 0; j < s.rank(); ++j) {
    if (j == i) continue;
    const Poly& fj = s.slot(j).exchange;
    Exp b = 0;
    bool first = true;
    for (const auto& [alpha, coef] : fi.coefficients_in(s.slot(j).symbol)) {
      if (alpha < 0) throw Error("lpa: exchange polynomial is not a polynomial");
      Exp cand = alpha + factor_multiplicity(coef, fj);
      if (first || cand < b) b = cand;
      first = false;
    }
    if (b > 0) {
      hat.exponents[j] = -b;
      hat.laurent = hat.laurent.times_monomial(Monomial::variable(s.slot(j).symbol, -b));
    }
  }
  return hat;
}

// Direct check of the defining property of the hat exponents for direction
// j: substituting symbol_j <- F_j/Z must be Laurent and not divisible by
// F_j.  Returns an empty string on success, else a description.
inline std::string check_hat_condition(const Seed& s, const HatPolynomial& hat, int j) {
  if (j == hat.base) return "";
  const Poly& fj = s.slot(j).exchange;
  Exp b = -hat.exponent(j);
  auto groups = s.slot(hat.base).exchange.coefficients_in(s.slot(j).symbol);
  for (const auto& [alpha, coef] : groups) {
    Poly cur = coef;
    for (Exp t = 0; t < b - alpha; ++t) {
      auto q = try_exact_div(cur, fj);
      if (!q) return "substitution not Laurent at exponent " + std::to_string(alpha);
      cur = std::move(*q);
    }
  }
  bool divisible = true;
  for (const auto& [alpha, coef] : groups) {
    if (alpha > b) continue;
    Poly cur = coef;
    bool ok = true;
    for (Exp t = 0; t < b + 1 - alpha && ok; ++t) {
      auto q = try_exact_div(cur, fj);
      if (q)
        cur = std::move(*q);
      else
        ok = false;
    }
    if (!ok) divisible = false;
  }
  if (divisible) return "substitution divisible by the exchange polynomial";
  return "";
}

// --- mutation ----------------------------------------------------------------

namespace detail {

inline Poly evaluate_at_ambients(const Poly& f, const Seed& s) {
  std::map<VarRef, Poly> values;
  for (const auto& sl : s.slots()) values.emplace(sl.symbol, sl.ambient);
  return evaluate_clusters(f, values);
}

}  // namespace detail

// One seed mutation in direction i.  Slot i gets a fresh symbol Z with
// ambient value F-hat_i(ambients) / (X_i * prod X_j^{b_j}); every other
// exchange polynomial that mentions X_i is rewritten through
//   G_j = F_j with X_i <- (F-hat_i at X_j=0) / Z,
// then stripped of all factors common with F-hat_i|_{X_j=0} and of its
// cluster-monomial content, and sign-normalized.
inline Seed mutate(const Seed& s, int i) {
  if (i < 0 || i >= s.rank()) throw Error("lpa: mutation direction out of range");
  const SeedSlot& si = s.slot(i);
  const Poly& fi = si.exchange;
  if (fi.is_zero()) throw Error("lpa: cannot mutate at a zero exchange polynomial");

  HatPolynomial hat = compute_hat(s, i);
  VarRef fresh = cluster_ref(s.next_fresh());

  // New ambient value: the exchange relation X_i * X_i' = F-hat_i, evaluated
  // in the ambient field.  Inexactness here is a Laurent-phenomenon failure.
  Poly numerator = detail::evaluate_at_ambients(fi, s);
  Poly denominator = si.ambient;
  for (const auto& [j, a] : hat.exponents)
    denominator *= s.slot(j).ambient.pow(-a);
  Poly new_ambient;
  {
    Poly witness;
    auto q = try_exact_div(numerator, denominator, &witness);
    if (!q)
      throw LaurentViolation("lpa: Laurent phenomenon violated mutating direction " +
                             std::to_string(i + 1));
    new_ambient = std::move(*q);
  }

  std::vector<SeedSlot> slots = s.slots();
  slots[static_cast<std::size_t>(i)] = {fresh, std::move(new_ambient), fi};

  for (int j = 0; j < s.rank(); ++j) {
    if (j == i) continue;
    const Poly& fj = s.slot(j).exchange;
    if (!fj.involves(si.symbol)) continue;

    // F_j depends on X_i, which forces a_j = 0, so F-hat_i|_{X_j=0} is the
    // Laurent monomial (prod_{l != i,j} X_l^{a_l}) times F_i|_{X_j=0}.
    if (hat.exponent(j) != 0) throw EngineError("lpa: hat exponent nonzero on a dependent slot");
    Poly e0 = fi.substitute_zero(s.slot(j).symbol);
    if (e0.is_zero()) throw EngineError("lpa: exchange polynomial divisible by a symbol");
    Monomial tail;  // the symbols_{l != i,j} part of the hat monomial
    for (const auto& [l, a] : hat.exponents)
      if (l != j) tail = tail.times(Monomial::variable(s.slot(l).symbol, a));

    // G_j's numerator: substitute X_i <- (tail * e0) / Z and clear Z^d.
    Poly d_full = e0.times_monomial(tail);
    auto groups = fj.coefficients_in(si.symbol);
    Exp d = groups.back().first;
    Poly g;
    Poly d_power(Int(1));
    Exp covered = 0;
    for (const auto& [beta, coef] : groups) {
      for (; covered < beta; ++covered) d_power *= d_full;
      g += (coef * d_power).times_monomial(Monomial::variable(fresh, d - beta));
    }

    Poly numer = g.split_cluster().second;
    Poly divisor = e0.split_cluster().second;
    while (true) {
      Poly common = gcd(numer, divisor);
      if (common.is_integer_unit()) break;
      numer = exact_div(numer, common);
    }
    slots[static_cast<std::size_t>(j)].exchange = numer.sign_normalized();
  }

  Seed out(std::move(slots), s.next_fresh() + 1);
  // Cheap structural postconditions; failures are engine bugs.
  for (int j = 0; j < out.rank(); ++j) {
    const auto& sl = out.slot(j);
    if (sl.exchange.is_zero() || sl.exchange.involves(sl.symbol) ||
        !sl.exchange.cluster_content().trivial() || !sl.exchange.is_polynomial())
      throw EngineError("lpa: mutation produced an invalid slot");
  }
  return out;
}

// --- canonical form ----------------------------------------------------------

// Canonical serialization: slots keyed by the sign-normalized canonical text
// of their ambient representation, sorted by that key; exchange polynomials
// sign-normalized with symbols renamed positionally (sorted slot r -> X_r).
// Two seeds are equivalent (equal clusters and exchange polynomials up to
// unit factors) iff their canonical forms are equal byte-for-byte.
inline std::string canonical_form(const Seed& s) {
  std::vector<std::pair<std::string, int>> keyed;
  keyed.reserve(s.slots().size());
  for (int i = 0; i < s.rank(); ++i)
    keyed.emplace_back(to_string(s.slot(i).ambient.sign_normalized()), i);
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t r = 1; r < keyed.size(); ++r)
    if (keyed[r].first == keyed[r - 1].first)
      throw EngineError("lpa: two slots share one ambient value");

  std::map<VarRef, VarRef> positional;
  for (std::size_t r = 0; r < keyed.size(); ++r)
    positional[s.slot(keyed[r].second).symbol] = cluster_ref(static_cast<std::uint32_t>(r + 1));

  std::string out = "rank:" + std::to_string(s.rank());
  for (const auto& [key, idx] : keyed) {
    out += ";" + key + "|";
    out += to_string(rename(s.slot(idx).exchange, positional).sign_normalized());
  }
  return out;
}

inline bool seeds_equivalent(const Seed& a, const Seed& b) {
  if (a.rank() != b.rank()) throw Error("lpa: comparing seeds of different rank");
  return canonical_form(a) == canonical_form(b);
}

}  // namespace lpa
