#pragma once

// Seeds attached to a finite digraph, activation sequences over the complete
// graph, and the closed forms the engine is checked against.
//
// For the complete graph K_n the seed reached by activating the vertices of
// a duplicate-free sequence s = (s_1..s_k) has fully explicit exchange
// polynomials, hat monomials and cluster variables.  Symbols follow one
// convention everywhere: the initial variable of vertex p is cluster p, and
// the variable minted at step r of a sequence is cluster n+r.  Iterated
// engine mutation from the initial seed lands on exactly these refs, so
// closed forms and engine output compare by plain equality.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "lpa/seed.hpp"

namespace lpa {

enum class SeedKind { linear, binomial };

inline std::string to_string(SeedKind k) {
  return k == SeedKind::linear ? "linear" : "binomial";
}

class Digraph {
 public:
  Digraph(int n, std::vector<std::pair<int, int>> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw Error("lpa: digraph needs at least one vertex");
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto [a, b] = edges_[i];
      if (a < 1 || a > n_ || b < 1 || b > n_)
        throw Error("lpa: edge (" + std::to_string(a) + "," + std::to_string(b) +
                    ") out of range");
      if (a == b) throw Error("lpa: self-loop at vertex " + std::to_string(a));
      if (i > 0 && edges_[i] == edges_[i - 1])
        throw Error("lpa: duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }

  static Digraph complete(int n) {
    std::vector<std::pair<int, int>> es;
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        if (a != b) es.emplace_back(a, b);
    return Digraph(n, std::move(es));
  }

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::vector<int> out_neighbors(int v) const {
    std::vector<int> out;
    for (auto [a, b] : edges_)
      if (a == v) out.push_back(b);
    return out;
  }

  bool is_complete() const {
    return edges_.size() == static_cast<std::size_t>(n_) * (n_ - 1);
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;  // 1-based, sorted
};

// Initial seed with F_i = A_i + sum of out-neighbor variables.
inline Seed initial_seed_linear(const Digraph& g) {
  std::vector<Poly> ex;
  ex.reserve(static_cast<std::size_t>(g.n()));
  for (int i = 1; i <= g.n(); ++i) {
    Poly f = Poly::from_var(constant_ref(static_cast<std::uint32_t>(i)));
    for (int j : g.out_neighbors(i)) f += Poly::from_var(cluster_ref(static_cast<std::uint32_t>(j)));
    ex.push_back(std::move(f));
  }
  return Seed::initial(g.n(), std::move(ex));
}

// Initial seed with F_i = A_i + product of out-neighbor variables.
inline Seed initial_seed_binomial(const Digraph& g) {
  std::vector<Poly> ex;
  ex.reserve(static_cast<std::size_t>(g.n()));
  for (int i = 1; i <= g.n(); ++i) {
    Poly f = Poly::from_var(constant_ref(static_cast<std::uint32_t>(i)));
    Poly prod(Int(1));
    for (int j : g.out_neighbors(i)) prod *= Poly::from_var(cluster_ref(static_cast<std::uint32_t>(j)));
    ex.push_back(f + prod);
  }
  return Seed::initial(g.n(), std::move(ex));
}

inline Seed initial_seed(const Digraph& g, SeedKind k) {
  return k == SeedKind::linear ? initial_seed_linear(g) : initial_seed_binomial(g);
}

// --- activation sequences ------------------------------------------------------

// A duplicate-free sequence of vertices of [n]; the combinatorial shadow of
// a mutation path from the initial complete-graph seed.
class ActivationSequence {
 public:
  ActivationSequence(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
    if (n_ < 1) throw Error("lpa: activation sequence needs a positive rank");
    std::vector<bool> seen(static_cast<std::size_t>(n_) + 1, false);
    for (int e : entries_) {
      if (e < 1 || e > n_)
        throw Error("lpa: sequence entry " + std::to_string(e) + " out of range");
      if (seen[static_cast<std::size_t>(e)])
        throw Error("lpa: duplicate sequence entry " + std::to_string(e));
      seen[static_cast<std::size_t>(e)] = true;
    }
  }

  static ActivationSequence empty(int n) { return ActivationSequence(n, {}); }

  static ActivationSequence parse(int n, const std::string& text) {
    std::vector<int> entries;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string::npos) next = text.size();
      std::string tok = text.substr(pos, next - pos);
      if (tok.empty()) throw Error("lpa: empty entry in sequence '" + text + "'");
      for (char c : tok)
        if (c < '0' || c > '9') throw Error("lpa: bad sequence entry '" + tok + "'");
      entries.push_back(std::stoi(tok));
      pos = next + 1;
    }
    return ActivationSequence(n, std::move(entries));
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<int>& entries() const { return entries_; }
  int at(int r) const { return entries_.at(static_cast<std::size_t>(r - 1)); }  // 1-based

  bool contains(int v) const {
    return std::find(entries_.begin(), entries_.end(), v) != entries_.end();
  }
  // 1-based position of v, or 0.
  int position(int v) const {
    for (int r = 1; r <= size(); ++r)
      if (at(r) == v) return r;
    return 0;
  }

  ActivationSequence prefix(int r) const {
    return ActivationSequence(n_, {entries_.begin(), entries_.begin() + r});
  }

  std::vector<int> sorted_set() const {
    std::vector<int> s = entries_;
    std::sort(s.begin(), s.end());
    return s;
  }

  // The sequence labeling the seed reached by mutating the seed labeled by
  // *this in direction ell: append a new vertex, drop the last, or swap an
  // interior entry with its successor.
  ActivationSequence mutated(int ell) const {
    if (ell < 1 || ell > n_) throw Error("lpa: direction out of range");
    std::vector<int> e = entries_;
    int pos = position(ell);
    if (pos == 0) {
      e.push_back(ell);
    } else if (pos == size()) {
      e.pop_back();
    } else {
      std::swap(e[static_cast<std::size_t>(pos - 1)], e[static_cast<std::size_t>(pos)]);
    }
    return ActivationSequence(n_, std::move(e));
  }

  std::string str() const {
    std::string s;
    for (int e : entries_) {
      if (!s.empty()) s += ",";
      s += std::to_string(e);
    }
    return s;
  }
  std::string pretty() const { return "(" + str() + ")"; }

  friend bool operator==(const ActivationSequence&, const ActivationSequence&) = default;

 private:
  int n_;
  std::vector<int> entries_;
};

// All activation sequences over [n] with length <= max_len (default: all),
// ordered by length then lexicographically.
inline std::vector<ActivationSequence> all_sequences(int n, int max_len = -1) {
  if (max_len < 0 || max_len > n) max_len = n;
  std::vector<ActivationSequence> out;
  std::vector<std::vector<int>> level{{}};
  out.push_back(ActivationSequence::empty(n));
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& base : level)
      for (int v = 1; v <= n; ++v) {
        if (std::find(base.begin(), base.end(), v) != base.end()) continue;
        auto e = base;
        e.push_back(v);
        next.push_back(std::move(e));
      }
    std::sort(next.begin(), next.end());
    for (auto& e : next) out.push_back(ActivationSequence(n, e));
    level = std::move(next);
  }
  return out;
}

// --- symbols of a sequence seed ------------------------------------------------

// Variable minted at step r (1-based) of any sequence over [n].
inline VarRef step_symbol(int n, int r) {
  return cluster_ref(static_cast<std::uint32_t>(n + r));
}
inline VarRef initial_symbol(int p) { return cluster_ref(static_cast<std::uint32_t>(p)); }

struct SequenceSeed {
  Seed seed;
  std::vector<VarRef> minted;  // minted[r-1] = symbol created at step r
};

// Iterated engine mutation along s from the initial seed of g.
inline SequenceSeed seed_from_sequence(const ActivationSequence& s, const Digraph& g,
                                       SeedKind kind = SeedKind::binomial) {
  if (g.n() != s.n()) throw Error("lpa: sequence and graph rank differ");
  Seed seed = initial_seed(g, kind);
  std::vector<VarRef> minted;
  minted.reserve(static_cast<std::size_t>(s.size()));
  for (int r = 1; r <= s.size(); ++r) {
    int slot = s.at(r) - 1;
    seed = mutate(seed, slot);
    minted.push_back(seed.slot(slot).symbol);
    if (minted.back() != step_symbol(s.n(), r))
      throw EngineError("lpa: minted symbol out of convention");
  }
  return {std::move(seed), std::move(minted)};
}

// --- closed forms for K_n seeds --------------------------------------------------
//
// For the binomial seed of K_n and a sequence s of length k, every slot's
// exchange polynomial, the hat monomials and the last cluster variable have
// explicit forms, built from an auxiliary family partial(i) (i = 1..k).
// Conventions: the symbol of prefix r is Y(r) with Y(0) = 1, and empty
// products are 1.

class ClosedForms {
 public:
  ClosedForms(const ActivationSequence& s) : s_(s), n_(s.n()), k_(s.size()) {
    build();
  }

  // Exchange polynomial of direction ell in the seed of s.
  const Poly& exchange(int ell) const { return exchange_.at(static_cast<std::size_t>(ell - 1)); }

  // The auxiliary polynomial attached to position i (1-based, i <= k).
  const Poly& partial(int i) const { return partial_.at(static_cast<std::size_t>(i)); }

  // Hat denominator of position i: the monomial C(i) with
  // F-hat = exchange / C; trivial for i in {k-1, k}.
  Monomial hat_denominator(int i) const {
    Monomial c;
    for (int r = i + 2; r <= k_; ++r)
      c = c.times(Monomial::variable(sym(r), Exp(1) << (r - i - 1)));
    return c;
  }

  // F-hat_ell / F_ell as a Laurent monomial: 1 off the sequence, 1/C(i) at
  // position i.
  Monomial hat_ratio(int ell) const {
    int pos = s_.position(ell);
    return pos == 0 ? Monomial{} : hat_denominator(pos).inverse();
  }

 private:
  VarRef sym(int r) const { return step_symbol(n_, r); }

  Poly Y(int r) const {
    // r = k+1 only occurs inside the alternative form, where the factor
    // degenerates to 1; r = 0 is the empty-prefix convention.
    if (r == 0 || r == k_ + 1) return Poly(Int(1));
    return Poly::from_var(sym(r));
  }

  Poly prod_A(int r1, int r2) const {
    Poly p(Int(1));
    for (int r = r1; r <= r2; ++r)
      p *= Poly::from_var(constant_ref(static_cast<std::uint32_t>(s_.at(r))));
    return p;
  }

  // Product of the initial variables off the sequence, optionally skipping
  // one more vertex.
  Poly prod_X_off(int skip = 0) const {
    Poly p(Int(1));
    for (int rho = 1; rho <= n_; ++rho) {
      if (s_.contains(rho) || rho == skip) continue;
      p *= Poly::from_var(initial_symbol(rho));
    }
    return p;
  }

  Poly prod_partial(int r1, int r2) const {
    Poly p(Int(1));
    for (int r = r1; r <= r2; ++r) p *= partial(r);
    return p;
  }

  Poly A_at(int r) const {
    return Poly::from_var(constant_ref(static_cast<std::uint32_t>(s_.at(r))));
  }

  void build() {
    partial_.assign(static_cast<std::size_t>(k_) + 1, Poly{});
    for (int i = k_; i >= 1; --i) {
      if (i == k_) {
        partial_[static_cast<std::size_t>(i)] = prod_A(1, k_ - 1) * prod_X_off() + A_at(k_) * Y(k_ - 1);
      } else {
        partial_[static_cast<std::size_t>(i)] =
            prod_A(1, i - 1) * prod_X_off() * prod_partial(i + 1, k_) +
            A_at(i) * Y(i - 1) * Y(i + 1) * Poly::from_term(hat_denominator(i), 1);
      }
    }

    exchange_.clear();
    exchange_.reserve(static_cast<std::size_t>(n_));
    for (int ell = 1; ell <= n_; ++ell) {
      int i = s_.position(ell);
      if (i == 0) {
        exchange_.push_back(prod_A(1, k_) * prod_X_off(ell) +
                            Poly::from_var(constant_ref(static_cast<std::uint32_t>(ell))) * Y(k_));
      } else if (i == k_) {
        exchange_.push_back(partial(k_));
      } else {
        Poly sq = prod_A(1, i - 1) * prod_X_off() * prod_partial(i + 2, k_);
        exchange_.push_back(sq * sq +
                            Y(i - 1) * Y(i + 1) * Poly::from_term(hat_denominator(i), 1));
      }
    }

    // Self-check: the interior partial(i) equals its alternative expansion
    //   A_{s_{i+1}} Y(i) Y(i+2) C(i+1) (prod A)(prod X)(prod partial)
    //     + A_{s_i} * exchange(s_i).
    for (int i = 1; i <= k_ - 1; ++i) {
      Poly alt = A_at(i + 1) * Y(i) * Y(i + 2) *
                     Poly::from_term(hat_denominator(i + 1), 1) * prod_A(1, i - 1) *
                     prod_X_off() * prod_partial(i + 2, k_) +
                 A_at(i) * exchange(s_.at(i));
      if (alt != partial(i))
        throw EngineError("lpa: closed-form self-check failed at position " + std::to_string(i));
    }
  }

  ActivationSequence s_;
  int n_;
  int k_;
  std::vector<Poly> partial_;   // 1-based, [0] unused
  std::vector<Poly> exchange_;  // 0-based over directions
};

inline std::vector<Poly> closed_form_exchange(const ActivationSequence& s) {
  ClosedForms cf(s);
  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(s.n()));
  for (int ell = 1; ell <= s.n(); ++ell) out.push_back(cf.exchange(ell));
  return out;
}

inline Monomial closed_form_hat_ratio(const ActivationSequence& s, int ell) {
  return ClosedForms(s).hat_ratio(ell);
}

// The cluster variable created by the last step of s, as a Laurent
// polynomial in the initial variables:
//   [ sum_i (prod_{j != i} A_{s_j}) (prod_{p != s_i} X_p) + prod_j A_{s_j} ]
//     / prod_j X_{s_j}.
// Depends only on the underlying set of s.
inline Poly closed_form_cluster_variable(const ActivationSequence& s) {
  int k = s.size();
  if (k == 0) throw Error("lpa: cluster variable of the empty sequence");
  Poly out;
  Monomial inv_all;  // 1 / prod_{j in s} X_{s_j}
  for (int r = 1; r <= k; ++r)
    inv_all = inv_all.times(Monomial::variable(initial_symbol(s.at(r)), -1));
  Monomial off;  // prod of X off the sequence
  for (int rho = 1; rho <= s.n(); ++rho)
    if (!s.contains(rho)) off = off.times(Monomial::variable(initial_symbol(rho)));
  for (int i = 1; i <= k; ++i) {
    Monomial m = off.times(Monomial::variable(initial_symbol(s.at(i)), -1));
    for (int r = 1; r <= k; ++r)
      if (r != i) m = m.times(Monomial::variable(constant_ref(static_cast<std::uint32_t>(s.at(r)))));
    out.add_term(m, 1);
  }
  Monomial last = inv_all;
  for (int r = 1; r <= k; ++r)
    last = last.times(Monomial::variable(constant_ref(static_cast<std::uint32_t>(s.at(r)))));
  out.add_term(last, 1);
  return out;
}

}  // namespace lpa
