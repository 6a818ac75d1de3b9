#pragma once

// Exhaustive exploration of the exchange graph of a seed: vertices are
// equivalence classes of seeds (keyed by canonical form), edges are single
// mutations.
//
// One edge can carry different direction numbers at its two endpoints: when
// a mutation transposes two adjacent sequence entries, the slot mutated on
// the way "there" and the slot mutated on the way "back" are the two slots
// involved in the transposition.  Each vertex therefore stores its own
// direction -> neighbor table, and an undirected edge remembers the label on
// each side.
//
// Determinism: breadth-first by levels, directions in ascending order, and
// the vertices discovered in one level are numbered in lexicographic order
// of their canonical forms.  Two runs produce identical vertex numbering
// and edge lists.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lpa/graph_lp.hpp"
#include "lpa/seed.hpp"

namespace lpa {

struct ExchangeVertex {
  Seed seed;
  std::string canon;
  std::vector<int> neighbor;  // direction (0-based) -> vertex id
};

struct ExchangeEdge {
  int u = 0, v = 0;          // u < v
  int label_u = 0, label_v = 0;  // 0-based direction on each side
};

class ExchangeGraph {
 public:
  int rank() const { return rank_; }
  int root() const { return 0; }
  bool truncated() const { return truncated_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const ExchangeVertex& vertex(int id) const {
    return vertices_.at(static_cast<std::size_t>(id));
  }
  const std::vector<ExchangeVertex>& vertices() const { return vertices_; }
  const std::vector<ExchangeEdge>& edges() const { return edges_; }

  int find(const std::string& canon) const {
    auto it = index_.find(canon);
    return it == index_.end() ? -1 : it->second;
  }

  friend ExchangeGraph explore(const Seed& start, std::size_t max_seeds);

 private:
  int rank_ = 0;
  bool truncated_ = false;
  std::vector<ExchangeVertex> vertices_;
  std::vector<ExchangeEdge> edges_;
  std::map<std::string, int> index_;
};

// Breadth-first closure under mutation, stopping (with the truncated flag)
// once more than max_seeds vertices exist.  Every generated edge is checked
// for involution: mutating back must land on the seed we came from.
inline ExchangeGraph explore(const Seed& start, std::size_t max_seeds = 10000) {
  ExchangeGraph g;
  g.rank_ = start.rank();
  const int n = start.rank();

  auto add_vertex = [&](Seed s, std::string canon) {
    g.vertices_.push_back({std::move(s), canon, std::vector<int>(static_cast<std::size_t>(n), -1)});
    g.index_.emplace(std::move(canon), static_cast<int>(g.vertices_.size()) - 1);
  };
  add_vertex(start, canonical_form(start));

  std::vector<int> level{0};
  while (!level.empty() && !g.truncated_) {
    // Fresh seeds discovered while expanding this level, keyed by canonical
    // form so ids are assigned in canonical order.
    std::map<std::string, Seed> discovered;
    struct Pending {
      int from;
      int dir;
      std::string canon;
    };
    std::vector<Pending> pending;

    for (int v : level) {
      for (int dir = 0; dir < n; ++dir) {
        Seed t = mutate(g.vertices_[static_cast<std::size_t>(v)].seed, dir);
        std::string canon = canonical_form(t);
        Seed back = mutate(t, dir);
        if (canonical_form(back) != g.vertices_[static_cast<std::size_t>(v)].canon)
          throw EngineError("lpa: mutation is not an involution at direction " +
                            std::to_string(dir + 1));
        int known = g.find(canon);
        if (known >= 0) {
          g.vertices_[static_cast<std::size_t>(v)].neighbor[static_cast<std::size_t>(dir)] = known;
        } else {
          discovered.try_emplace(canon, std::move(t));
          pending.push_back({v, dir, std::move(canon)});
        }
      }
    }

    std::vector<int> next;
    for (auto& [canon, seed] : discovered) {
      if (g.vertices_.size() >= max_seeds) {
        g.truncated_ = true;
        break;
      }
      add_vertex(std::move(seed), canon);
      next.push_back(static_cast<int>(g.vertices_.size()) - 1);
    }
    for (auto& p : pending) {
      int id = g.find(p.canon);
      if (id >= 0)
        g.vertices_[static_cast<std::size_t>(p.from)].neighbor[static_cast<std::size_t>(p.dir)] = id;
    }
    level = std::move(next);
  }

  // Undirected edge list with the direction label seen from each side.
  std::map<std::pair<int, int>, ExchangeEdge> edge_map;
  for (int u = 0; u < static_cast<int>(g.vertices_.size()); ++u) {
    const auto& nb = g.vertices_[static_cast<std::size_t>(u)].neighbor;
    for (int dir = 0; dir < n; ++dir) {
      int v = nb[static_cast<std::size_t>(dir)];
      if (v < 0) continue;  // truncated frontier
      auto key = std::minmax(u, v);
      auto [it, fresh] = edge_map.try_emplace({key.first, key.second});
      if (fresh) {
        it->second.u = key.first;
        it->second.v = key.second;
        it->second.label_u = it->second.label_v = -1;
      }
      (u == key.first ? it->second.label_u : it->second.label_v) = dir;
    }
  }
  g.edges_.reserve(edge_map.size());
  for (auto& [k, e] : edge_map) {
    (void)k;
    g.edges_.push_back(e);
  }
  return g;
}

// --- structural verification ---------------------------------------------------

struct CountsReport {
  std::size_t seeds = 0, expected_seeds = 0;
  std::size_t variables = 0, expected_variables = 0;
  std::size_t edges = 0, expected_edges = 0;
  bool regular = false;
  bool pass = false;
  std::string detail;
};

// Seed count sum_{k=0..n} n!/k!, edge count n|V|/2, n-regularity with n
// distinct neighbors, and (for the binomial algebra) cluster-variable count
// 2^n + n - 1.  The variable-count formula is specific to the binomial
// seeds; pass check_variables = false for the linear ones, where the count
// is still reported but not asserted.
inline CountsReport verify_counts(const ExchangeGraph& g, int n, bool check_variables = true) {
  if (g.truncated()) throw Error("lpa: exploration was truncated; counts unavailable");
  CountsReport r;
  r.seeds = g.vertex_count();
  r.edges = g.edges().size();

  // sum over k of n!/k! = sum over k of (number of length-k sequences)
  std::size_t expected = 0, falling = 1;
  for (int k = 0; k <= n; ++k) {
    expected += falling;
    falling *= static_cast<std::size_t>(n - k);
  }
  r.expected_seeds = expected;
  r.expected_edges = static_cast<std::size_t>(n) * r.seeds / 2;
  r.expected_variables = (static_cast<std::size_t>(1) << n) + static_cast<std::size_t>(n) - 1;

  std::set<std::string> ambients;
  for (const auto& vx : g.vertices())
    for (const auto& sl : vx.seed.slots())
      ambients.insert(to_string(sl.ambient.sign_normalized()));
  r.variables = ambients.size();

  r.regular = true;
  for (const auto& vx : g.vertices()) {
    std::set<int> distinct;
    for (int nb : vx.neighbor) {
      if (nb < 0) r.regular = false;
      distinct.insert(nb);
    }
    if (distinct.size() != static_cast<std::size_t>(n)) r.regular = false;
  }

  r.pass = r.seeds == r.expected_seeds && r.edges == r.expected_edges && r.regular &&
           (!check_variables || r.variables == r.expected_variables);
  r.detail = "seeds " + std::to_string(r.seeds) + "/" + std::to_string(r.expected_seeds) +
             ", variables " + std::to_string(r.variables) +
             (check_variables ? "/" + std::to_string(r.expected_variables) : " (not asserted)") +
             ", edges " + std::to_string(r.edges) + "/" + std::to_string(r.expected_edges) +
             ", " + (r.regular ? "regular" : "NOT regular");
  return r;
}

struct SequenceLabeling {
  bool ok = false;
  std::vector<ActivationSequence> labels;
  std::string conflict;
};

// Label every vertex with an activation sequence by walking the graph from
// the root and applying the append/truncate/transpose rule along each edge;
// any disagreement between two walks is a conflict.  Vertex ids are in BFS
// order, so ascending id order is a valid traversal order.
inline SequenceLabeling label_by_sequences(const ExchangeGraph& g) {
  SequenceLabeling out;
  if (g.truncated()) {
    out.conflict = "graph truncated";
    return out;
  }
  const int n = g.rank();
  std::vector<ActivationSequence> labels(g.vertex_count(), ActivationSequence::empty(n));
  std::vector<bool> have(g.vertex_count(), false);
  have[0] = true;
  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) {
    if (!have[static_cast<std::size_t>(v)]) {
      out.conflict = "vertex " + std::to_string(v) + " unreached";
      return out;
    }
    for (int dir = 0; dir < n; ++dir) {
      int u = g.vertex(v).neighbor[static_cast<std::size_t>(dir)];
      if (u < 0) continue;
      ActivationSequence expect = labels[static_cast<std::size_t>(v)].mutated(dir + 1);
      if (!have[static_cast<std::size_t>(u)]) {
        labels[static_cast<std::size_t>(u)] = expect;
        have[static_cast<std::size_t>(u)] = true;
      } else if (!(labels[static_cast<std::size_t>(u)] == expect)) {
        out.conflict = "edge " + std::to_string(v) + "-(" + std::to_string(dir + 1) + ")->" +
                       std::to_string(u) + ": expected " + expect.pretty() + ", found " +
                       labels[static_cast<std::size_t>(u)].pretty();
        return out;
      }
    }
  }
  std::set<std::string> distinct;
  for (const auto& l : labels) distinct.insert(l.str());
  if (distinct.size() != labels.size()) {
    out.conflict = "labels not distinct";
    return out;
  }
  out.ok = true;
  out.labels = std::move(labels);
  return out;
}

struct IsomorphismReport {
  bool ok = false;
  std::vector<int> map;  // vertex of a -> vertex of b
  std::string failure;
};

// Label both graphs by sequences and check that matching labels gives a
// bijection sending every direction-labeled incidence of a to one of b.
inline IsomorphismReport verify_isomorphism(const ExchangeGraph& a, const ExchangeGraph& b) {
  IsomorphismReport rep;
  auto la = label_by_sequences(a);
  auto lb = label_by_sequences(b);
  if (!la.ok || !lb.ok) {
    rep.failure = "labeling failed: " + (la.ok ? lb.conflict : la.conflict);
    return rep;
  }
  if (a.vertex_count() != b.vertex_count()) {
    rep.failure = "vertex counts differ";
    return rep;
  }
  std::map<std::string, int> of_b;
  for (int v = 0; v < static_cast<int>(b.vertex_count()); ++v)
    of_b[lb.labels[static_cast<std::size_t>(v)].str()] = v;
  rep.map.assign(a.vertex_count(), -1);
  for (int v = 0; v < static_cast<int>(a.vertex_count()); ++v) {
    auto it = of_b.find(la.labels[static_cast<std::size_t>(v)].str());
    if (it == of_b.end()) {
      rep.failure = "label " + la.labels[static_cast<std::size_t>(v)].pretty() + " missing in b";
      return rep;
    }
    rep.map[static_cast<std::size_t>(v)] = it->second;
  }
  for (int v = 0; v < static_cast<int>(a.vertex_count()); ++v) {
    for (int dir = 0; dir < a.rank(); ++dir) {
      int u = a.vertex(v).neighbor[static_cast<std::size_t>(dir)];
      int bu = b.vertex(rep.map[static_cast<std::size_t>(v)]).neighbor[static_cast<std::size_t>(dir)];
      if (bu != rep.map[static_cast<std::size_t>(u)]) {
        rep.failure = "edge mismatch at vertex " + std::to_string(v) + " direction " +
                      std::to_string(dir + 1);
        return rep;
      }
    }
  }
  rep.ok = true;
  return rep;
}

}  // namespace lpa
