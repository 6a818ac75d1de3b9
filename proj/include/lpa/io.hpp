#pragma once

// JSON and DOT serialization.  Seeds travel as {rank, slots:[{ambient,
// exchange}]} with exchange polynomials written positionally (slot i's
// symbol prints as X<i+1>), so a save/load/save round trip is bit-exact.
// Exchange graphs travel as a vertex/edge document that the DOT writer also
// consumes.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lpa/explore.hpp"
#include "lpa/graph_lp.hpp"
#include "lpa/seed.hpp"

namespace lpa {

using json = nlohmann::json;

// --- seeds ----------------------------------------------------------------------

inline json seed_to_json(const Seed& s) {
  std::map<VarRef, VarRef> positional;
  for (int i = 0; i < s.rank(); ++i)
    positional[s.slot(i).symbol] = cluster_ref(static_cast<std::uint32_t>(i + 1));
  json slots = json::array();
  for (const auto& sl : s.slots())
    slots.push_back({{"ambient", to_string(sl.ambient)},
                     {"exchange", to_string(rename(sl.exchange, positional))}});
  return json{{"rank", s.rank()}, {"slots", std::move(slots)}};
}

inline Seed seed_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("slots"))
    throw ParseError("lpa: seed JSON must have \"rank\" and \"slots\"");
  if (!j["rank"].is_number_integer() || j["rank"].get<int>() < 1)
    throw ParseError("lpa: seed JSON \"rank\" must be a positive integer");
  int n = j["rank"].get<int>();
  const json& slots = j["slots"];
  if (!slots.is_array() || slots.size() != static_cast<std::size_t>(n))
    throw ParseError("lpa: seed JSON needs exactly " + std::to_string(n) + " slots");

  auto in_range = [n](const Poly& p, const char* what) {
    for (const auto& v : p.variables())
      if (v.kind == VarKind::cluster && v.index > static_cast<std::uint32_t>(n))
        throw ParseError(std::string("lpa: ") + what + " mentions " + var_name(v) +
                         " beyond rank " + std::to_string(n));
  };

  std::vector<SeedSlot> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const json& sl = slots[static_cast<std::size_t>(i)];
    if (!sl.is_object() || !sl.contains("ambient") || !sl.contains("exchange") ||
        !sl["ambient"].is_string() || !sl["exchange"].is_string())
      throw ParseError("lpa: seed JSON slot " + std::to_string(i + 1) +
                       " needs string \"ambient\" and \"exchange\"");
    Poly ambient = parse_poly(sl["ambient"].get<std::string>());
    Poly exchange = parse_poly(sl["exchange"].get<std::string>());
    in_range(ambient, "ambient");
    in_range(exchange, "exchange polynomial");
    out.push_back({cluster_ref(static_cast<std::uint32_t>(i + 1)), std::move(ambient),
                   std::move(exchange)});
  }
  return Seed(std::move(out), static_cast<std::uint32_t>(n + 1));
}

// --- digraphs -------------------------------------------------------------------

inline json digraph_to_json(const Digraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back(json::array({a, b}));
  return json{{"n", g.n()}, {"edges", std::move(edges)}};
}

inline Digraph digraph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw ParseError("lpa: digraph JSON must have \"n\" and \"edges\"");
  if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
    throw ParseError("lpa: digraph JSON \"n\" must be a positive integer");
  if (!j["edges"].is_array()) throw ParseError("lpa: digraph JSON \"edges\" must be an array");
  std::vector<std::pair<int, int>> edges;
  for (const json& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError("lpa: digraph edge must be a pair of integers, got " + e.dump());
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Digraph(j["n"].get<int>(), std::move(edges));
}

// --- exchange graphs ------------------------------------------------------------

// Vertex sequences come from label_by_sequences when it succeeds; edge
// entries are [u, v, label_u, label_v] with 1-based direction labels.
inline json graph_to_json(const ExchangeGraph& g, SeedKind kind,
                          const SequenceLabeling* labels = nullptr, bool with_seeds = false) {
  json vertices = json::array();
  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) {
    json vx{{"id", v}};
    if (labels && labels->ok) vx["sequence"] = labels->labels[static_cast<std::size_t>(v)].str();
    if (with_seeds) vx["seed"] = seed_to_json(g.vertex(v).seed);
    vertices.push_back(std::move(vx));
  }
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back(json::array({e.u, e.v, e.label_u + 1, e.label_v + 1}));
  return json{{"kind", to_string(kind)},
              {"n", g.rank()},
              {"root", g.root()},
              {"truncated", g.truncated()},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)}};
}

// DOT rendering of a graph document.  Vertices show their activation
// sequence when present; an edge whose two sides carry different direction
// labels shows both.
inline std::string graph_doc_to_dot(const json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges") ||
      !doc["vertices"].is_array() || !doc["edges"].is_array())
    throw ParseError("lpa: graph JSON must have \"vertices\" and \"edges\" arrays");
  std::string out = "graph exchange {\n";
  for (const json& vx : doc["vertices"]) {
    if (!vx.is_object() || !vx.contains("id") || !vx["id"].is_number_integer())
      throw ParseError("lpa: graph JSON vertex needs an integer \"id\", got " + vx.dump());
    int id = vx["id"].get<int>();
    std::string label = "v" + std::to_string(id);
    if (vx.contains("sequence")) {
      if (!vx["sequence"].is_string())
        throw ParseError("lpa: graph JSON vertex \"sequence\" must be a string");
      label = "(" + vx["sequence"].get<std::string>() + ")";
    }
    out += "  v" + std::to_string(id) + " [label=\"" + label + "\"];\n";
  }
  for (const json& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number_integer() || !e[3].is_number_integer())
      throw ParseError("lpa: graph JSON edge must be [u, v, label_u, label_v], got " + e.dump());
    std::string label = std::to_string(e[2].get<int>());
    if (e[2] != e[3]) label += "/" + std::to_string(e[3].get<int>());
    out += "  v" + std::to_string(e[0].get<int>()) + " -- v" + std::to_string(e[1].get<int>()) +
           " [label=\"" + label + "\"];\n";
  }
  out += "}\n";
  return out;
}

inline std::string graph_to_dot(const ExchangeGraph& g, SeedKind kind,
                                const SequenceLabeling* labels = nullptr) {
  return graph_doc_to_dot(graph_to_json(g, kind, labels));
}

}  // namespace lpa
