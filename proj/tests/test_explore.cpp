#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lpa/explore.hpp"
#include "lpa/verify.hpp"

using namespace lpa;

namespace {
Seed tau(int n) { return initial_seed_binomial(Digraph::complete(n)); }
Seed tee(int n) { return initial_seed_linear(Digraph::complete(n)); }

void require_all(const CheckReport& r) {
  REQUIRE_FALSE(r.empty());
  for (const auto& row : r) {
    INFO(row.check << " [" << row.instance << "]: " << row.detail);
    REQUIRE(row.pass);
  }
}
}  // namespace

TEST_CASE("rank-1 exchange graph is a single edge", "[explore]") {
  ExchangeGraph g = explore(tau(1));
  REQUIRE_FALSE(g.truncated());
  REQUIRE(g.root() == 0);
  REQUIRE(g.vertex_count() == 2);
  REQUIRE(g.edges().size() == 1);
  REQUIRE(g.edges()[0].u == 0);
  REQUIRE(g.edges()[0].v == 1);
  REQUIRE(g.edges()[0].label_u == 0);
  REQUIRE(g.edges()[0].label_v == 0);
  REQUIRE(g.find(g.vertex(0).canon) == 0);
  REQUIRE(g.find("not a canonical form") == -1);
  REQUIRE(verify_counts(g, 1).pass);
}

TEST_CASE("rank-2 exchange graph is a 5-cycle", "[explore]") {
  ExchangeGraph g = explore(tau(2));
  REQUIRE(g.vertex_count() == 5);
  REQUIRE(g.edges().size() == 5);
  for (int v = 0; v < 5; ++v)
    for (int nb : g.vertex(v).neighbor) REQUIRE(nb >= 0);
  CountsReport counts = verify_counts(g, 2);
  REQUIRE(counts.pass);
  REQUIRE(counts.detail == "seeds 5/5, variables 5/5, edges 5/5, regular");
}

TEST_CASE("exploration is deterministic", "[explore]") {
  ExchangeGraph a = explore(tau(2));
  ExchangeGraph b = explore(tau(2));
  REQUIRE(a.vertex_count() == b.vertex_count());
  for (int v = 0; v < static_cast<int>(a.vertex_count()); ++v) {
    REQUIRE(a.vertex(v).canon == b.vertex(v).canon);
    REQUIRE(a.vertex(v).neighbor == b.vertex(v).neighbor);
  }
  REQUIRE(a.edges().size() == b.edges().size());
  for (std::size_t e = 0; e < a.edges().size(); ++e) {
    REQUIRE(a.edges()[e].u == b.edges()[e].u);
    REQUIRE(a.edges()[e].v == b.edges()[e].v);
    REQUIRE(a.edges()[e].label_u == b.edges()[e].label_u);
    REQUIRE(a.edges()[e].label_v == b.edges()[e].label_v);
  }
}

TEST_CASE("rank-3 exchange graphs of both kinds", "[explore]") {
  ExchangeGraph g = explore(tau(3));
  CountsReport counts = verify_counts(g, 3);
  REQUIRE(counts.pass);
  REQUIRE(counts.seeds == 16);
  REQUIRE(counts.variables == 10);
  REQUIRE(counts.edges == 24);
  REQUIRE(counts.regular);

  ExchangeGraph lin = explore(tee(3));
  CountsReport lcounts = verify_counts(lin, 3, false);
  REQUIRE(lcounts.pass);
  REQUIRE(lcounts.seeds == 16);
  REQUIRE(lcounts.detail.find("not asserted") != std::string::npos);
  REQUIRE(label_by_sequences(lin).ok);
}

TEST_CASE("vertices are labeled by activation sequences", "[explore]") {
  ExchangeGraph g = explore(tau(2));
  SequenceLabeling lab = label_by_sequences(g);
  INFO(lab.conflict);
  REQUIRE(lab.ok);
  REQUIRE(lab.labels[0].str().empty());
  std::set<std::string> got;
  for (const auto& l : lab.labels) got.insert(l.str());
  REQUIRE(got == std::set<std::string>{"", "1", "2", "1,2", "2,1"});
}

TEST_CASE("the two rank-n algebras have isomorphic exchange graphs", "[explore]") {
  ExchangeGraph a = explore(tau(2));
  IsomorphismReport self = verify_isomorphism(a, a);
  REQUIRE(self.ok);
  for (std::size_t v = 0; v < self.map.size(); ++v)
    REQUIRE(self.map[v] == static_cast<int>(v));

  IsomorphismReport two = verify_isomorphism(a, explore(tee(2)));
  INFO(two.failure);
  REQUIRE(two.ok);
  REQUIRE(two.map.size() == 5);

  IsomorphismReport three = verify_isomorphism(explore(tau(3)), explore(tee(3)));
  INFO(three.failure);
  REQUIRE(three.ok);
  REQUIRE(three.map.size() == 16);
}

TEST_CASE("exploration truncates gracefully at the seed budget", "[explore]") {
  ExchangeGraph g = explore(tau(3), 7);
  REQUIRE(g.truncated());
  REQUIRE(g.vertex_count() < 16);
  REQUIRE_THROWS_AS(verify_counts(g, 3), Error);
  REQUIRE_FALSE(label_by_sequences(g).ok);
}

TEST_CASE("identity checks pass at small rank", "[verify]") {
  require_all(verify_closed_form_suite(1));
  require_all(verify_closed_form_suite(2));
  require_all(verify_closed_form_suite(3));
}

TEST_CASE("structural checks pass at small rank", "[verify]") {
  require_all(check_counts(2, SeedKind::binomial));
  require_all(check_counts(3, SeedKind::binomial));
  require_all(check_counts(3, SeedKind::linear));
  require_all(check_thm45(3, SeedKind::binomial));
  require_all(check_iso(3));
  require_all(check_involution(3, SeedKind::binomial));
  require_all(check_involution(3, SeedKind::linear));
  require_all(check_laurent(3, SeedKind::binomial));
  require_all(check_laurent(3, SeedKind::linear));
}

TEST_CASE("mutations in independent directions commute", "[verify]") {
  require_all(check_commutation(2));  // vacuous below rank 3, still reported
  require_all(check_commutation(3));
}

TEST_CASE("factor multiplicities and substitution identities extend to rank 4", "[verify]") {
  require_all(check_lem32(4));
  require_all(check_lem41(3));
}
