#include <catch2/catch_amalgamated.hpp>

#include "lpa/rational.hpp"

using namespace lpa;

namespace {
Poly P(const std::string& text) { return parse_poly(text); }
}  // namespace

TEST_CASE("rational functions normalize on construction", "[rational]") {
  SECTION("common factors reduce away") {
    RationalFn r(P("A1+X2") * P("A2+X2"), P("A1+X2"));
    REQUIRE(r == RationalFn(P("A2+X2")));
    REQUIRE(r.is_laurent());
  }
  SECTION("cluster monomials in the denominator fold into the numerator") {
    RationalFn r(P("A2*X2+A1*X1+A1*A2"), P("X1*X2"));
    REQUIRE(r.den() == P("1"));
    REQUIRE(r.num() == P("A2*X1^-1+A1*X2^-1+A1*A2*X1^-1*X2^-1"));
    REQUIRE(r.as_laurent() == r.num());
  }
  SECTION("denominator is sign normalized") {
    RationalFn r(P("A1"), P("-A2-X2"));
    REQUIRE(r.den() == P("X2+A2"));
    REQUIRE(r.num() == P("-A1"));
  }
  SECTION("zero denominator is rejected") {
    REQUIRE_THROWS_AS(RationalFn(P("A1"), Poly{}), Error);
  }
  SECTION("non-Laurent values refuse as_laurent") {
    RationalFn r(P("A1"), P("A2+X2"));
    REQUIRE_FALSE(r.is_laurent());
    REQUIRE_THROWS_AS(r.as_laurent(), Error);
  }
}

TEST_CASE("rational arithmetic", "[rational]") {
  RationalFn a(P("A1+X2"), P("X1"));
  RationalFn b(P("X1"), P("A1+X2"));
  SECTION("product of reciprocals") { REQUIRE(a * b == RationalFn(P("1"))); }
  SECTION("division") { REQUIRE(a / a == RationalFn(P("1"))); }
  SECTION("sum over a common denominator") {
    RationalFn s = a + b;
    RationalFn expect(P("A1+X2") * P("A1+X2") + P("X1^2"), P("X1") * P("A1+X2"));
    REQUIRE(s == expect);
  }
  SECTION("difference cancels") { REQUIRE((a - a) == RationalFn(Poly{})); }
  SECTION("negative powers swap num and den") {
    RationalFn c(P("A1"), P("A2+X2"));
    REQUIRE(c.pow(-1) == RationalFn(P("A2+X2"), P("A1")));
    REQUIRE(c.pow(0) == RationalFn(P("1")));
    REQUIRE(c.pow(2) == c * c);
  }
  SECTION("dividing by zero is rejected") {
    REQUIRE_THROWS_AS(a / RationalFn(Poly{}), Error);
  }
}

TEST_CASE("substitution of a rational value into a polynomial", "[rational]") {
  SECTION("hand-checked mutation-shaped substitution") {
    // A1 + X2*X3 with X2 <- (A1*X3 + A2*X4) / X5
    RationalFn got = substitute(P("A1+X2*X3"), cluster_ref(2),
                                RationalFn(P("A1*X3+A2*X4"), P("X5")));
    // = A1 + X3*(A1*X3 + A2*X4)/X5, and X5 is a unit monomial
    REQUIRE(got.is_laurent());
    REQUIRE(got == RationalFn(P("A1*X5+A1*X3^2+A2*X3*X4"), P("X5")));
  }
  SECTION("identity substitution") {
    Poly p = P("A1*X2^2-X2^-1+A2");
    REQUIRE(substitute(p, cluster_ref(2), RationalFn(P("X2"))) == RationalFn(p));
  }
  SECTION("annihilation") {
    REQUIRE(substitute(P("X2"), cluster_ref(2), RationalFn(Poly{})) == RationalFn(Poly{}));
  }
  SECTION("zero into a negative power is division by zero") {
    REQUIRE_THROWS_AS(substitute(P("X2^-1"), cluster_ref(2), RationalFn(Poly{})), Error);
  }
  SECTION("negative exponents substitute exactly") {
    // X2^-2 with X2 <- A1/X1 gives X1^2/A1^2
    RationalFn got = substitute(P("X2^-2"), cluster_ref(2), RationalFn(P("A1"), P("X1")));
    REQUIRE(got == RationalFn(P("X1^2"), P("A1^2")));
  }
  SECTION("polynomial-value overload") {
    REQUIRE(substitute(P("A1+X2*X3"), cluster_ref(2), P("X4+A2")) ==
            RationalFn(P("A1+X3*X4+A2*X3")));
  }
}
