#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "stz/iso.hpp"
#include "stz/presentation.hpp"
#include "stz/todd_coxeter.hpp"

using namespace stz;

namespace {

CayleyTable must_enumerate(const std::string& text, std::size_t cap = 100000) {
  EnumerationResult r = coset_enumerate(parse_presentation(text), cap);
  REQUIRE(r.status == EnumStatus::COMPLETE);
  REQUIRE(r.table.has_value());
  return *r.table;
}

const char* kQuatHKA =
    "gens: h,k,a; rels: h^2*a^-1, k^2*a^-1, h^-1*k^-1*h*k*a^-1, a^2, "
    "a^-1*h^-1*a*h, a^-1*k^-1*a*k";
const char* kQuatXY = "gens: x,y; rels: x^4, x^2*y^-2, y^-1*x*y*x";
const char* kDih8 = "gens: r,s; rels: r^4, s^2, (r*s)^2";

}  // namespace

TEST_CASE("presentation parser", "[fp]") {
  Presentation p = parse_presentation(kQuatHKA);
  REQUIRE(p.generators == std::vector<std::string>{"h", "k", "a"});
  REQUIRE(p.relators.size() == 6);
  // h^2*a^-1 -> letters (h, h, a^-1) under 1-based signed encoding
  REQUIRE(p.relators[0] == std::vector<int>{1, 1, -3});

  // free reduction happens on parse
  Presentation q = parse_presentation("gens: g; rels: g*g^-1*g");
  REQUIRE(q.relators[0] == std::vector<int>{1});

  // parenthesized powers
  Presentation r = parse_presentation("gens: g,h; rels: (g*h)^3");
  REQUIRE(r.relators[0] == std::vector<int>{1, 2, 1, 2, 1, 2});

  // free group: empty relator list
  Presentation f = parse_presentation("gens: g; rels:");
  REQUIRE(f.relators.empty());

  REQUIRE_THROWS_AS(parse_presentation("gens: ; rels: g"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(parse_presentation("gens: g; rels: z^2"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(parse_presentation("rels: g^2"), std::invalid_argument);

  // round-trip through the text format
  REQUIRE(parse_presentation(format_presentation(p)).relators == p.relators);
}

TEST_CASE("coset enumeration on small presentations", "[fp]") {
  REQUIRE(must_enumerate("gens: g; rels: g^5").order() == 5);
  REQUIRE(must_enumerate("gens: g,h; rels: g^2, h^2, (g*h)^3").order() == 6);
  REQUIRE(must_enumerate("gens: g; rels: g").order() == 1);
  REQUIRE(must_enumerate(kQuatHKA).order() == 8);
  REQUIRE(must_enumerate(kQuatXY).order() == 8);
  REQUIRE(must_enumerate(kDih8).order() == 8);

  // total collapse through a coincidence chain: g = h, g^3 = h^4 = 1
  REQUIRE(must_enumerate("gens: g,h; rels: g^3, h^4, g*h^-1").order() == 1);
}

TEST_CASE("enumeration of an infinite group is inconclusive", "[fp]") {
  EnumerationResult r =
      coset_enumerate(parse_presentation("gens: g; rels:"), 1000);
  REQUIRE(r.status == EnumStatus::INCONCLUSIVE);
  REQUIRE(!r.table.has_value());

  EnumerationResult r2 =
      coset_enumerate(parse_presentation("gens: g,h; rels: g^2"), 500);
  REQUIRE(r2.status == EnumStatus::INCONCLUSIVE);
}

TEST_CASE("enumerated tables are Latin squares with sane structure", "[fp]") {
  for (const char* text : {kQuatHKA, kQuatXY, kDih8}) {
    CayleyTable t = must_enumerate(text);
    REQUIRE(t.is_latin());
    REQUIRE(t.identity() == 0);
    for (std::size_t x = 0; x < t.order(); ++x) {
      REQUIRE(t.mul(t.identity(), x) == x);
      REQUIRE(t.mul(x, t.inverse(x)) == t.identity());
    }
  }
}

TEST_CASE("element order profile distinguishes Q8 from D8", "[fp]") {
  CayleyTable q8 = must_enumerate(kQuatHKA);
  CayleyTable d8 = must_enumerate(kDih8);
  std::map<std::size_t, std::size_t> pq, pd;
  for (std::size_t x = 0; x < 8; ++x) {
    ++pq[q8.element_order(x)];
    ++pd[d8.element_order(x)];
  }
  // Q8: one involution, six elements of order 4
  REQUIRE(pq == std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}, {4, 6}});
  // D8: five involutions, two elements of order 4
  REQUIRE(pd == std::map<std::size_t, std::size_t>{{1, 1}, {2, 5}, {4, 2}});
}

TEST_CASE("enumeration is invariant under relator reordering", "[fp]") {
  Presentation p = parse_presentation(kQuatHKA);
  std::vector<std::vector<int>> rels = p.relators;
  std::sort(rels.begin(), rels.end());
  int tries = 0;
  do {
    Presentation q = p;
    q.relators = rels;
    EnumerationResult r = coset_enumerate(q, 100000);
    REQUIRE(r.status == EnumStatus::COMPLETE);
    REQUIRE(r.table->order() == 8);
  } while (std::next_permutation(rels.begin(), rels.end()) && ++tries < 8);
  REQUIRE(tries == 8);
}

TEST_CASE("isomorphism testing", "[fp]") {
  CayleyTable q8a = must_enumerate(kQuatHKA);
  CayleyTable q8b = must_enumerate(kQuatXY);
  CayleyTable d8 = must_enumerate(kDih8);
  CayleyTable c6 = must_enumerate("gens: g; rels: g^6");
  CayleyTable s3 = must_enumerate("gens: g,h; rels: g^2, h^2, (g*h)^3");
  CayleyTable c4 = must_enumerate("gens: g; rels: g^4");
  CayleyTable v4 = must_enumerate("gens: a,b; rels: a^2, b^2, a*b*a^-1*b^-1");

  REQUIRE(is_isomorphic(q8a, q8b));
  REQUIRE(!is_isomorphic(q8a, d8));
  REQUIRE(!is_isomorphic(c6, s3));
  REQUIRE(!is_isomorphic(c4, v4));
  REQUIRE(is_isomorphic(d8, d8));

  // equivalence relation on a fixed set
  std::vector<const CayleyTable*> set{&q8a, &q8b, &d8, &c6, &s3, &c4, &v4};
  for (std::size_t i = 0; i < set.size(); ++i) {
    REQUIRE(is_isomorphic(*set[i], *set[i]));
    for (std::size_t j = 0; j < set.size(); ++j) {
      REQUIRE(is_isomorphic(*set[i], *set[j]) ==
              is_isomorphic(*set[j], *set[i]));
      for (std::size_t k = 0; k < set.size(); ++k) {
        if (is_isomorphic(*set[i], *set[j]) && is_isomorphic(*set[j], *set[k]))
          REQUIRE(is_isomorphic(*set[i], *set[k]));
      }
    }
  }
}
