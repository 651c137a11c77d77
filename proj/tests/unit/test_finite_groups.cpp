#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "stz/group.hpp"
#include "stz/iso.hpp"
#include "stz/smallgroups.hpp"

using namespace stz;

namespace {

// Independent nilpotency oracle: a finite group is nilpotent iff for every
// prime p dividing |G| the p-power-order elements are exactly a Sylow
// subgroup's worth — i.e. their count equals the p-part of |G|.
bool nilpotent_by_sylow_count(const FiniteGroup& g) {
  std::size_t n = g.order();
  for (std::size_t p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    bool prime = true;
    for (std::size_t d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    std::size_t ppart = 1;
    std::size_t m = n;
    while (m % p == 0) {
      ppart *= p;
      m /= p;
    }
    std::size_t count = 0;
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t o = g.table().element_order(x);
      while (o % p == 0) o /= p;
      if (o == 1) ++count;
    }
    if (count != ppart) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("catalog and build_group orders", "[finite]") {
  REQUIRE(catalog("A4").order() == 12);
  REQUIRE(catalog("Q8").order() == 8);
  REQUIRE(catalog("D6").order() == 6);
  REQUIRE(catalog("D8").order() == 8);
  REQUIRE(catalog("D12").order() == 12);
  REQUIRE(catalog("S4").order() == 24);
  REQUIRE(catalog("A5").order() == 60);
  REQUIRE(catalog("Z12").order() == 12);
  REQUIRE(catalog("V4").order() == 4);
  REQUIRE(catalog("E16").order() == 16);
  REQUIRE_THROWS_AS(catalog("Z17"), std::invalid_argument);

  REQUIRE(build_group(parse_group_spec("named:A4")).order() == 12);
  REQUIRE(build_group(parse_group_spec(
                          "product:[named:A4,abelian:[2],abelian:[2]]"))
              .order() == 48);
  REQUIRE(build_group(parse_group_spec("abelian:[2,4]")).order() == 8);
  REQUIRE(build_group(parse_group_spec("perm:[(1 2 3),(1 2)]")).order() == 6);
  REQUIRE(build_group(parse_group_spec("table:1,2;2,1")).order() == 2);

  FiniteGroup tw = build_group(parse_group_spec(
      "semidirect:{normal:abelian:[2,2],acting:named:Z4,action:[(2 3)]}"));
  REQUIRE(tw.order() == 16);
  REQUIRE(!tw.table().is_abelian());

  // a trivial action makes the semidirect product the direct product
  FiniteGroup direct = build_group(
      parse_group_spec("semidirect:{normal:abelian:[3],acting:named:Z2,"
                       "action:[()]}"));
  REQUIRE(direct.table().is_abelian());
  REQUIRE(is_isomorphic(direct.table(), catalog("Z6").table()));

  // an action that is not an automorphism is rejected
  REQUIRE_THROWS_AS(
      build_group(parse_group_spec(
          "semidirect:{normal:abelian:[2,2],acting:named:Z2,action:[(1 2)]}")),
      std::invalid_argument);
  // an action inconsistent with the acting group's relations is rejected:
  // Z2 cannot act through an order-3 automorphism
  REQUIRE_THROWS_AS(
      build_group(parse_group_spec(
          "semidirect:{normal:abelian:[2,2],acting:named:Z2,"
          "action:[(2 3 4)]}")),
      std::invalid_argument);
}

TEST_CASE("group spec round-trips through text", "[finite]") {
  for (const char* text :
       {"named:Q8", "abelian:[2,4]", "product:[named:D6,abelian:[3]]",
        "semidirect:{normal:abelian:[2,2],acting:named:Z4,action:[(2 3)]}",
        "perm:[(1 2 3 4),(1 2)]"}) {
    GroupSpec s = parse_group_spec(text);
    GroupSpec t = parse_group_spec(format_group_spec(s));
    REQUIRE(is_isomorphic(build_group(s).table(), build_group(t).table()));
  }
  REQUIRE_THROWS_AS(parse_group_spec("wat:Q8"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_group_spec("abelian:[0]"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_group_spec("perm:[(1 1)]"), std::invalid_argument);
}

TEST_CASE("dihedral groups have the expected shape", "[finite]") {
  FiniteGroup d6 = catalog("D6");
  REQUIRE(is_isomorphic(d6.table(),
                        build_group(parse_group_spec("perm:[(1 2 3),(1 2)]"))
                            .table()));  // D6 = S3
  std::map<std::size_t, std::size_t> d8_profile =
      catalog("D8").table().order_profile();
  REQUIRE(d8_profile ==
          std::map<std::size_t, std::size_t>{{1, 1}, {2, 5}, {4, 2}});
}

TEST_CASE("centers", "[finite]") {
  REQUIRE(center(catalog("Q8")).elements.size() == 2);
  REQUIRE(center(catalog("A4")).elements.size() == 1);
  REQUIRE(center(catalog("D8")).elements.size() == 2);
  REQUIRE(center(catalog("S4")).elements.size() == 1);
  FiniteGroup ab = build_group(parse_group_spec("abelian:[2,6]"));
  REQUIRE(center(ab).elements.size() == ab.order());
}

TEST_CASE("upper central series", "[finite]") {
  // Q8: 1 < Z/2 < Q8, quotient invariants (2) then (2,2)
  auto ucs = upper_central_series(catalog("Q8"));
  REQUIRE(ucs.size() == 2);
  REQUIRE(ucs[0].subgroup.elements.size() == 2);
  REQUIRE(ucs[1].subgroup.elements.size() == 8);
  REQUIRE(ucs[0].quotient_invariants.factors() ==
          std::vector<mpz_class>{2});
  REQUIRE(ucs[1].quotient_invariants.factors() ==
          std::vector<mpz_class>{2, 2});

  // abelian: length 1
  FiniteGroup ab = build_group(parse_group_spec("abelian:[2,4]"));
  auto ucs_ab = upper_central_series(ab);
  REQUIRE(ucs_ab.size() == 1);
  REQUIRE(ucs_ab[0].subgroup.elements.size() == 8);
  REQUIRE(ucs_ab[0].quotient_invariants.factors() ==
          std::vector<mpz_class>{2, 4});

  // S4: trivial center, series stabilizes immediately
  REQUIRE(upper_central_series(catalog("S4")).empty());

  // nilpotency two ways across the catalog
  for (const char* name :
       {"Z12", "V4", "E16", "D6", "D8", "D12", "Q8", "A4", "S4", "A5"}) {
    FiniteGroup g = catalog(name);
    INFO("group " << name);
    REQUIRE(is_nilpotent(g) == nilpotent_by_sylow_count(g));
  }
  REQUIRE(is_nilpotent(catalog("Q8")));
  REQUIRE(is_nilpotent(catalog("D8")));
  REQUIRE(!is_nilpotent(catalog("D6")));
  REQUIRE(!is_nilpotent(catalog("D12")));
}

TEST_CASE("derived series, solvability, perfection", "[finite]") {
  auto s3 = derived_series(catalog("D6"));
  REQUIRE(s3.solvable);
  REQUIRE(!s3.perfect);
  std::vector<std::size_t> sizes;
  for (const auto& sub : s3.chain) sizes.push_back(sub.elements.size());
  REQUIRE(sizes == std::vector<std::size_t>{6, 3, 1});

  auto s4 = derived_series(catalog("S4"));
  REQUIRE(s4.solvable);
  sizes.clear();
  for (const auto& sub : s4.chain) sizes.push_back(sub.elements.size());
  REQUIRE(sizes == std::vector<std::size_t>{24, 12, 4, 1});

  auto a5 = derived_series(catalog("A5"));
  REQUIRE(a5.perfect);
  REQUIRE(!a5.solvable);

  auto ab = derived_series(build_group(parse_group_spec("abelian:[4]")));
  REQUIRE(ab.solvable);
  REQUIRE(ab.chain.size() == 2);
  REQUIRE(ab.chain[1].elements.size() == 1);
}

TEST_CASE("quotients", "[finite]") {
  FiniteGroup q8 = catalog("Q8");
  FiniteGroup v4 = catalog("V4");
  FiniteGroup q = quotient(q8, center(q8));
  REQUIRE(q.order() == 4);
  REQUIRE(is_isomorphic(q.table(), v4.table()));

  Subgroup trivial{{q8.table().identity()}};
  REQUIRE(is_isomorphic(quotient(q8, trivial).table(), q8.table()));
  Subgroup whole;
  for (std::size_t x = 0; x < q8.order(); ++x) whole.elements.push_back(x);
  REQUIRE(quotient(q8, whole).order() == 1);

  // a non-normal subgroup is rejected: an order-2 subgroup of S3
  FiniteGroup s3 = catalog("D6");
  for (std::size_t x = 0; x < s3.order(); ++x) {
    if (s3.table().element_order(x) == 2) {
      Subgroup h = generated_subgroup(s3, {x});
      REQUIRE_THROWS_AS(quotient(s3, h), std::invalid_argument);
      break;
    }
  }

  // natural map is a homomorphism, exhaustively, for |g| <= 100
  for (const char* name : {"Q8", "A4", "S4", "D12"}) {
    FiniteGroup g = catalog(name);
    auto ds = derived_series(g);
    const Subgroup& n = ds.chain[1];  // derived subgroup is normal
    FiniteGroup gq = quotient(g, n);
    std::vector<std::size_t> coset_of = quotient_map(g, n);
    for (std::size_t x = 0; x < g.order(); ++x)
      for (std::size_t y = 0; y < g.order(); ++y)
        REQUIRE(gq.table().mul(coset_of[x], coset_of[y]) ==
                coset_of[g.table().mul(x, y)]);
  }
}

TEST_CASE("abelian invariants of abelian groups", "[finite]") {
  REQUIRE(abelian_invariants(build_group(parse_group_spec("abelian:[2,4]")))
              .factors() == std::vector<mpz_class>{2, 4});
  REQUIRE(abelian_invariants(build_group(parse_group_spec("abelian:[2,3]")))
              .factors() == std::vector<mpz_class>{6});
  REQUIRE(abelian_invariants(catalog("V4")).factors() ==
          std::vector<mpz_class>{2, 2});
  REQUIRE(abelian_invariants(catalog("Z12")).factors() ==
          std::vector<mpz_class>{12});
  REQUIRE_THROWS_AS(abelian_invariants(catalog("D6")), std::invalid_argument);
}

TEST_CASE("automorphism groups by brute force", "[finite]") {
  AutResult v4 = automorphism_group(catalog("V4"));
  REQUIRE(v4.status == AutStatus::COMPLETE);
  REQUIRE(v4.aut->order() == 6);
  REQUIRE(v4.inner.elements.size() == 1);  // abelian: Inn trivial

  AutResult q8 = automorphism_group(catalog("Q8"));
  REQUIRE(q8.status == AutStatus::COMPLETE);
  REQUIRE(q8.aut->order() == 24);
  REQUIRE(q8.inner.elements.size() == 4);

  // |Aut(Z/n)| = phi(n) for n <= 16
  std::vector<std::size_t> phi{0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4, 12, 6,
                               8, 8};
  for (std::size_t n = 2; n <= 16; ++n) {
    AutResult r = automorphism_group(catalog("Z" + std::to_string(n)));
    REQUIRE(r.status == AutStatus::COMPLETE);
    INFO("n = " << n);
    REQUIRE(r.aut->order() == phi[n]);
  }

  // |Inn| = |G| / |Z(G)|; Inn normal in Aut
  for (const char* name : {"Q8", "D8", "A4", "S4", "D12"}) {
    FiniteGroup g = catalog(name);
    AutResult r = automorphism_group(g);
    REQUIRE(r.status == AutStatus::COMPLETE);
    INFO("group " << name);
    REQUIRE(r.inner.elements.size() ==
            g.order() / center(g).elements.size());
    REQUIRE(is_normal(*r.aut, r.inner));
  }
}

TEST_CASE("outer automorphism groups", "[finite]") {
  OutResult a4 = out_group(catalog("A4"));
  REQUIRE(a4.status == AutStatus::COMPLETE);
  REQUIRE(a4.out->order() == 2);

  OutResult s4 = out_group(catalog("S4"));
  REQUIRE(s4.out->order() == 1);

  OutResult v4 = out_group(catalog("V4"));
  REQUIRE(v4.out->order() == 6);
  REQUIRE(is_isomorphic(v4.out->table(), catalog("D6").table()));  // GL2(F2)
  REQUIRE(v4.solvable);

  OutResult q8 = out_group(catalog("Q8"));
  REQUIRE(q8.out->order() == 6);  // Aut(Q8)=S4, Inn=V4, Out=S3
  REQUIRE(q8.solvable);
  REQUIRE(!q8.abelian);
}

TEST_CASE("the largest catalog composite: A4 x V4", "[finite]") {
  FiniteGroup g = build_group(
      parse_group_spec("product:[named:A4,abelian:[2],abelian:[2]]"));
  REQUIRE(g.order() == 48);
  AutResult r = automorphism_group(g);
  REQUIRE(r.status == AutStatus::COMPLETE);
  REQUIRE(r.aut->order() == 144);
  OutResult o = out_group(g);
  REQUIRE(o.out->order() == 12);
  REQUIRE(o.solvable);
}

TEST_CASE("automorphism search budget is honored", "[finite]") {
  // (Z/2)^5 has |Aut| = |GL_5(F2)| = 9999360, far beyond any desk budget
  FiniteGroup g = build_group(parse_group_spec("abelian:[2,2,2,2,2]"));
  AutResult r = automorphism_group(g, 5000);
  REQUIRE(r.status == AutStatus::BUDGET_EXCEEDED);
  REQUIRE(!r.aut.has_value());
}
