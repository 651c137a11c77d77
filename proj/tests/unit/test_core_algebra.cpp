#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "stz/abelian.hpp"
#include "stz/matrix.hpp"
#include "stz/smith.hpp"

using namespace stz;

namespace {

// Deterministic cross-platform integer in [lo, hi] (uniform_int_distribution
// is implementation-defined, so roll our own on top of mt19937_64).
long rand_in(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

// Independent oracle: k-th determinantal divisor = gcd of all k x k minors.
// The SNF diagonal must satisfy d1 * ... * dk = divisor_k.
mpz_class determinantal_divisor(const IntMatrix& a, std::size_t k) {
  std::vector<std::size_t> ri(k), ci(k);
  mpz_class g = 0;
  std::vector<std::size_t> rows(a.rows()), cols(a.cols());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  std::vector<bool> rsel(a.rows(), false), csel(a.cols(), false);
  std::fill(rsel.begin(), rsel.begin() + k, true);
  do {
    std::vector<std::size_t> rr;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (rsel[i]) rr.push_back(i);
    std::fill(csel.begin(), csel.end(), false);
    std::fill(csel.begin(), csel.begin() + k, true);
    do {
      std::vector<std::size_t> cc;
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (csel[j]) cc.push_back(j);
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = a.at(rr[i], cc[j]);
      mpz_class d = abs(det(sub));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    } while (std::prev_permutation(csel.begin(), csel.end()));
  } while (std::prev_permutation(rsel.begin(), rsel.end()));
  return g;
}

void check_snf_contract(const IntMatrix& a) {
  SmithResult s = smith_normal_form(a);
  REQUIRE(mat_mul(mat_mul(s.u, a), s.v) == s.d);
  REQUIRE(is_unimodular(s.u));
  REQUIRE(is_unimodular(s.v));
  const std::size_t steps = std::min(s.d.rows(), s.d.cols());
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j) REQUIRE(s.d.at(i, j) == 0);
  for (std::size_t t = 0; t < steps; ++t) REQUIRE(s.d.at(t, t) >= 0);
  for (std::size_t t = 0; t + 1 < steps; ++t) {
    const mpz_class &d1 = s.d.at(t, t), &d2 = s.d.at(t + 1, t + 1);
    if (d1 == 0) {
      REQUIRE(d2 == 0);  // zeros must trail
    } else {
      REQUIRE(d2 % d1 == 0);
    }
  }
  if (a.rows() == a.cols()) {
    mpz_class da = abs(det(a)), dd = 1;
    for (std::size_t t = 0; t < steps; ++t) dd *= s.d.at(t, t);
    REQUIRE(abs(dd) == da);
  }
}

}  // namespace

TEST_CASE("matrix product of elementary matrices", "[core]") {
  // e12(-1) * e21(1) * e12(-1) is the standard rotation witness.
  IntMatrix w =
      mat_mul(mat_mul(elementary(2, 1, 2, -1), elementary(2, 2, 1, 1)),
              elementary(2, 1, 2, -1));
  REQUIRE(w == from_rows({{0, -1}, {1, 0}}));
  // and e12(3) at n=3
  IntMatrix e = elementary(3, 1, 2, 3);
  REQUIRE(e == from_rows({{1, 3, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST_CASE("matrix multiplication basics", "[core]") {
  IntMatrix id = IntMatrix::identity(3);
  IntMatrix a = from_rows({{1, 2, 0}, {0, 1, 5}, {7, 0, 1}});
  REQUIRE(mat_mul(id, a) == a);
  REQUIRE(mat_mul(a, id) == a);
  REQUIRE_THROWS_AS(mat_mul(a, IntMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("elementary matrix rejects diagonal index", "[core]") {
  REQUIRE_THROWS_AS(elementary(3, 2, 2, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(elementary(3, 0, 1, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(elementary(3, 1, 4, 1), std::invalid_argument);
}

TEST_CASE("reduction mod m", "[core]") {
  IntMatrix d = from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
  ModMatrix m2 = reduce_mod(d, 2);
  REQUIRE(m2.is_identity());
  ModMatrix m4 = reduce_mod(d, 4);
  REQUIRE(m4.at(0, 0) == 3);
  REQUIRE(m4.at(1, 1) == 3);
  REQUIRE(m4.at(2, 2) == 1);
  REQUIRE(m4.at(0, 1) == 0);
  REQUIRE_THROWS_AS(reduce_mod(d, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(reduce_mod(IntMatrix(2, 3), 2), std::invalid_argument);
}

TEST_CASE("reduction is a ring homomorphism", "[core]") {
  std::mt19937_64 rng(20260822);
  for (int iter = 0; iter < 200; ++iter) {
    IntMatrix a(3, 3), b(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        a.at(i, j) = rand_in(rng, -50, 50);
        b.at(i, j) = rand_in(rng, -50, 50);
      }
    mpz_class mod = rand_in(rng, 2, 12);
    REQUIRE(mat_mul(reduce_mod(a, mod), reduce_mod(b, mod)) ==
            reduce_mod(mat_mul(a, b), mod));
  }
}

TEST_CASE("matrix parse and format round-trip", "[core]") {
  IntMatrix m = parse_matrix("2,4;6,8");
  REQUIRE(m == from_rows({{2, 4}, {6, 8}}));
  REQUIRE(format_matrix(m) == "2,4;6,8");
  REQUIRE(parse_matrix(" -1 , 0 ; 3 , 12 ") == from_rows({{-1, 0}, {3, 12}}));
  REQUIRE_THROWS_AS(parse_matrix("1,2;3"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_matrix("1,x;3,4"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_matrix(""), std::invalid_argument);
}

TEST_CASE("determinant agrees with cofactor expansion", "[core]") {
  REQUIRE(det(from_rows({{2, 4}, {6, 8}})) == -8);
  REQUIRE(det(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == -3);
  REQUIRE(det(IntMatrix::identity(5)) == 1);
  REQUIRE(det(from_rows({{0, 1}, {1, 0}})) == -1);
  REQUIRE(det(from_rows({{0, 0}, {0, 0}})) == 0);
}

TEST_CASE("smith normal form of the 2x2 example", "[core]") {
  IntMatrix a = parse_matrix("2,4;6,8");
  SmithResult s = smith_normal_form(a);
  REQUIRE(s.d.at(0, 0) == 2);
  REQUIRE(s.d.at(1, 1) == 4);
  check_snf_contract(a);
  // independent determinantal-divisor oracle
  REQUIRE(determinantal_divisor(a, 1) == 2);
  REQUIRE(determinantal_divisor(a, 2) == 8);  // 2 * 4
}

TEST_CASE("smith normal form edge cases", "[core]") {
  SmithResult sid = smith_normal_form(IntMatrix::identity(3));
  REQUIRE(sid.d.is_identity());
  IntMatrix z(2, 2);
  SmithResult sz = smith_normal_form(z);
  REQUIRE(sz.d == z);
  check_snf_contract(z);
  // rectangular
  IntMatrix rect = from_rows({{2, 0, 4}, {0, 6, 8}});
  check_snf_contract(rect);
  IntMatrix neg = from_rows({{-5}});
  SmithResult sn = smith_normal_form(neg);
  REQUIRE(sn.d.at(0, 0) == 5);
  check_snf_contract(neg);
}

TEST_CASE("smith normal form random contract", "[core]") {
  std::mt19937_64 rng(20260822);
  for (int iter = 0; iter < 300; ++iter) {
    IntMatrix a(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) a.at(i, j) = rand_in(rng, -9, 9);
    check_snf_contract(a);
  }
  // a few rectangular shapes too
  for (int iter = 0; iter < 50; ++iter) {
    IntMatrix a(2, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 4; ++j) a.at(i, j) = rand_in(rng, -9, 9);
    check_snf_contract(a);
  }
}

TEST_CASE("snf diagonal matches determinantal divisors", "[core]") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 25; ++iter) {
    IntMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a.at(i, j) = rand_in(rng, -6, 6);
    SmithResult s = smith_normal_form(a);
    mpz_class prod = 1;
    for (std::size_t k = 1; k <= 3; ++k) {
      prod *= s.d.at(k - 1, k - 1);
      REQUIRE(abs(prod) == determinantal_divisor(a, k));
    }
  }
}

TEST_CASE("abelian invariants canonicalize to a divisor chain", "[core]") {
  AbelianInvariants inv({mpz_class(2), mpz_class(4), mpz_class(3)});
  REQUIRE(inv.factors() == std::vector<mpz_class>{2, 12});
  REQUIRE(inv.order() == 24);
  AbelianInvariants v4({mpz_class(2), mpz_class(2)});
  REQUIRE(v4.factors() == std::vector<mpz_class>{2, 2});
  AbelianInvariants one(std::vector<mpz_class>{});
  REQUIRE(one.factors().empty());
  REQUIRE(one.order() == 1);
  AbelianInvariants z6({mpz_class(2), mpz_class(3)});
  REQUIRE(z6.factors() == std::vector<mpz_class>{6});
}

TEST_CASE("p_rank counts factors divisible by p", "[core]") {
  AbelianInvariants inv({mpz_class(2), mpz_class(4), mpz_class(3)});
  REQUIRE(p_rank(inv, 2) == 2);
  REQUIRE(p_rank(inv, 3) == 1);
  REQUIRE(p_rank(inv, 5) == 0);
  REQUIRE_THROWS_AS(p_rank(inv, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(p_rank(inv, 1), std::invalid_argument);
  AbelianInvariants withfree({mpz_class(2)}, 2);
  REQUIRE(p_rank(withfree, 2) == 3);
  REQUIRE(p_rank(withfree, 7) == 2);
}

TEST_CASE("p_rank matches brute-force solution count", "[core]") {
  // |{x : p*x = 0}| in prod Z/d_i equals prod gcd(p, d_i) = p^rank.
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<mpz_class> ds;
    int k = static_cast<int>(rand_in(rng, 1, 4));
    for (int i = 0; i < k; ++i) ds.emplace_back(rand_in(rng, 2, 18));
    AbelianInvariants inv(ds);
    for (long p : {2L, 3L, 5L, 7L}) {
      mpz_class count = 1;
      for (const auto& d : ds) {
        mpz_class g;
        mpz_class pz = p;
        mpz_gcd(g.get_mpz_t(), pz.get_mpz_t(), d.get_mpz_t());
        count *= g;
      }
      mpz_class expect;
      mpz_class pz = p;
      mpz_pow_ui(expect.get_mpz_t(), pz.get_mpz_t(),
                 static_cast<unsigned long>(p_rank(inv, p)));
      REQUIRE(count == expect);
    }
  }
}

TEST_CASE("cokernel invariants from presentation matrices", "[core]") {
  // Z^2 / <(2,0),(0,4)> = Z/2 x Z/4
  AbelianInvariants i1 = cokernel_invariants(parse_matrix("2,0;0,4"));
  REQUIRE(i1.factors() == std::vector<mpz_class>{2, 4});
  REQUIRE(i1.free_rank() == 0);
  // Z^2 / <(2,4),(6,8)> = Z/2 x Z/4 as well
  AbelianInvariants i2 = cokernel_invariants(parse_matrix("2,4;6,8"));
  REQUIRE(i2.factors() == std::vector<mpz_class>{2, 4});
  // a rank-deficient presentation leaves a free summand
  AbelianInvariants i3 = cokernel_invariants(parse_matrix("2,4;4,8"));
  REQUIRE(i3.free_rank() == 1);
  REQUIRE(i3.factors() == std::vector<mpz_class>{2});
  // unimodular presentation kills everything
  AbelianInvariants i4 = cokernel_invariants(parse_matrix("1,1;0,1"));
  REQUIRE(i4.factors().empty());
  REQUIRE(i4.free_rank() == 0);
}
