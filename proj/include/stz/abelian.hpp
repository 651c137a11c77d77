#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "stz/smith.hpp"

namespace stz {

inline bool is_prime(const mpz_class& p) {
  if (p < 2) return false;
  // 2^64-scale inputs at most; GMP's test is deterministic well beyond that.
  return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

// Invariant-factor description of a finitely generated abelian group:
// Z/d1 x ... x Z/dk x Z^free_rank with d1 | d2 | ... | dk, each di >= 2.
class AbelianInvariants {
public:
  AbelianInvariants() : free_rank_(0) {}

  // Accepts any list of cyclic orders (not necessarily a divisor chain) and
  // canonicalizes, e.g. (2,4,3) -> (2,12).
  explicit AbelianInvariants(const std::vector<mpz_class>& cyclic_orders,
                             std::size_t free_rank = 0)
      : free_rank_(free_rank) {
    std::map<mpz_class, std::vector<unsigned>> exps;  // prime -> exponents
    std::size_t chain_len = 0;
    for (const auto& d : cyclic_orders) {
      if (d < 1) throw std::invalid_argument("cyclic order must be >= 1");
      if (d == 1) continue;
      mpz_class rem = d;
      for (mpz_class p = 2; p * p <= rem; ++p) {
        if (rem % p != 0) continue;
        unsigned e = 0;
        while (rem % p == 0) {
          rem /= p;
          ++e;
        }
        exps[p].push_back(e);
      }
      if (rem > 1) exps[rem].push_back(1);
    }
    for (auto& [p, es] : exps) {
      std::sort(es.begin(), es.end());
      chain_len = std::max(chain_len, es.size());
    }
    factors_.assign(chain_len, mpz_class(1));
    for (auto& [p, es] : exps)
      for (std::size_t i = 0; i < es.size(); ++i) {
        // right-align so the largest exponents land in the last factor
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), es[i]);
        factors_[chain_len - es.size() + i] *= pe;
      }
  }

  const std::vector<mpz_class>& factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }

  mpz_class order() const {  // 0 when infinite
    if (free_rank_ > 0) return 0;
    mpz_class o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
  }

  bool operator==(const AbelianInvariants& o) const {
    return factors_ == o.factors_ && free_rank_ == o.free_rank_;
  }

private:
  std::vector<mpz_class> factors_;
  std::size_t free_rank_;
};

// Invariants of the cokernel Z^rows / col-span(A), read off the SNF diagonal.
inline AbelianInvariants cokernel_invariants(const IntMatrix& a) {
  SmithResult s = smith_normal_form(a);
  std::vector<mpz_class> fac;
  std::size_t zeros = 0;
  const std::size_t steps = std::min(s.d.rows(), s.d.cols());
  for (std::size_t t = 0; t < steps; ++t) {
    const mpz_class& d = s.d.at(t, t);
    if (d == 0)
      ++zeros;
    else if (d > 1)
      fac.push_back(d);
  }
  zeros += s.d.rows() - steps;  // rows with no pivot position at all
  return AbelianInvariants(fac, zeros);
}

// dim_{F_p}(A tensor F_p): factors divisible by p, plus the free rank.
inline std::size_t p_rank(const AbelianInvariants& inv, const mpz_class& p) {
  if (!is_prime(p)) throw std::invalid_argument("p_rank: p must be prime");
  std::size_t rank = inv.free_rank();
  for (const auto& d : inv.factors())
    if (d % p == 0) ++rank;
  return rank;
}

}  // namespace stz
