#pragma once

#include <cstdlib>
#include <utility>

#include "stz/matrix.hpp"

namespace stz {

// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0,
// zero entries trailing.
struct SmithResult {
  IntMatrix u, d, v;
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row a -= q * row b
inline void row_sub(IntMatrix& m, std::size_t a, std::size_t b,
                    const mpz_class& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) -= q * m.at(b, j);
}
inline void col_sub(IntMatrix& m, std::size_t a, std::size_t b,
                    const mpz_class& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) -= q * m.at(i, b);
}
inline void negate_row(IntMatrix& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

}  // namespace detail

// Classic gcd-driven reduction.  The pivot is always the entry of minimal
// absolute value in the remaining block, which keeps coefficient growth tame.
inline SmithResult smith_normal_form(const IntMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  SmithResult res{IntMatrix::identity(r), a, IntMatrix::identity(c)};
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;

  const std::size_t steps = r < c ? r : c;
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Locate minimal nonzero |entry| in the block [t.., t..].
      bool found = false;
      std::size_t pi = t, pj = t;
      mpz_class best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          if (d.at(i, j) == 0) continue;
          mpz_class mag = abs(d.at(i, j));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (!found) {
        t = steps;  // remaining block is zero
        break;
      }
      if (pi != t) {
        detail::swap_rows(d, t, pi);
        detail::swap_rows(u, t, pi);
      }
      if (pj != t) {
        detail::swap_cols(d, t, pj);
        detail::swap_cols(v, t, pj);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d.at(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(),
                   d.at(t, t).get_mpz_t());
        detail::row_sub(d, i, t, q);
        detail::row_sub(u, i, t, q);
        if (d.at(i, t) != 0) clean = false;  // remainder became new candidate
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d.at(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(),
                   d.at(t, t).get_mpz_t());
        detail::col_sub(d, j, t, q);
        detail::col_sub(v, j, t, q);
        if (d.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility fixup: the pivot must divide every later entry.
      bool fixed = true;
      for (std::size_t i = t + 1; i < r && fixed; ++i)
        for (std::size_t j = t + 1; j < c && fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            // fold row i into row t and rerun the reduction at this pivot
            for (std::size_t jj = 0; jj < c; ++jj)
              d.at(t, jj) += d.at(i, jj);
            for (std::size_t jj = 0; jj < r; ++jj)
              u.at(t, jj) += u.at(i, jj);
            fixed = false;
          }
      if (fixed) break;
    }
    if (t == steps) break;
    if (d.at(t, t) < 0) {
      detail::negate_row(d, t);
      detail::negate_row(u, t);
    }
  }
  return res;
}

}  // namespace stz
