#pragma once

// Exhaustive verification of the defining relations of the integral Steinberg
// group under the evaluation map into SL_n(Z), plus a small battery of
// image-level commutator identities for the named elements h_ij and a.
//
// Relations, with [x, y] = x y x^-1 y^-1:
//   (1) x_ij(r1) x_ij(r2) = x_ij(r1 + r2)
//   (2) [x_ij(r1), x_jk(r2)] = x_ik(r1 r2)          for i, j, k distinct
//   (3) [x_ij(r1), x_pq(r2)] = 1                    whenever j != p and i != q
// The side condition in (3) is exactly "no head-to-tail touching": the pairs
// (i,j) and (p,q) may share a head or a tail, but the column of one must not
// be the row of the other.

#include <string>
#include <vector>

#include "stz/matrix.hpp"
#include "stz/words.hpp"

namespace stz {

struct RelationReport {
  long long checked = 0;
  std::vector<std::string> violations;
};

namespace detail {

inline std::string root_str(int i, int j, long long r) {
  return "x(" + std::to_string(i) + "," + std::to_string(j) + "," +
         std::to_string(r) + ")";
}

}  // namespace detail

// Check relations (1)-(3) under evaluation, for all index patterns in
// {1..n} and all amounts in [lo, hi]. Returns the number of instances
// checked and a description of every violation found (expected: none).
inline RelationReport verify_steinberg_relations(int n, long long lo,
                                                 long long hi) {
  if (n < 3) throw std::invalid_argument("verify_steinberg_relations: n >= 3");
  if (lo > hi) throw std::invalid_argument("verify_steinberg_relations: lo > hi");
  RelationReport rep;

  // (1) additivity on a fixed root
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (long long r1 = lo; r1 <= hi; ++r1)
        for (long long r2 = lo; r2 <= hi; ++r2) {
          IntMatrix lhs = evaluate(
              concat(word_x(n, i, j, r1), word_x(n, i, j, r2)));
          IntMatrix rhs = evaluate(word_x(n, i, j, r1 + r2));
          ++rep.checked;
          if (!(lhs == rhs))
            rep.violations.push_back("(1) fails for " +
                                     detail::root_str(i, j, r1) + " * " +
                                     detail::root_str(i, j, r2));
        }
    }

  // (2) head-to-tail commutator
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (i == j || j == k || i == k) continue;
        for (long long r1 = lo; r1 <= hi; ++r1)
          for (long long r2 = lo; r2 <= hi; ++r2) {
            SteinbergWord comm = concat(
                concat(word_x(n, i, j, r1), word_x(n, j, k, r2)),
                concat(word_x(n, i, j, -r1), word_x(n, j, k, -r2)));
            IntMatrix lhs = evaluate(comm);
            IntMatrix rhs = evaluate(word_x(n, i, k, r1 * r2));
            ++rep.checked;
            if (!(lhs == rhs))
              rep.violations.push_back("(2) fails for [" +
                                       detail::root_str(i, j, r1) + ", " +
                                       detail::root_str(j, k, r2) + "]");
          }
      }

  // (3) commuting roots: j != p and i != q
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q) {
          if (p == q || j == p || i == q) continue;
          for (long long r1 = lo; r1 <= hi; ++r1)
            for (long long r2 = lo; r2 <= hi; ++r2) {
              SteinbergWord comm = concat(
                  concat(word_x(n, i, j, r1), word_x(n, p, q, r2)),
                  concat(word_x(n, i, j, -r1), word_x(n, p, q, -r2)));
              ++rep.checked;
              if (!evaluate(comm).is_identity())
                rep.violations.push_back("(3) fails for [" +
                                         detail::root_str(i, j, r1) + ", " +
                                         detail::root_str(p, q, r2) + "]");
            }
        }
    }

  return rep;
}

struct IdentityCheck {
  std::string name;
  bool holds = false;
  std::string note;
};

// Image-level identities for the named elements. These verify the SL_n(Z)
// shadow of the symbol calculus for the h_ij; the group-level statements
// upstairs refine them but already determine all the images below.
inline std::vector<IdentityCheck> image_commutator_checks(int n) {
  if (n < 3)
    throw std::invalid_argument("image_commutator_checks: n >= 3");
  std::vector<IdentityCheck> out;

  auto comm = [&](const SteinbergWord& x, const SteinbergWord& y) {
    return concat(concat(x, y), concat(inverse(x), inverse(y)));
  };

  {
    IdentityCheck c;
    c.name = "a has trivial image";
    c.holds = evaluate(word_a(n)).is_identity();
    c.note = "f(a) = I; a itself is the obstruction class upstairs";
    out.push_back(c);
  }
  {
    IdentityCheck c;
    c.name = "h12^2 and h13^2 both evaluate like a";
    c.holds = evaluate(word_h(n, 1, 2)).is_identity() == false &&
              evaluate(concat(word_h(n, 1, 2), word_h(n, 1, 2))).is_identity() &&
              evaluate(concat(word_h(n, 1, 3), word_h(n, 1, 3))).is_identity();
    c.note = "the square of every h_ij has trivial image";
    out.push_back(c);
  }
  {
    IdentityCheck c;
    c.name = "[h12,h13] has the image of a";
    SteinbergWord w = comm(word_h(n, 1, 2), word_h(n, 1, 3));
    c.holds = evaluate(w).is_identity();
    c.note = "shared-index pairs anticommute up to the central candidate";
    out.push_back(c);
  }
  if (n >= 4) {
    IdentityCheck c;
    c.name = "[h12,h34] has trivial image";
    SteinbergWord w = comm(word_h(n, 1, 2), word_h(n, 3, 4));
    c.holds = evaluate(w).is_identity();
    c.note = "disjoint-index pairs commute";
    out.push_back(c);
  }
  if (n >= 5) {
    IdentityCheck c;
    c.name = "conjugation by h15 fixes the image of h12*h34";
    SteinbergWord inner = concat(word_h(n, 1, 2), word_h(n, 3, 4));
    SteinbergWord w = concat(concat(word_h(n, 1, 5), inner),
                             inverse(word_h(n, 1, 5)));
    c.holds = evaluate(w) == evaluate(inner);
    c.note = "upstairs the conjugate is a * h12 * h34; the images agree";
    out.push_back(c);
  }
  return out;
}

}  // namespace stz
