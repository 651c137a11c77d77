#pragma once

// Finite groups as Cayley tables, with the structure theory the rigidity
// criteria consume: centers, upper central series, derived series, quotients,
// and brute-force automorphism/outer-automorphism groups.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stz/abelian.hpp"
#include "stz/cayley.hpp"

namespace stz {

class FiniteGroup {
 public:
  explicit FiniteGroup(CayleyTable t) : table_(std::move(t)) {}

  std::size_t order() const { return table_.order(); }
  const CayleyTable& table() const { return table_; }

 private:
  CayleyTable table_;
};

// A subgroup is a sorted list of element indices of its ambient group.
struct Subgroup {
  std::vector<std::size_t> elements;

  bool contains(std::size_t x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }
};

namespace detail {

inline std::size_t conj(const CayleyTable& t, std::size_t g, std::size_t x) {
  return t.mul(t.mul(g, x), t.inverse(g));
}

inline std::size_t comm(const CayleyTable& t, std::size_t x, std::size_t y) {
  return t.mul(t.mul(x, y), t.mul(t.inverse(x), t.inverse(y)));
}

// Greedy minimal generating sequence plus BFS words for every element.
struct GeneratingData {
  std::vector<std::size_t> gens;
  std::vector<std::size_t> layer_sizes;           // |<gens[0..i]>|
  std::vector<std::vector<std::size_t>> words;    // element -> gen indices
};

inline std::vector<std::size_t> closure_set(
    const CayleyTable& t, const std::vector<std::size_t>& gens) {
  std::vector<char> in(t.order(), 0);
  std::vector<std::size_t> elems{t.identity()};
  in[t.identity()] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (std::size_t g : gens) {
      std::size_t v = t.mul(elems[head], g);
      if (!in[v]) {
        in[v] = 1;
        elems.push_back(v);
      }
    }
  return elems;
}

inline GeneratingData generating_data(const CayleyTable& t) {
  GeneratingData d;
  std::vector<char> in(t.order(), 0);
  in[t.identity()] = 1;
  std::size_t covered = 1;
  while (covered < t.order()) {
    std::size_t pick = 0;
    for (std::size_t e = 0; e < t.order(); ++e)
      if (!in[e]) {
        pick = e;
        break;
      }
    d.gens.push_back(pick);
    std::vector<std::size_t> cl = closure_set(t, d.gens);
    for (std::size_t e : cl) in[e] = 1;
    covered = cl.size();
    d.layer_sizes.push_back(covered);
  }
  d.words.assign(t.order(), {});
  std::vector<char> visited(t.order(), 0);
  std::vector<std::size_t> bfs{t.identity()};
  visited[t.identity()] = 1;
  for (std::size_t head = 0; head < bfs.size(); ++head)
    for (std::size_t g = 0; g < d.gens.size(); ++g) {
      std::size_t nxt = t.mul(bfs[head], d.gens[g]);
      if (!visited[nxt]) {
        visited[nxt] = 1;
        d.words[nxt] = d.words[bfs[head]];
        d.words[nxt].push_back(g);
        bfs.push_back(nxt);
      }
    }
  return d;
}

}  // namespace detail

inline Subgroup generated_subgroup(const FiniteGroup& g,
                                   const std::vector<std::size_t>& gens) {
  Subgroup s;
  s.elements = detail::closure_set(g.table(), gens);
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

inline Subgroup center(const FiniteGroup& g) {
  const CayleyTable& t = g.table();
  Subgroup z;
  for (std::size_t x = 0; x < t.order(); ++x) {
    bool central = true;
    for (std::size_t y = 0; y < t.order() && central; ++y)
      if (t.mul(x, y) != t.mul(y, x)) central = false;
    if (central) z.elements.push_back(x);
  }
  return z;
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& sub) {
  const CayleyTable& t = g.table();
  for (std::size_t s : sub.elements)
    for (std::size_t x = 0; x < t.order(); ++x)
      if (!sub.contains(detail::conj(t, x, s))) return false;
  return true;
}

// The subgroup as a group in its own right (indices re-numbered to 0..m-1
// following the sorted element list).
inline FiniteGroup subgroup_group(const FiniteGroup& g, const Subgroup& sub) {
  const CayleyTable& t = g.table();
  const std::size_t m = sub.elements.size();
  std::vector<std::size_t> local(t.order(), SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) local[sub.elements[i]] = i;
  if (local[t.identity()] == SIZE_MAX)
    throw std::invalid_argument("subgroup_group: identity missing");
  std::vector<std::uint16_t> flat(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t p = t.mul(sub.elements[i], sub.elements[j]);
      if (local[p] == SIZE_MAX)
        throw std::invalid_argument("subgroup_group: set is not closed");
      flat[i * m + j] = static_cast<std::uint16_t>(local[p]);
    }
  return FiniteGroup(CayleyTable(m, std::move(flat), local[t.identity()]));
}

// coset index for each element of g, under the normal subgroup n;
// coset ids are assigned in order of first appearance by element index
inline std::vector<std::size_t> quotient_map(const FiniteGroup& g,
                                             const Subgroup& n) {
  const CayleyTable& t = g.table();
  std::vector<std::size_t> coset_of(t.order(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t x = 0; x < t.order(); ++x) {
    if (coset_of[x] != SIZE_MAX) continue;
    for (std::size_t s : n.elements) coset_of[t.mul(x, s)] = next;
    ++next;
  }
  return coset_of;
}

inline FiniteGroup quotient(const FiniteGroup& g, const Subgroup& n) {
  if (n.elements.empty())
    throw std::invalid_argument("quotient: empty subgroup");
  if (g.order() % n.elements.size() != 0)
    throw std::invalid_argument("quotient: size does not divide group order");
  subgroup_group(g, n);  // validates closure and identity membership
  if (!is_normal(g, n))
    throw std::invalid_argument("quotient: subgroup is not normal");

  const CayleyTable& t = g.table();
  std::vector<std::size_t> coset_of = quotient_map(g, n);
  const std::size_t m = g.order() / n.elements.size();
  std::vector<std::size_t> rep(m, SIZE_MAX);
  for (std::size_t x = 0; x < t.order(); ++x)
    if (rep[coset_of[x]] == SIZE_MAX) rep[coset_of[x]] = x;
  std::vector<std::uint16_t> flat(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      flat[i * m + j] =
          static_cast<std::uint16_t>(coset_of[t.mul(rep[i], rep[j])]);
  return FiniteGroup(CayleyTable(m, std::move(flat), coset_of[t.identity()]));
}

struct DerivedSeriesResult {
  std::vector<Subgroup> chain;  // G >= G' >= G'' >= ... until stabilization
  bool solvable = false;
  bool perfect = false;
};

inline DerivedSeriesResult derived_series(const FiniteGroup& g) {
  const CayleyTable& t = g.table();
  DerivedSeriesResult out;
  Subgroup whole;
  for (std::size_t x = 0; x < t.order(); ++x) whole.elements.push_back(x);
  out.chain.push_back(whole);
  while (true) {
    const Subgroup& cur = out.chain.back();
    std::vector<std::size_t> comms;
    for (std::size_t x : cur.elements)
      for (std::size_t y : cur.elements)
        comms.push_back(detail::comm(t, x, y));
    Subgroup next;
    next.elements = detail::closure_set(t, comms);
    std::sort(next.elements.begin(), next.elements.end());
    if (out.chain.size() == 1)
      out.perfect = (next.elements.size() == cur.elements.size()) &&
                    g.order() > 1;
    if (next.elements.size() == cur.elements.size()) break;
    out.chain.push_back(std::move(next));
  }
  out.solvable = out.chain.back().elements.size() == 1;
  return out;
}

inline bool is_solvable(const FiniteGroup& g) {
  return derived_series(g).solvable;
}

// Abelian invariants by p-power torsion counting: for each prime p, the
// count c_k of solutions of x^(p^k) = 1 determines the multiset of cyclic
// p-power factors; AbelianInvariants canonicalizes the combined list.
inline AbelianInvariants abelian_invariants(const FiniteGroup& g) {
  const CayleyTable& t = g.table();
  if (!t.is_abelian())
    throw std::invalid_argument("abelian_invariants: group is not abelian");
  std::vector<std::size_t> orders(t.order());
  for (std::size_t x = 0; x < t.order(); ++x) orders[x] = t.element_order(x);

  std::vector<mpz_class> cyclic_factors;
  std::size_t n = t.order();
  for (std::size_t p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    bool prime = true;
    for (std::size_t d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    // m_k = #{cyclic factors with exponent >= k} = log_p(c_k / c_{k-1})
    std::vector<std::size_t> m;
    std::size_t prev = 1;  // c_0 = 1
    for (std::size_t k = 1;; ++k) {
      std::size_t pk = 1;
      for (std::size_t tt = 0; tt < k; ++tt) pk *= p;
      std::size_t c = 0;
      for (std::size_t x = 0; x < t.order(); ++x)
        if (pk % orders[x] == 0) ++c;
      if (c == prev) break;
      std::size_t ratio = c / prev;
      std::size_t logp = 0;
      while (ratio > 1) {
        ratio /= p;
        ++logp;
      }
      m.push_back(logp);
      prev = c;
    }
    for (std::size_t k = 1; k <= m.size(); ++k) {
      std::size_t count =
          m[k - 1] - (k < m.size() ? m[k] : 0);
      mpz_class pk = 1;
      for (std::size_t tt = 0; tt < k; ++tt) pk *= static_cast<long>(p);
      for (std::size_t c = 0; c < count; ++c) cyclic_factors.push_back(pk);
    }
  }
  return AbelianInvariants(cyclic_factors);
}

struct UcsLevel {
  Subgroup subgroup;                    // Z_i as a subgroup of g
  AbelianInvariants quotient_invariants;  // invariants of Z_i / Z_{i-1}
};

// Upper central series 1 < Z_1 < Z_2 < ... until stabilization. The list
// holds Z_1, Z_2, ...; empty when the center is trivial.
inline std::vector<UcsLevel> upper_central_series(const FiniteGroup& g) {
  const CayleyTable& t = g.table();
  std::vector<UcsLevel> out;
  Subgroup prev;
  prev.elements.push_back(t.identity());
  while (true) {
    // Z_next = { x : [x, y] in prev for all y }
    Subgroup next;
    for (std::size_t x = 0; x < t.order(); ++x) {
      bool ok = true;
      for (std::size_t y = 0; y < t.order() && ok; ++y)
        if (!prev.contains(detail::comm(t, x, y))) ok = false;
      if (ok) next.elements.push_back(x);
    }
    if (next.elements.size() == prev.elements.size()) break;
    // invariants of next/prev inside the subgroup group of next
    FiniteGroup zi = subgroup_group(g, next);
    Subgroup prev_local;
    for (std::size_t e : prev.elements) {
      auto it = std::lower_bound(next.elements.begin(), next.elements.end(), e);
      prev_local.elements.push_back(
          static_cast<std::size_t>(it - next.elements.begin()));
    }
    FiniteGroup q = quotient(zi, prev_local);
    UcsLevel level{next, abelian_invariants(q)};
    out.push_back(std::move(level));
    prev = out.back().subgroup;
  }
  return out;
}

inline bool is_nilpotent(const FiniteGroup& g) {
  if (g.order() == 1) return true;
  auto ucs = upper_central_series(g);
  return !ucs.empty() && ucs.back().subgroup.elements.size() == g.order();
}

enum class AutStatus { COMPLETE, BUDGET_EXCEEDED };

struct AutResult {
  AutStatus status = AutStatus::BUDGET_EXCEEDED;
  std::optional<FiniteGroup> aut;  // automorphisms as a group
  Subgroup inner;                  // Inn(G) as a subgroup of aut
  std::vector<std::vector<std::uint16_t>> perms;  // aut element -> permutation
};

namespace detail {

struct AutSearch {
  const CayleyTable& t;
  const GeneratingData& gd;
  std::size_t budget;
  std::size_t node_cap;
  std::size_t nodes = 0;
  bool exceeded = false;
  std::vector<std::vector<std::uint16_t>> found;

  void search(std::vector<std::size_t>& images, std::size_t depth) {
    if (exceeded) return;
    if (depth == gd.gens.size()) {
      std::vector<std::uint16_t> phi(t.order());
      std::vector<char> hit(t.order(), 0);
      for (std::size_t x = 0; x < t.order(); ++x) {
        std::size_t v = t.identity();
        for (std::size_t gi : gd.words[x]) v = t.mul(v, images[gi]);
        if (hit[v]) return;
        hit[v] = 1;
        phi[x] = static_cast<std::uint16_t>(v);
      }
      for (std::size_t x = 0; x < t.order(); ++x)
        for (std::size_t y = 0; y < t.order(); ++y)
          if (t.mul(phi[x], phi[y]) != phi[t.mul(x, y)]) return;
      found.push_back(std::move(phi));
      if (found.size() > budget) exceeded = true;
      return;
    }
    std::size_t want = t.element_order(gd.gens[depth]);
    for (std::size_t cand = 0; cand < t.order(); ++cand) {
      if (exceeded) return;
      if (++nodes > node_cap) {
        exceeded = true;
        return;
      }
      if (t.element_order(cand) != want) continue;
      images.push_back(cand);
      if (closure_set(t, images).size() == gd.layer_sizes[depth])
        search(images, depth + 1);
      images.pop_back();
    }
  }
};

}  // namespace detail

inline AutResult automorphism_group(const FiniteGroup& g,
                                    std::size_t budget = 5000) {
  const CayleyTable& t = g.table();
  if (t.order() > 256)
    throw std::invalid_argument("automorphism_group: order cap is 256");
  AutResult out;

  if (g.order() == 1) {
    out.status = AutStatus::COMPLETE;
    out.perms = {{0}};
    out.aut = FiniteGroup(CayleyTable(1, {0}, 0));
    out.inner.elements = {0};
    return out;
  }

  detail::GeneratingData gd = detail::generating_data(t);
  detail::AutSearch s{t, gd, budget, budget * 400 + 1000000, 0, false, {}};
  std::vector<std::size_t> images;
  s.search(images, 0);
  if (s.exceeded) {
    out.status = AutStatus::BUDGET_EXCEEDED;
    return out;
  }

  std::map<std::vector<std::uint16_t>, std::size_t> index_of;
  for (std::size_t i = 0; i < s.found.size(); ++i) index_of[s.found[i]] = i;

  const std::size_t m = s.found.size();
  std::vector<std::uint16_t> flat(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::uint16_t> comp(t.order());
      for (std::size_t x = 0; x < t.order(); ++x)
        comp[x] = s.found[i][s.found[j][x]];  // (phi_i . phi_j)(x)
      auto it = index_of.find(comp);
      if (it == index_of.end())
        throw std::logic_error("automorphism_group: set not closed");
      flat[i * m + j] = static_cast<std::uint16_t>(it->second);
    }
  std::vector<std::uint16_t> id_perm(t.order());
  for (std::size_t x = 0; x < t.order(); ++x)
    id_perm[x] = static_cast<std::uint16_t>(x);
  out.aut = FiniteGroup(CayleyTable(m, std::move(flat), index_of[id_perm]));
  out.perms = s.found;

  for (std::size_t gx = 0; gx < t.order(); ++gx) {
    std::vector<std::uint16_t> cperm(t.order());
    for (std::size_t x = 0; x < t.order(); ++x)
      cperm[x] = static_cast<std::uint16_t>(detail::conj(t, gx, x));
    out.inner.elements.push_back(index_of.at(cperm));
  }
  std::sort(out.inner.elements.begin(), out.inner.elements.end());
  out.inner.elements.erase(
      std::unique(out.inner.elements.begin(), out.inner.elements.end()),
      out.inner.elements.end());
  out.status = AutStatus::COMPLETE;
  return out;
}

struct OutResult {
  AutStatus status = AutStatus::BUDGET_EXCEEDED;
  std::optional<FiniteGroup> out;
  bool solvable = false;
  bool abelian = false;
};

inline OutResult out_group(const FiniteGroup& g, std::size_t budget = 5000) {
  OutResult res;
  AutResult aut = automorphism_group(g, budget);
  res.status = aut.status;
  if (aut.status != AutStatus::COMPLETE) return res;
  res.out = quotient(*aut.aut, aut.inner);
  res.solvable = is_solvable(*res.out);
  res.abelian = res.out->table().is_abelian();
  return res;
}

}  // namespace stz
