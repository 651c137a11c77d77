#pragma once

// Brute-force isomorphism testing for Cayley tables of order <= 256:
// invariant quick-rejects (order profile, abelianness), then generator-image
// backtracking with closure-size pruning.

#include <stdexcept>
#include <vector>

#include "stz/cayley.hpp"

namespace stz {

namespace detail {

// Subgroup generated by `gens`, as a sorted element list.
inline std::vector<std::size_t> closure(const CayleyTable& t,
                                        const std::vector<std::size_t>& gens) {
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

struct IsoSearch {
  const CayleyTable& a;
  const CayleyTable& b;
  std::vector<std::size_t> gens;          // generating sequence of a
  std::vector<std::size_t> layer_sizes;   // |<gens[0..i]>| in a
  std::vector<std::vector<std::size_t>> words;  // a-elements as gen indices

  bool try_images(std::vector<std::size_t>& images, std::size_t depth) {
    if (depth == gens.size()) return check_full_map(images);
    std::size_t want_order = a.element_order(gens[depth]);
    for (std::size_t cand = 0; cand < b.order(); ++cand) {
      if (b.element_order(cand) != want_order) continue;
      images.push_back(cand);
      if (closure(b, images).size() == layer_sizes[depth] &&
          try_images(images, depth + 1))
        return true;
      images.pop_back();
    }
    return false;
  }

  bool check_full_map(const std::vector<std::size_t>& images) const {
    const std::size_t n = a.order();
    std::vector<std::size_t> phi(n);
    std::vector<char> hit(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t v = b.identity();
      for (std::size_t g : words[x]) v = b.mul(v, images[g]);
      phi[x] = v;
      if (hit[v]) return false;  // not injective
      hit[v] = 1;
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (b.mul(phi[x], phi[y]) != phi[a.mul(x, y)]) return false;
    return true;
  }
};

}  // namespace detail

inline bool is_isomorphic(const CayleyTable& a, const CayleyTable& b) {
  if (a.order() > 256 || b.order() > 256)
    throw std::invalid_argument("is_isomorphic: order cap is 256");
  if (a.order() != b.order()) return false;
  if (a.order() == 1) return true;
  if (a.order_profile() != b.order_profile()) return false;
  if (a.is_abelian() != b.is_abelian()) return false;

  detail::IsoSearch s{a, b, {}, {}, {}};

  // greedy generating sequence: first element outside the running closure
  std::vector<char> in(a.order(), 0);
  std::vector<std::size_t> closed{a.identity()};
  in[a.identity()] = 1;
  while (closed.size() < a.order()) {
    std::size_t pick = 0;
    for (std::size_t e = 0; e < a.order(); ++e)
      if (!in[e]) {
        pick = e;
        break;
      }
    s.gens.push_back(pick);
    closed = detail::closure(a, s.gens);
    for (std::size_t e : closed) in[e] = 1;
    s.layer_sizes.push_back(closed.size());
  }

  // express every element of a as a word in the generating sequence (BFS)
  s.words.assign(a.order(), {});
  std::vector<char> visited(a.order(), 0);
  std::vector<std::size_t> bfs{a.identity()};
  visited[a.identity()] = 1;
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    std::size_t cur = bfs[head];
    for (std::size_t g = 0; g < s.gens.size(); ++g) {
      std::size_t nxt = a.mul(cur, s.gens[g]);
      if (!visited[nxt]) {
        visited[nxt] = 1;
        s.words[nxt] = s.words[cur];
        s.words[nxt].push_back(g);
        bfs.push_back(nxt);
      }
    }
  }

  std::vector<std::size_t> images;
  return s.try_images(images, 0);
}

}  // namespace stz
