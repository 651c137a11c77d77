#pragma once

// HLT-style Todd-Coxeter coset enumeration over the trivial subgroup: the
// completed coset table is the regular representation, so the group's Cayley
// table falls out of it. Coincidences are processed immediately through a
// union-find merge queue. A hard coset cap turns divergence (or a group
// beyond desk scale) into an INCONCLUSIVE result — never a wrong order.

#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "stz/cayley.hpp"
#include "stz/presentation.hpp"

namespace stz {

enum class EnumStatus { COMPLETE, INCONCLUSIVE };

struct EnumerationResult {
  EnumStatus status = EnumStatus::INCONCLUSIVE;
  std::optional<CayleyTable> table;
  std::size_t cosets_defined = 0;  // includes cosets later merged away
};

namespace detail {

class CosetEnumerator {
 public:
  CosetEnumerator(const Presentation& p, std::size_t cap)
      : ngens_(p.generators.size()), cols_(2 * ngens_), cap_(cap), pres_(p) {
    if (ngens_ == 0)
      throw std::invalid_argument("coset_enumerate: no generators");
    new_coset();  // coset 0 = the subgroup (here: the identity)
  }

  bool run() {
    for (std::size_t alpha = 0; alpha < table_.size(); ++alpha) {
      if (!alive(alpha)) continue;
      for (const auto& rel : pres_.relators) {
        if (!trace_relator(alpha, rel)) return false;  // cap exceeded
        if (!alive(alpha)) break;  // alpha was merged away mid-scan
      }
      if (!alive(alpha)) continue;
      // fill columns untouched by any relator (free directions)
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!alive(alpha)) break;
        if (entry(alpha, c) == kNone) {
          std::optional<std::size_t> beta = new_coset();
          if (!beta) return false;
          link(alpha, c, *beta);
        }
      }
    }
    return true;
  }

  std::size_t defined() const { return defined_; }

  CayleyTable build_cayley_table() const {
    // renumber live cosets; coset 0 survives every merge (min-rep policy)
    std::vector<std::size_t> live;
    std::vector<std::size_t> newidx(table_.size(), SIZE_MAX);
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (alive(c)) {
        newidx[c] = live.size();
        live.push_back(c);
      }
    const std::size_t order = live.size();

    // shortlex words for each element, BFS from the identity coset in
    // column order; the coset table acts on the right
    std::vector<std::vector<std::size_t>> word(order);
    std::vector<char> visited(order, 0);
    std::vector<std::size_t> bfs{0};
    visited[0] = 1;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
      std::size_t cur = bfs[head];
      for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t nxt = resolve(entry(live[cur], c));
        std::size_t nn = newidx[nxt];
        if (!visited[nn]) {
          visited[nn] = 1;
          word[nn] = word[cur];
          word[nn].push_back(c);
          bfs.push_back(nn);
        }
      }
    }

    std::vector<std::uint16_t> flat(order * order);
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = 0; j < order; ++j) {
        std::size_t cur = live[i];
        for (std::size_t c : word[j]) cur = resolve(entry(cur, c));
        flat[i * order + j] = static_cast<std::uint16_t>(newidx[cur]);
      }
    return CayleyTable(order, std::move(flat), 0);
  }

 private:
  static constexpr std::size_t kNone = SIZE_MAX;

  static std::size_t col_of(int letter) {
    return letter > 0 ? 2 * static_cast<std::size_t>(letter - 1)
                      : 2 * static_cast<std::size_t>(-letter - 1) + 1;
  }
  static std::size_t inv_col(std::size_t c) { return c ^ 1; }

  std::size_t entry(std::size_t coset, std::size_t c) const {
    return table_[coset][c];
  }

  bool alive(std::size_t c) const { return rep_[c] == c; }

  std::size_t resolve(std::size_t c) const {
    while (rep_[c] != c) c = rep_[c];
    return c;
  }
  std::size_t resolve_mut(std::size_t c) {
    std::size_t root = resolve(c);
    while (rep_[c] != root) {
      std::size_t nxt = rep_[c];
      rep_[c] = root;
      c = nxt;
    }
    return root;
  }

  std::optional<std::size_t> new_coset() {
    if (defined_ >= cap_) return std::nullopt;
    ++defined_;
    table_.emplace_back(cols_, kNone);
    rep_.push_back(table_.size() - 1);
    return table_.size() - 1;
  }

  // define alpha --c--> beta together with the reverse edge
  void link(std::size_t alpha, std::size_t c, std::size_t beta) {
    table_[alpha][c] = beta;
    std::size_t back = entry(beta, inv_col(c));
    if (back == kNone)
      table_[beta][inv_col(c)] = alpha;
    else if (resolve(back) != resolve(alpha))
      merge(back, alpha);
  }

  void merge(std::size_t x, std::size_t y) {
    pending_.emplace(x, y);
    while (!pending_.empty()) {
      auto [a, b] = pending_.front();
      pending_.pop();
      std::size_t u = resolve_mut(a), v = resolve_mut(b);
      if (u == v) continue;
      if (u > v) std::swap(u, v);  // keep the smaller index alive
      rep_[v] = u;
      for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t delta = table_[v][c];
        if (delta == kNone) continue;
        table_[v][c] = kNone;
        std::size_t df = resolve(delta);
        std::size_t existing = table_[u][c];
        if (existing == kNone) {
          table_[u][c] = df;
        } else if (resolve(existing) != df) {
          pending_.emplace(existing, df);
        }
        std::size_t back = table_[df][inv_col(c)];
        if (back == kNone)
          table_[df][inv_col(c)] = u;
        else if (resolve(back) != u)
          pending_.emplace(back, u);
      }
    }
  }

  // Scan one relator from alpha, defining cosets as needed. Returns false
  // only on cap exhaustion.
  bool trace_relator(std::size_t alpha, const std::vector<int>& rel) {
    std::size_t base = resolve(alpha);
    std::size_t cur = base;
    for (std::size_t idx = 0; idx < rel.size(); ++idx) {
      std::size_t c = col_of(rel[idx]);
      cur = resolve(cur);
      std::size_t nxt = entry(cur, c);
      if (nxt == kNone) {
        if (idx + 1 == rel.size()) {
          // closing edge: deduce cur --c--> base instead of defining
          link(cur, c, resolve(base));
          return true;
        }
        std::optional<std::size_t> beta = new_coset();
        if (!beta) return false;
        link(cur, c, *beta);
        cur = *beta;
      } else {
        cur = resolve(nxt);
      }
    }
    if (resolve(cur) != resolve(base)) merge(cur, base);
    return true;
  }

  std::size_t ngens_;
  std::size_t cols_;
  std::size_t cap_;
  const Presentation& pres_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> rep_;
  std::queue<std::pair<std::size_t, std::size_t>> pending_;
  std::size_t defined_ = 0;
};

}  // namespace detail

inline EnumerationResult coset_enumerate(const Presentation& p,
                                         std::size_t coset_cap = 100000) {
  if (coset_cap < 1)
    throw std::invalid_argument("coset_enumerate: cap must be >= 1");
  detail::CosetEnumerator e(p, coset_cap);
  EnumerationResult out;
  if (!e.run()) {
    out.status = EnumStatus::INCONCLUSIVE;
    out.cosets_defined = e.defined();
    return out;
  }
  out.status = EnumStatus::COMPLETE;
  out.cosets_defined = e.defined();
  out.table = e.build_cayley_table();
  return out;
}

}  // namespace stz
