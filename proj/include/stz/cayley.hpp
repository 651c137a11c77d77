#pragma once

// Cayley tables: the concrete carrier for every finite group in the toolkit.
// Construction validates the group axioms — identity, inverses, Latin-square
// rows and columns, and associativity (exhaustively up to order 256, by
// seeded sampling above that).

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace stz {

class CayleyTable {
 public:
  CayleyTable(std::size_t order, std::vector<std::uint16_t> flat,
              std::size_t identity)
      : order_(order), table_(std::move(flat)), identity_(identity) {
    if (order_ == 0 || order_ > 10000)
      throw std::invalid_argument("CayleyTable: order must be in [1, 10000]");
    if (table_.size() != order_ * order_)
      throw std::invalid_argument("CayleyTable: table size mismatch");
    if (identity_ >= order_)
      throw std::invalid_argument("CayleyTable: identity out of range");
    validate();
    inverses_.resize(order_);
    for (std::size_t x = 0; x < order_; ++x) {
      bool found = false;
      for (std::size_t y = 0; y < order_; ++y)
        if (mul(x, y) == identity_ && mul(y, x) == identity_) {
          inverses_[x] = static_cast<std::uint16_t>(y);
          found = true;
          break;
        }
      if (!found)
        throw std::invalid_argument("CayleyTable: missing inverse");
    }
  }

  static CayleyTable from_rows(
      const std::vector<std::vector<std::uint16_t>>& rows,
      std::size_t identity) {
    std::vector<std::uint16_t> flat;
    for (const auto& r : rows) {
      if (r.size() != rows.size())
        throw std::invalid_argument("CayleyTable: ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return CayleyTable(rows.size(), std::move(flat), identity);
  }

  std::size_t order() const { return order_; }
  std::size_t identity() const { return identity_; }

  std::size_t mul(std::size_t x, std::size_t y) const {
    if (x >= order_ || y >= order_)
      throw std::out_of_range("CayleyTable: element out of range");
    return table_[x * order_ + y];
  }

  std::size_t inverse(std::size_t x) const {
    if (x >= order_) throw std::out_of_range("CayleyTable: element");
    return inverses_[x];
  }

  std::size_t element_order(std::size_t x) const {
    std::size_t acc = x, ord = 1;
    while (acc != identity_) {
      acc = mul(acc, x);
      ++ord;
      if (ord > order_)
        throw std::logic_error("CayleyTable: order computation diverged");
    }
    return ord;
  }

  bool is_latin() const {
    std::vector<char> seen(order_);
    for (std::size_t x = 0; x < order_; ++x) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t y = 0; y < order_; ++y) {
        std::size_t v = mul(x, y);
        if (seen[v]) return false;
        seen[v] = 1;
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t y = 0; y < order_; ++y) {
        std::size_t v = mul(y, x);
        if (seen[v]) return false;
        seen[v] = 1;
      }
    }
    return true;
  }

  bool is_abelian() const {
    for (std::size_t x = 0; x < order_; ++x)
      for (std::size_t y = x + 1; y < order_; ++y)
        if (mul(x, y) != mul(y, x)) return false;
    return true;
  }

  // element order -> number of elements of that order
  std::map<std::size_t, std::size_t> order_profile() const {
    std::map<std::size_t, std::size_t> out;
    for (std::size_t x = 0; x < order_; ++x) ++out[element_order(x)];
    return out;
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (table_[i] >= order_)
        throw std::invalid_argument("CayleyTable: entry out of range");
    for (std::size_t x = 0; x < order_; ++x)
      if (mul(identity_, x) != x || mul(x, identity_) != x)
        throw std::invalid_argument("CayleyTable: identity axiom fails");
    if (!is_latin())
      throw std::invalid_argument("CayleyTable: not a Latin square");
    if (order_ <= 256) {
      for (std::size_t x = 0; x < order_; ++x)
        for (std::size_t y = 0; y < order_; ++y)
          for (std::size_t z = 0; z < order_; ++z)
            if (mul(mul(x, y), z) != mul(x, mul(y, z)))
              throw std::invalid_argument("CayleyTable: not associative");
    } else {
      std::mt19937_64 rng(20260822);
      for (int t = 0; t < 200000; ++t) {
        std::size_t x = rng() % order_, y = rng() % order_, z = rng() % order_;
        if (mul(mul(x, y), z) != mul(x, mul(y, z)))
          throw std::invalid_argument("CayleyTable: not associative (sampled)");
      }
    }
  }

  std::size_t order_;
  std::vector<std::uint16_t> table_;
  std::size_t identity_;
  std::vector<std::uint16_t> inverses_;
};

}  // namespace stz
