#pragma once

// Words in the generators x_ij(r) of the integral Steinberg group, together
// with the evaluation map x_ij(r) |-> e_ij(r) into SL_n(Z).
//
// Named elements follow the classical conventions:
//   w(i,j)  =  omega_ij(-1)  =  x_ij(-1) x_ji(1) x_ij(-1)
//   h(i,j)  =  omega_ij(-1)^2
//   a       =  h(1,2)^2
// Expansion is literal: macros unfold to their defining letter sequences and
// are NOT normalized, so adjacent same-root letters at the junctions survive.

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stz/matrix.hpp"

namespace stz {

struct Letter {
  int i = 0;  // 1-based row index
  int j = 0;  // 1-based column index, j != i
  long long amount = 0;

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.i == b.i && a.j == b.j && a.amount == b.amount;
  }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
};

class SteinbergWord {
 public:
  explicit SteinbergWord(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("SteinbergWord: need n >= 2");
  }

  int n() const { return n_; }
  const std::vector<Letter>& letters() const { return letters_; }

  void push_back(const Letter& l) {
    check_indices(l.i, l.j);
    letters_.push_back(l);
  }

 private:
  void check_indices(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_ || i == j)
      throw std::invalid_argument("SteinbergWord: bad root indices (" +
                                  std::to_string(i) + "," + std::to_string(j) +
                                  ") for n = " + std::to_string(n_));
  }

  int n_;
  std::vector<Letter> letters_;
};

inline SteinbergWord word_x(int n, int i, int j, long long amount) {
  SteinbergWord w(n);
  w.push_back(Letter{i, j, amount});
  return w;
}

// omega_ij(-1) = x_ij(-1) x_ji(1) x_ij(-1)
inline SteinbergWord word_omega(int n, int i, int j) {
  SteinbergWord w(n);
  w.push_back(Letter{i, j, -1});
  w.push_back(Letter{j, i, 1});
  w.push_back(Letter{i, j, -1});
  return w;
}

// h_ij = omega_ij(-1)^2
inline SteinbergWord word_h(int n, int i, int j) {
  SteinbergWord om = word_omega(n, i, j);
  SteinbergWord w = om;
  for (const Letter& l : om.letters()) w.push_back(l);
  return w;
}

// a = h_12^2 = omega_12(-1)^4
inline SteinbergWord word_a(int n) {
  SteinbergWord h = word_h(n, 1, 2);
  SteinbergWord w = h;
  for (const Letter& l : h.letters()) w.push_back(l);
  return w;
}

inline SteinbergWord concat(const SteinbergWord& w1, const SteinbergWord& w2) {
  if (w1.n() != w2.n())
    throw std::invalid_argument("concat: ambient sizes differ (" +
                                std::to_string(w1.n()) + " vs " +
                                std::to_string(w2.n()) + ")");
  SteinbergWord out = w1;
  for (const Letter& l : w2.letters()) out.push_back(l);
  return out;
}

// Merge adjacent letters on the same root, dropping zero amounts; cascading,
// so an inner cancellation can expose a new adjacent pair.
inline SteinbergWord normalize(const SteinbergWord& w) {
  SteinbergWord out(w.n());
  std::vector<Letter> stack;
  for (const Letter& l : w.letters()) {
    if (l.amount == 0) continue;
    if (!stack.empty() && stack.back().i == l.i && stack.back().j == l.j) {
      stack.back().amount += l.amount;
      if (stack.back().amount == 0) stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  for (const Letter& l : stack) out.push_back(l);
  return out;
}

inline SteinbergWord concat_and_normalize(const SteinbergWord& w1,
                                          const SteinbergWord& w2) {
  return normalize(concat(w1, w2));
}

inline SteinbergWord inverse(const SteinbergWord& w) {
  SteinbergWord out(w.n());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(Letter{it->i, it->j, -it->amount});
  return out;
}

// Evaluate left-to-right: the image of l1 l2 ... lk is f(l1) f(l2) ... f(lk).
// Right-multiplying by e_ij(r) adds r * (column i) to column j, so the whole
// product costs O(len * n) ring operations.
inline IntMatrix evaluate(const SteinbergWord& w) {
  IntMatrix m = IntMatrix::identity(w.n());
  for (const Letter& l : w.letters()) {
    const mpz_class amt(static_cast<long>(l.amount));
    const std::size_t ci = static_cast<std::size_t>(l.i - 1);
    const std::size_t cj = static_cast<std::size_t>(l.j - 1);
    for (std::size_t r = 0; r < m.rows(); ++r)
      m.at(r, cj) += amt * m.at(r, ci);
  }
  return m;
}

inline ModMatrix evaluate_mod(const SteinbergWord& w, const mpz_class& modulus) {
  const std::size_t n = static_cast<std::size_t>(w.n());
  ModMatrix m(n, modulus);
  for (std::size_t d = 0; d < n; ++d) m.at(d, d) = 1;
  for (const Letter& l : w.letters()) {
    const mpz_class amt(static_cast<long>(l.amount));
    const std::size_t ci = static_cast<std::size_t>(l.i - 1);
    const std::size_t cj = static_cast<std::size_t>(l.j - 1);
    for (std::size_t r = 0; r < n; ++r) {
      mpz_class v = m.at(r, cj) + amt * m.at(r, ci);
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
      m.at(r, cj) = v;
    }
  }
  return m;
}

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& pos) {
  while (pos < s.size() &&
         (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == '*'))
    ++pos;
}

inline long long parse_int(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
    ++pos;
  if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
    throw std::invalid_argument("parse_word: expected an integer at position " +
                                std::to_string(start));
  return std::stoll(s.substr(start, pos - start));
}

inline void expect(const std::string& s, std::size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c)
    throw std::invalid_argument(std::string("parse_word: expected '") + c +
                                "' at position " + std::to_string(pos));
  ++pos;
}

}  // namespace detail

// Grammar: a word is a sequence of terms separated by whitespace and/or '*'.
//   x(i,j,r)   generator
//   w(i,j)     omega_ij(-1)
//   h(i,j)     h_ij
//   a          the central candidate h_12^2
inline SteinbergWord parse_word(int n, const std::string& text) {
  SteinbergWord out(n);
  std::size_t pos = 0;
  detail::skip_ws(text, pos);
  while (pos < text.size()) {
    char head = text[pos];
    if (head == 'a') {
      ++pos;
      out = concat(out, word_a(n));
    } else if (head == 'x' || head == 'w' || head == 'h') {
      ++pos;
      detail::expect(text, pos, '(');
      long long i = detail::parse_int(text, pos);
      detail::expect(text, pos, ',');
      long long j = detail::parse_int(text, pos);
      long long r = 0;
      if (head == 'x') {
        detail::expect(text, pos, ',');
        r = detail::parse_int(text, pos);
      }
      detail::expect(text, pos, ')');
      if (i < 1 || i > n || j < 1 || j > n)
        throw std::invalid_argument("parse_word: index out of range for n = " +
                                    std::to_string(n));
      int ii = static_cast<int>(i), jj = static_cast<int>(j);
      if (head == 'x')
        out = concat(out, word_x(n, ii, jj, r));
      else if (head == 'w')
        out = concat(out, word_omega(n, ii, jj));
      else
        out = concat(out, word_h(n, ii, jj));
    } else {
      throw std::invalid_argument(std::string("parse_word: unknown term '") +
                                  head + "' at position " +
                                  std::to_string(pos));
    }
    detail::skip_ws(text, pos);
  }
  return out;
}

inline std::string format_word(const SteinbergWord& w) {
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += '*';
    out += "x(" + std::to_string(l.i) + "," + std::to_string(l.j) + "," +
           std::to_string(l.amount) + ")";
  }
  return out;
}

}  // namespace stz
