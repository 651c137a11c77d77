#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stz {

// Dense matrix over Z with exact (arbitrary precision) entries.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& at(std::size_t i, std::size_t j) {
    check_index(i, j);
    return data_[i * cols_ + j];
  }
  const mpz_class& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return data_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw std::out_of_range("matrix index out of range");
  }

  std::size_t rows_, cols_;
  std::vector<mpz_class> data_;
};

// Square matrix over Z/m, m >= 2.  Entries are stored as canonical residues
// in [0, m); the modulus may itself be a bignum.
class ModMatrix {
public:
  ModMatrix() : n_(0), modulus_(0) {}
  ModMatrix(std::size_t n, mpz_class modulus)
      : n_(n), modulus_(std::move(modulus)), data_(n * n) {
    if (modulus_ < 2) throw std::invalid_argument("modulus must be >= 2");
  }

  std::size_t size() const { return n_; }
  const mpz_class& modulus() const { return modulus_; }

  mpz_class& at(std::size_t i, std::size_t j) { return data_[index(i, j)]; }
  const mpz_class& at(std::size_t i, std::size_t j) const {
    return data_[index(i, j)];
  }

  bool operator==(const ModMatrix& o) const {
    return n_ == o.n_ && modulus_ == o.modulus_ && data_ == o.data_;
  }
  bool operator!=(const ModMatrix& o) const { return !(*this == o); }

  bool is_identity() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("matrix index out of range");
    return i * n_ + j;
  }

  std::size_t n_;
  mpz_class modulus_;
  std::vector<mpz_class> data_;
};

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  mpz_class acc, t;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        t = a.at(i, k) * b.at(k, j);
        acc += t;
      }
      c.at(i, j) = acc;
    }
  return c;
}

inline ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b) {
  if (a.size() != b.size() || a.modulus() != b.modulus())
    throw std::invalid_argument("mat_mul: dimension or modulus mismatch");
  ModMatrix c(a.size(), a.modulus());
  mpz_class acc;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      acc = 0;
      for (std::size_t k = 0; k < a.size(); ++k) acc += a.at(i, k) * b.at(k, j);
      mpz_mod(c.at(i, j).get_mpz_t(), acc.get_mpz_t(), a.modulus().get_mpz_t());
    }
  return c;
}

// Elementary matrix e_ij(r) = I + r*E_ij, i != j (1-based indices).
inline IntMatrix elementary(std::size_t n, std::size_t i, std::size_t j,
                            const mpz_class& r) {
  if (i < 1 || j < 1 || i > n || j > n)
    throw std::invalid_argument("elementary: index out of range");
  if (i == j) throw std::invalid_argument("elementary: i == j");
  IntMatrix m = IntMatrix::identity(n);
  m.at(i - 1, j - 1) = r;
  return m;
}

inline ModMatrix reduce_mod(const IntMatrix& a, const mpz_class& modulus) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("reduce_mod: matrix must be square");
  ModMatrix m(a.rows(), modulus);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j)
      mpz_mod(m.at(i, j).get_mpz_t(), a.at(i, j).get_mpz_t(),
              modulus.get_mpz_t());
  return m;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline mpz_class det(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det: nonsquare matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  mpz_class d = det(a);
  return d == 1 || d == -1;
}

// Text form: rows separated by ';', entries by ','.  "2,4;6,8" is
// [[2,4],[6,8]].  Whitespace around tokens is ignored.
inline IntMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<mpz_class>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<mpz_class> entries;
    std::stringstream rs(row);
    std::string tok;
    while (std::getline(rs, tok, ',')) {
      const auto b = tok.find_first_not_of(" \t\r\n");
      if (b == std::string::npos)
        throw std::invalid_argument("parse_matrix: empty entry");
      const auto e = tok.find_last_not_of(" \t\r\n");
      std::string num = tok.substr(b, e - b + 1);
      try {
        entries.emplace_back(num);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("parse_matrix: bad integer '" + num + "'");
      }
    }
    if (entries.empty())
      throw std::invalid_argument("parse_matrix: empty row");
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw std::invalid_argument("parse_matrix: empty input");
  for (const auto& r : rows)
    if (r.size() != rows[0].size())
      throw std::invalid_argument("parse_matrix: ragged rows");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j)
      m.at(i, j) = rows[i][j];
  return m;
}

inline std::string format_matrix(const IntMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ',';
      out += a.at(i, j).get_str();
    }
  }
  return out;
}

inline std::string format_matrix(const ModMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j) out += ',';
      out += a.at(i, j).get_str();
    }
  }
  return out;
}

}  // namespace stz
