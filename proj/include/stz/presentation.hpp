#pragma once

// Finite presentations at desk scale. Words in the generators and their
// inverses are stored as signed 1-based letters: +k is generator k-1,
// -k its inverse. Relators are kept freely reduced.
//
// Text format accepted by parse_presentation:
//   gens: h,k,a; rels: h^2*a^-1, k^2*a^-1, (h*k)^3
// Factors are generator names with optional integer exponents; parenthesized
// subwords may be raised to powers; '*' separates factors.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace stz {

struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;  // freely reduced, signed letters
};

inline std::vector<int> free_reduce(const std::vector<int>& w) {
  std::vector<int> out;
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

namespace detail {

inline std::vector<int> invert_word(const std::vector<int>& w) {
  std::vector<int> out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

class PresentationParser {
 public:
  PresentationParser(const std::string& text,
                     const std::vector<std::string>& gens)
      : s_(text), gens_(gens) {}

  std::vector<int> parse_word() {
    std::vector<int> w = parse_factor();
    skip_ws();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      std::vector<int> f = parse_factor();
      w.insert(w.end(), f.begin(), f.end());
      skip_ws();
    }
    if (pos_ != s_.size())
      throw std::invalid_argument("presentation: trailing junk in word '" + s_ +
                                  "'");
    return free_reduce(w);
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  std::vector<int> parse_factor() {
    skip_ws();
    std::vector<int> base;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      base = parse_subword();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')')
        throw std::invalid_argument("presentation: missing ')'");
      ++pos_;
    } else {
      base.push_back(parse_generator());
    }
    skip_ws();
    long exp = 1;
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      exp = parse_int();
    }
    std::vector<int> out;
    std::vector<int> unit = exp >= 0 ? base : invert_word(base);
    for (long t = 0; t < (exp >= 0 ? exp : -exp); ++t)
      out.insert(out.end(), unit.begin(), unit.end());
    return out;
  }

  std::vector<int> parse_subword() {
    std::vector<int> w = parse_factor();
    skip_ws();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      std::vector<int> f = parse_factor();
      w.insert(w.end(), f.begin(), f.end());
      skip_ws();
    }
    return w;
  }

  int parse_generator() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
            s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start)
      throw std::invalid_argument("presentation: expected a generator in '" +
                                  s_ + "'");
    std::string name = s_.substr(start, pos_ - start);
    for (std::size_t g = 0; g < gens_.size(); ++g)
      if (gens_[g] == name) return static_cast<int>(g) + 1;
    throw std::invalid_argument("presentation: unknown generator '" + name +
                                "'");
  }

  long parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ == start)
      throw std::invalid_argument("presentation: expected an exponent");
    return std::stol(s_.substr(start, pos_ - start));
  }

  std::string s_;
  std::size_t pos_ = 0;
  const std::vector<std::string>& gens_;
};

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  // trim
  for (auto& item : out) {
    std::size_t b = item.find_first_not_of(" \t\n");
    std::size_t e = item.find_last_not_of(" \t\n");
    item = (b == std::string::npos) ? "" : item.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace detail

inline Presentation parse_presentation(const std::string& text) {
  std::size_t gpos = text.find("gens:");
  std::size_t semi = text.find(';');
  std::size_t rpos = text.find("rels:");
  if (gpos == std::string::npos || rpos == std::string::npos ||
      semi == std::string::npos || !(gpos < semi && semi < rpos))
    throw std::invalid_argument(
        "presentation: expected 'gens: ...; rels: ...'");

  Presentation p;
  for (const std::string& g :
       detail::split_csv(text.substr(gpos + 5, semi - gpos - 5))) {
    if (g.empty())
      throw std::invalid_argument("presentation: empty generator name");
    p.generators.push_back(g);
  }

  std::string rel_text = text.substr(rpos + 5);
  // allow an empty relator section (free group)
  bool blank = true;
  for (char c : rel_text)
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
  if (!blank) {
    for (const std::string& r : detail::split_csv(rel_text)) {
      if (r.empty())
        throw std::invalid_argument("presentation: empty relator");
      detail::PresentationParser parser(r, p.generators);
      std::vector<int> w = parser.parse_word();
      if (!w.empty()) p.relators.push_back(std::move(w));
    }
  }
  return p;
}

inline std::string format_word(const std::vector<int>& w,
                               const std::vector<std::string>& gens) {
  std::string out;
  for (int letter : w) {
    if (!out.empty()) out += '*';
    int idx = letter > 0 ? letter : -letter;
    out += gens[static_cast<std::size_t>(idx - 1)];
    if (letter < 0) out += "^-1";
  }
  return out;
}

inline std::string format_presentation(const Presentation& p) {
  std::string out = "gens: ";
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    if (g) out += ",";
    out += p.generators[g];
  }
  out += "; rels: ";
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    if (r) out += ", ";
    out += format_word(p.relators[r], p.generators);
  }
  return out;
}

}  // namespace stz
