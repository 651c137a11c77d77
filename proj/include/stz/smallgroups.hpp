#pragma once

// The small-group catalog and the GroupSpec text format.
//
// Spec grammar (structured text):
//   named:D12
//   abelian:[2,4]
//   product:[specA,specB,...]
//   semidirect:{normal:SPEC,acting:SPEC,action:[(2 3),...]}
//   perm:[(1 2 3),(1 2)]
//   table:1,2;2,1
//
// A semidirect action supplies one permutation of the normal subgroup's
// elements (1-based indices, cycle notation) per canonical generator of the
// acting group; each must be an automorphism, and the induced assignment
// must respect the acting group's relations — both validated on build.

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "stz/group.hpp"
#include "stz/todd_coxeter.hpp"

namespace stz {

struct GroupSpec {
  enum class Kind { Named, Abelian, Product, Semidirect, Perm, Table };
  Kind kind = Kind::Named;
  std::string name;                                   // Named
  std::vector<long> abelian_orders;                   // Abelian
  std::vector<GroupSpec> children;                    // Product / Semidirect
  std::vector<std::vector<std::vector<int>>> action;  // Semidirect: cycles
  std::vector<std::vector<std::vector<int>>> perms;   // Perm: cycles
  std::vector<std::vector<long>> table_rows;          // Table, 1-based
};

// ---------------------------------------------------------------- catalog

namespace detail {

inline FiniteGroup cyclic_group(std::size_t n) {
  std::vector<std::uint16_t> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      flat[i * n + j] = static_cast<std::uint16_t>((i + j) % n);
  return FiniteGroup(CayleyTable(n, std::move(flat), 0));
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  const std::size_t n = na * nb;
  if (n > 10000)
    throw std::invalid_argument("build_group: order cap 10^4 exceeded");
  std::vector<std::uint16_t> flat(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
      flat[x * n + y] = static_cast<std::uint16_t>(
          a.table().mul(xa, ya) * nb + b.table().mul(xb, yb));
    }
  return FiniteGroup(CayleyTable(
      n, std::move(flat), a.table().identity() * nb + b.table().identity()));
}

// dihedral group of order m (m even): <r, s | r^(m/2), s^2, (rs)^2>
inline FiniteGroup dihedral_group(std::size_t m) {
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("dihedral_group: order must be even");
  const std::size_t t = m / 2;
  auto idx = [t](std::size_t flip, std::size_t rot) { return flip * t + rot; };
  std::vector<std::uint16_t> flat(m * m);
  for (std::size_t b1 = 0; b1 < 2; ++b1)
    for (std::size_t a1 = 0; a1 < t; ++a1)
      for (std::size_t b2 = 0; b2 < 2; ++b2)
        for (std::size_t a2 = 0; a2 < t; ++a2) {
          // r^a1 s^b1 * r^a2 s^b2 = r^(a1 + (-1)^b1 a2) s^(b1+b2)
          std::size_t rot = b1 ? (a1 + t - a2 % t) % t : (a1 + a2) % t;
          std::size_t flip = (b1 + b2) % 2;
          flat[idx(b1, a1) * m + idx(b2, a2)] =
              static_cast<std::uint16_t>(idx(flip, rot));
        }
  return FiniteGroup(CayleyTable(m, std::move(flat), 0));
}

inline FiniteGroup group_from_permutations(
    const std::vector<std::vector<int>>& gen_perms, std::size_t npoints) {
  // closure by BFS; elements are permutations of 0..npoints-1
  std::map<std::vector<int>, std::size_t> index_of;
  std::vector<std::vector<int>> elems;
  std::vector<int> id(npoints);
  for (std::size_t p = 0; p < npoints; ++p) id[p] = static_cast<int>(p);
  index_of[id] = 0;
  elems.push_back(id);
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& g : gen_perms) {
      std::vector<int> prod(npoints);
      for (std::size_t p = 0; p < npoints; ++p)
        prod[p] = elems[head][static_cast<std::size_t>(g[p])];
      if (index_of.emplace(prod, elems.size()).second) {
        elems.push_back(prod);
        if (elems.size() > 10000)
          throw std::invalid_argument("build_group: order cap 10^4 exceeded");
      }
    }
  const std::size_t n = elems.size();
  std::vector<std::uint16_t> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> prod(npoints);
      for (std::size_t p = 0; p < npoints; ++p)
        prod[p] = elems[i][static_cast<std::size_t>(elems[j][p])];
      flat[i * n + j] = static_cast<std::uint16_t>(index_of.at(prod));
    }
  return FiniteGroup(CayleyTable(n, std::move(flat), 0));
}

inline FiniteGroup abelian_group(const std::vector<long>& orders) {
  for (long d : orders)
    if (d <= 0)
      throw std::invalid_argument("abelian group: factors must be positive");
  AbelianInvariants inv{
      std::vector<mpz_class>(orders.begin(), orders.end())};
  FiniteGroup g = cyclic_group(1);
  for (const mpz_class& d : inv.factors())
    g = direct_product(g, cyclic_group(d.get_ui()));
  return g;
}

}  // namespace detail

inline FiniteGroup catalog(const std::string& name) {
  if (name == "trivial") return detail::cyclic_group(1);
  if (name.size() >= 2 && name[0] == 'Z') {
    std::size_t n = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        throw std::invalid_argument("catalog: unknown group '" + name + "'");
      n = n * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    if (n < 1 || n > 16)
      throw std::invalid_argument("catalog: cyclic groups go up to Z16");
    return detail::cyclic_group(n);
  }
  if (name == "V4") return detail::abelian_group({2, 2});
  if (name == "E8") return detail::abelian_group({2, 2, 2});
  if (name == "E16") return detail::abelian_group({2, 2, 2, 2});
  if (name == "D6") return detail::dihedral_group(6);
  if (name == "D8") return detail::dihedral_group(8);
  if (name == "D12") return detail::dihedral_group(12);
  if (name == "Q8") {
    EnumerationResult r = coset_enumerate(
        parse_presentation("gens: x,y; rels: x^4, x^2*y^-2, y^-1*x*y*x"));
    if (r.status != EnumStatus::COMPLETE || r.table->order() != 8)
      throw std::logic_error("catalog: Q8 enumeration failed");
    return FiniteGroup(*r.table);
  }
  if (name == "A4")
    return detail::group_from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}, 4);
  if (name == "S4")
    return detail::group_from_permutations({{1, 2, 3, 0}, {1, 0, 2, 3}}, 4);
  if (name == "A5")
    return detail::group_from_permutations({{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}},
                                           5);
  throw std::invalid_argument("catalog: unknown group '" + name + "'");
}

// ---------------------------------------------------------------- parsing

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\n");
  std::size_t e = s.find_last_not_of(" \t\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// split on commas at bracket depth zero
inline std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[' || c == '{' || c == '(') ++depth;
    if (c == ']' || c == '}' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline std::string strip_brackets(const std::string& s, char open,
                                  char close) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != open || t.back() != close)
    throw std::invalid_argument(std::string("group spec: expected ") + open +
                                "..." + close + " in '" + s + "'");
  return t.substr(1, t.size() - 2);
}

inline std::vector<std::vector<int>> parse_cycles(const std::string& item) {
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  std::string t = trim(item);
  while (pos < t.size()) {
    while (pos < t.size() &&
           std::isspace(static_cast<unsigned char>(t[pos])))
      ++pos;
    if (pos >= t.size()) break;
    if (t[pos] != '(')
      throw std::invalid_argument("group spec: expected '(' in cycles '" +
                                  item + "'");
    ++pos;
    std::vector<int> cyc;
    while (pos < t.size() && t[pos] != ')') {
      while (pos < t.size() &&
             std::isspace(static_cast<unsigned char>(t[pos])))
        ++pos;
      if (pos < t.size() && t[pos] == ')') break;
      int v = 0;
      bool any = false;
      while (pos < t.size() &&
             std::isdigit(static_cast<unsigned char>(t[pos]))) {
        v = v * 10 + (t[pos] - '0');
        ++pos;
        any = true;
      }
      if (!any)
        throw std::invalid_argument("group spec: bad cycle entry in '" + item +
                                    "'");
      for (int prev : cyc)
        if (prev == v)
          throw std::invalid_argument("group spec: repeated point in cycle");
      cyc.push_back(v);
    }
    if (pos >= t.size())
      throw std::invalid_argument("group spec: unterminated cycle");
    ++pos;  // ')'
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace detail

inline GroupSpec parse_group_spec(const std::string& text) {
  std::string t = detail::trim(text);
  std::size_t colon = t.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("group spec: expected 'kind:...' in '" + t +
                                "'");
  std::string kind = t.substr(0, colon);
  std::string rest = detail::trim(t.substr(colon + 1));
  GroupSpec s;
  if (kind == "named") {
    s.kind = GroupSpec::Kind::Named;
    s.name = rest;
    if (s.name.empty())
      throw std::invalid_argument("group spec: empty name");
  } else if (kind == "abelian") {
    s.kind = GroupSpec::Kind::Abelian;
    for (const std::string& item :
         detail::split_top(detail::strip_brackets(rest, '[', ']'))) {
      long v = std::stol(item);
      if (v <= 0)
        throw std::invalid_argument("group spec: abelian factors must be > 0");
      s.abelian_orders.push_back(v);
    }
  } else if (kind == "product") {
    s.kind = GroupSpec::Kind::Product;
    for (const std::string& item :
         detail::split_top(detail::strip_brackets(rest, '[', ']')))
      s.children.push_back(parse_group_spec(item));
    if (s.children.empty())
      throw std::invalid_argument("group spec: empty product");
  } else if (kind == "semidirect") {
    s.kind = GroupSpec::Kind::Semidirect;
    bool have_normal = false, have_acting = false, have_action = false;
    for (const std::string& item :
         detail::split_top(detail::strip_brackets(rest, '{', '}'))) {
      std::size_t c = item.find(':');
      if (c == std::string::npos)
        throw std::invalid_argument("group spec: semidirect field '" + item +
                                    "'");
      std::string key = detail::trim(item.substr(0, c));
      std::string val = detail::trim(item.substr(c + 1));
      if (key == "normal") {
        s.children.insert(s.children.begin(), parse_group_spec(val));
        have_normal = true;
      } else if (key == "acting") {
        s.children.push_back(parse_group_spec(val));
        have_acting = true;
      } else if (key == "action") {
        for (const std::string& p :
             detail::split_top(detail::strip_brackets(val, '[', ']')))
          s.action.push_back(detail::parse_cycles(p));
        have_action = true;
      } else {
        throw std::invalid_argument("group spec: unknown semidirect key '" +
                                    key + "'");
      }
    }
    if (!have_normal || !have_acting || !have_action)
      throw std::invalid_argument(
          "group spec: semidirect needs normal, acting, action");
  } else if (kind == "perm") {
    s.kind = GroupSpec::Kind::Perm;
    for (const std::string& item :
         detail::split_top(detail::strip_brackets(rest, '[', ']')))
      s.perms.push_back(detail::parse_cycles(item));
    if (s.perms.empty())
      throw std::invalid_argument("group spec: empty perm list");
  } else if (kind == "table") {
    s.kind = GroupSpec::Kind::Table;
    std::string row;
    std::vector<long> cur;
    for (char c : rest + ";") {
      if (c == ';') {
        for (const std::string& item : detail::split_top(detail::trim(row)))
          cur.push_back(std::stol(item));
        s.table_rows.push_back(cur);
        cur.clear();
        row.clear();
      } else {
        row += c;
      }
    }
  } else {
    throw std::invalid_argument("group spec: unknown kind '" + kind + "'");
  }
  return s;
}

inline std::string format_group_spec(const GroupSpec& s) {
  auto cycles_str = [](const std::vector<std::vector<int>>& cycles) {
    if (cycles.empty()) return std::string("()");
    std::string out;
    for (const auto& c : cycles) {
      out += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(c[i]);
      }
      out += ')';
    }
    return out;
  };
  switch (s.kind) {
    case GroupSpec::Kind::Named:
      return "named:" + s.name;
    case GroupSpec::Kind::Abelian: {
      std::string out = "abelian:[";
      for (std::size_t i = 0; i < s.abelian_orders.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.abelian_orders[i]);
      }
      return out + "]";
    }
    case GroupSpec::Kind::Product: {
      std::string out = "product:[";
      for (std::size_t i = 0; i < s.children.size(); ++i) {
        if (i) out += ',';
        out += format_group_spec(s.children[i]);
      }
      return out + "]";
    }
    case GroupSpec::Kind::Semidirect: {
      std::string out = "semidirect:{normal:" + format_group_spec(s.children[0]) +
                        ",acting:" + format_group_spec(s.children[1]) +
                        ",action:[";
      for (std::size_t i = 0; i < s.action.size(); ++i) {
        if (i) out += ',';
        out += cycles_str(s.action[i]);
      }
      return out + "]}";
    }
    case GroupSpec::Kind::Perm: {
      std::string out = "perm:[";
      for (std::size_t i = 0; i < s.perms.size(); ++i) {
        if (i) out += ',';
        out += cycles_str(s.perms[i]);
      }
      return out + "]";
    }
    case GroupSpec::Kind::Table: {
      std::string out = "table:";
      for (std::size_t r = 0; r < s.table_rows.size(); ++r) {
        if (r) out += ';';
        for (std::size_t c = 0; c < s.table_rows[r].size(); ++c) {
          if (c) out += ',';
          out += std::to_string(s.table_rows[r][c]);
        }
      }
      return out;
    }
  }
  throw std::logic_error("format_group_spec: unknown kind");
}

// ---------------------------------------------------------------- building

namespace detail {

inline std::vector<int> cycles_to_perm(
    const std::vector<std::vector<int>>& cycles, std::size_t npoints) {
  std::vector<int> perm(npoints);
  for (std::size_t p = 0; p < npoints; ++p) perm[p] = static_cast<int>(p);
  for (const auto& cyc : cycles)
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i] - 1;
      int to = cyc[(i + 1) % cyc.size()] - 1;
      if (from < 0 || from >= static_cast<int>(npoints))
        throw std::invalid_argument("group spec: cycle point out of range");
      perm[static_cast<std::size_t>(from)] = to;
    }
  return perm;
}

inline FiniteGroup build_semidirect(const FiniteGroup& n, const FiniteGroup& a,
                                    const std::vector<std::vector<std::vector<int>>>& action) {
  const CayleyTable& tn = n.table();
  const CayleyTable& ta = a.table();
  GeneratingData gd = generating_data(ta);
  if (action.size() != gd.gens.size())
    throw std::invalid_argument(
        "semidirect: need exactly one action permutation per canonical "
        "generator of the acting group (" +
        std::to_string(gd.gens.size()) + " required, " +
        std::to_string(action.size()) + " given)");

  std::vector<std::vector<int>> gen_phi;
  for (const auto& cycles : action) {
    std::vector<int> perm = cycles_to_perm(cycles, tn.order());
    // must be an automorphism of the normal part
    for (std::size_t x = 0; x < tn.order(); ++x)
      for (std::size_t y = 0; y < tn.order(); ++y)
        if (static_cast<std::size_t>(
                perm[tn.mul(x, y)]) !=
            tn.mul(static_cast<std::size_t>(perm[x]),
                   static_cast<std::size_t>(perm[y])))
          throw std::invalid_argument(
              "semidirect: action permutation is not an automorphism of the "
              "normal part");
    gen_phi.push_back(std::move(perm));
  }

  // phi on all of the acting group, via generator words
  std::vector<std::vector<int>> phi(ta.order());
  for (std::size_t x = 0; x < ta.order(); ++x) {
    std::vector<int> p(tn.order());
    for (std::size_t q = 0; q < tn.order(); ++q) p[q] = static_cast<int>(q);
    // word w = g_{i1} g_{i2} ... means x = g_{i1} g_{i2} ...; as
    // automorphisms, phi(x) = phi(g_{i1}) . phi(g_{i2}) . ...
    for (auto it = gd.words[x].rbegin(); it != gd.words[x].rend(); ++it) {
      std::vector<int> nxt(tn.order());
      for (std::size_t q = 0; q < tn.order(); ++q)
        nxt[q] = p[static_cast<std::size_t>(gen_phi[*it][q])];
      p = std::move(nxt);
    }
    phi[x] = std::move(p);
  }
  // the assignment must be a homomorphism into Aut(normal)
  for (std::size_t x = 0; x < ta.order(); ++x)
    for (std::size_t y = 0; y < ta.order(); ++y) {
      std::size_t xy = ta.mul(x, y);
      for (std::size_t q = 0; q < tn.order(); ++q)
        if (phi[xy][q] != phi[x][static_cast<std::size_t>(phi[y][q])])
          throw std::invalid_argument(
              "semidirect: action does not respect the acting group's "
              "relations");
    }

  const std::size_t order = tn.order() * ta.order();
  if (order > 10000)
    throw std::invalid_argument("build_group: order cap 10^4 exceeded");
  auto idx = [&](std::size_t nn, std::size_t aa) {
    return aa * tn.order() + nn;
  };
  std::vector<std::uint16_t> flat(order * order);
  for (std::size_t a1 = 0; a1 < ta.order(); ++a1)
    for (std::size_t n1 = 0; n1 < tn.order(); ++n1)
      for (std::size_t a2 = 0; a2 < ta.order(); ++a2)
        for (std::size_t n2 = 0; n2 < tn.order(); ++n2) {
          // (n1, a1)(n2, a2) = (n1 * phi(a1)(n2), a1 a2)
          std::size_t nn =
              tn.mul(n1, static_cast<std::size_t>(phi[a1][n2]));
          std::size_t aa = ta.mul(a1, a2);
          flat[idx(n1, a1) * order + idx(n2, a2)] =
              static_cast<std::uint16_t>(idx(nn, aa));
        }
  return FiniteGroup(
      CayleyTable(order, std::move(flat), idx(tn.identity(), ta.identity())));
}

}  // namespace detail

inline FiniteGroup build_group(const GroupSpec& s) {
  switch (s.kind) {
    case GroupSpec::Kind::Named:
      return catalog(s.name);
    case GroupSpec::Kind::Abelian:
      return detail::abelian_group(s.abelian_orders);
    case GroupSpec::Kind::Product: {
      FiniteGroup g = build_group(s.children[0]);
      for (std::size_t i = 1; i < s.children.size(); ++i)
        g = detail::direct_product(g, build_group(s.children[i]));
      return g;
    }
    case GroupSpec::Kind::Semidirect:
      return detail::build_semidirect(build_group(s.children[0]),
                                      build_group(s.children[1]), s.action);
    case GroupSpec::Kind::Perm: {
      std::size_t npoints = 1;
      for (const auto& cycles : s.perms)
        for (const auto& cyc : cycles)
          for (int v : cyc)
            npoints = std::max(npoints, static_cast<std::size_t>(v));
      std::vector<std::vector<int>> gens;
      for (const auto& cycles : s.perms)
        gens.push_back(detail::cycles_to_perm(cycles, npoints));
      return detail::group_from_permutations(gens, npoints);
    }
    case GroupSpec::Kind::Table: {
      const std::size_t n = s.table_rows.size();
      std::vector<std::uint16_t> flat;
      for (const auto& row : s.table_rows) {
        if (row.size() != n)
          throw std::invalid_argument("group spec: ragged table");
        for (long v : row) {
          if (v < 1 || v > static_cast<long>(n))
            throw std::invalid_argument("group spec: table entry out of range");
          flat.push_back(static_cast<std::uint16_t>(v - 1));
        }
      }
      std::size_t identity = SIZE_MAX;
      for (std::size_t e = 0; e < n && identity == SIZE_MAX; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n; ++x)
          if (flat[e * n + x] != x || flat[x * n + e] != x) ok = false;
        if (ok) identity = e;
      }
      if (identity == SIZE_MAX)
        throw std::invalid_argument("group spec: table has no identity");
      return FiniteGroup(CayleyTable(n, std::move(flat), identity));
    }
  }
  throw std::logic_error("build_group: unknown kind");
}

}  // namespace stz
