#pragma once

// Rigidity decider: given a finite holonomy group Phi and a rank n >= 3,
// decide whether every homomorphism from the Steinberg group St_n(Z) into
// the relevant automorphism data of Phi is trivial.  The decision runs a
// fixed chain of criteria, each of which either certifies TRIVIAL_HOM or
// records why it does not apply; if none applies the verdict is UNKNOWN.
//
//   C1  Out(Phi) is solvable                (perfect image argument)
//   C2  Phi abelian, all p-ranks < n-1      (rank criterion)
//   C3  Phi nilpotent, central-series ranks < n-1
//   C4  Phi in a named family (dihedral, symmetric, alternating)
//   C5  Phi elementary abelian of rank < n-1
//
// Every verdict carries a certificate: a list of steps with key=value
// premises that replay_certificate can recompute from scratch.

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stz/abelian.hpp"
#include "stz/group.hpp"
#include "stz/holonomy_db.hpp"
#include "stz/iso.hpp"
#include "stz/smallgroups.hpp"

namespace stz {

enum class Outcome { TRIVIAL_HOM, UNKNOWN };

inline std::string to_string(Outcome o) {
  return o == Outcome::TRIVIAL_HOM ? "TRIVIAL_HOM" : "UNKNOWN";
}

struct CertificateStep {
  std::string criterion;  // C1_OUT_SOLVABLE .. C5_ELEMENTARY_GLKP, or an
                          // axiom step: PERFECT_IMAGE / ST_TO_SL
  std::string anchor;     // literature citation backing the step
  std::vector<std::string> premises;  // replayable key=value facts
  std::vector<std::string> axioms;    // cited statements, not re-derived
  bool ok = false;

  bool operator==(const CertificateStep&) const = default;
};

struct Verdict {
  Outcome outcome = Outcome::UNKNOWN;
  std::string group;  // textual spec of Phi
  int n = 0;
  std::vector<CertificateStep> steps;

  bool operator==(const Verdict&) const = default;
};

// The automorphism search refuses groups above this order, so criterion C1
// records an honest failure instead of attempting it.
inline constexpr std::size_t kAutOrderCap = 256;

namespace decider_detail {

inline std::string invariants_str(const AbelianInvariants& inv) {
  if (inv.factors().empty()) return "trivial";
  std::string out;
  for (std::size_t i = 0; i < inv.factors().size(); ++i) {
    if (i) out += ',';
    out += inv.factors()[i].get_str();
  }
  return out;
}

// Distinct prime divisors.  Every prime dividing the order of a finite
// abelian group divides its largest invariant factor, so primes_of(back)
// enumerates exactly the primes we must bound.
inline std::vector<mpz_class> primes_of(mpz_class m) {
  std::vector<mpz_class> ps;
  for (mpz_class p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      ps.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) ps.push_back(m);
  return ps;
}

inline void push_kv(std::vector<std::string>& v, const std::string& key,
                    const std::string& val) {
  v.push_back(key + "=" + val);
}

// ---------------------------------------------------------------- C1

inline CertificateStep crit_out_solvable(const FiniteGroup& g) {
  CertificateStep s;
  s.criterion = "C1_OUT_SOLVABLE";
  s.anchor = "outer automorphism group by orbit search; derived series test";
  push_kv(s.premises, "group_order", std::to_string(g.order()));
  if (g.order() > kAutOrderCap) {
    push_kv(s.premises, "aut_cap", std::to_string(kAutOrderCap));
    push_kv(s.premises, "aut_cap_exceeded", "true");
    return s;  // ok=false: cannot certify without computing Out
  }
  OutResult og = out_group(g);
  if (og.status == AutStatus::BUDGET_EXCEEDED) {
    push_kv(s.premises, "aut_status", "BUDGET_EXCEEDED");
    return s;
  }
  push_kv(s.premises, "aut_status", "COMPLETE");
  push_kv(s.premises, "out_order", std::to_string(og.out->order()));
  DerivedSeriesResult ds = derived_series(*og.out);
  push_kv(s.premises, "out_derived_length",
          std::to_string(ds.chain.size() - 1));
  push_kv(s.premises, "out_solvable", og.solvable ? "true" : "false");
  s.ok = og.solvable;
  if (s.ok)
    s.axioms = {"a homomorphism from a perfect group into a solvable group "
                "is trivial"};
  return s;
}

// ---------------------------------------------------------------- C2

inline CertificateStep crit_abelian_rank(const FiniteGroup& g, int n) {
  CertificateStep s;
  s.criterion = "C2_ABELIAN_RANK";
  s.anchor = "Landazuri-Seitz minimal degree bounds";
  const bool ab = g.table().is_abelian();
  push_kv(s.premises, "abelian", ab ? "true" : "false");
  if (!ab) return s;
  AbelianInvariants inv = abelian_invariants(g);
  push_kv(s.premises, "invariants", invariants_str(inv));
  const long bound = n - 1;
  push_kv(s.premises, "rank_bound", std::to_string(bound));
  bool all_below = true;
  if (!inv.factors().empty())
    for (const mpz_class& p : primes_of(inv.factors().back())) {
      const std::size_t rk = p_rank(inv, p);
      push_kv(s.premises, "p_rank[" + p.get_str() + "]", std::to_string(rk));
      if (static_cast<long>(rk) >= bound) all_below = false;
    }
  s.ok = all_below;
  if (s.ok)
    s.axioms = {"Hom(St_n(Z), GL_k(F_p)) is trivial for k < n-1",
                "Aut of a finite abelian group acts faithfully on its "
                "p-layers through GL_k(F_p) compositions"};
  return s;
}

// ---------------------------------------------------------------- C3

inline CertificateStep crit_nilpotent_rank(const FiniteGroup& g, int n) {
  CertificateStep s;
  s.criterion = "C3_NILPOTENT_RANK";
  s.anchor = "upper central series; Landazuri-Seitz minimal degree bounds";
  const bool nil = is_nilpotent(g);
  push_kv(s.premises, "nilpotent", nil ? "true" : "false");
  if (!nil) return s;
  std::vector<UcsLevel> ucs = upper_central_series(g);
  push_kv(s.premises, "ucs_length", std::to_string(ucs.size()));
  const long bound = n - 1;
  push_kv(s.premises, "rank_bound", std::to_string(bound));
  bool all_below = true;
  for (std::size_t i = 0; i < ucs.size(); ++i) {
    const AbelianInvariants& inv = ucs[i].quotient_invariants;
    const std::string tag = "ucs[" + std::to_string(i + 1) + "]";
    push_kv(s.premises, tag + ".invariants", invariants_str(inv));
    if (inv.factors().empty()) continue;
    for (const mpz_class& p : primes_of(inv.factors().back())) {
      const std::size_t rk = p_rank(inv, p);
      push_kv(s.premises, tag + ".p_rank[" + p.get_str() + "]",
              std::to_string(rk));
      if (static_cast<long>(rk) >= bound) all_below = false;
    }
  }
  s.ok = all_below;
  if (s.ok)
    s.axioms = {"an action on a nilpotent group is trivial once it is "
                "trivial on every upper-central quotient",
                "Hom(St_n(Z), GL_k(F_p)) is trivial for k < n-1"};
  return s;
}

// ---------------------------------------------------------------- C4

// Structural dihedral recognition: a cyclic subgroup of index 2 plus an
// involution outside it acting by inversion pins the dihedral presentation
// <r, s | r^t, s^2, (sr)^2> exactly, with no isomorphism search and hence
// no order cap.  Returns t (the rotation subgroup order) on success.
inline std::optional<std::size_t> recognize_dihedral(const FiniteGroup& g) {
  const CayleyTable& t = g.table();
  const std::size_t m = g.order();
  if (m < 6 || m % 2 != 0) return std::nullopt;
  const std::size_t half = m / 2;
  for (std::size_t rho = 0; rho < m; ++rho) {
    if (t.element_order(rho) != half) continue;
    std::vector<char> in_rot(m, 0);
    std::size_t pw = t.identity();
    for (std::size_t k = 0; k < half; ++k) {
      in_rot[pw] = 1;
      pw = t.mul(pw, rho);
    }
    const std::size_t rho_inv = t.inverse(rho);
    for (std::size_t x = 0; x < m; ++x) {
      if (in_rot[x]) continue;
      if (t.mul(x, x) != t.identity()) continue;
      if (t.mul(t.mul(x, rho), x) == rho_inv) return half;
    }
  }
  return std::nullopt;
}

inline const FiniteGroup& sym5_group() {
  static const FiniteGroup s5 = detail::group_from_permutations(
      {{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}}, 5);
  return s5;
}

struct FamilyMatch {
  std::string family;  // "dihedral" / "symmetric" / "alternating"
  std::string member;  // e.g. "S4"; empty for dihedral
  std::size_t dihedral_t = 0;
};

inline std::optional<FamilyMatch> recognize_named_family(
    const FiniteGroup& g) {
  if (std::optional<std::size_t> t = recognize_dihedral(g))
    return FamilyMatch{"dihedral", "", *t};
  if (g.order() > 256) return std::nullopt;
  struct Candidate {
    std::size_t order;
    const char* family;
    const char* member;
  };
  static constexpr Candidate cands[] = {{12, "alternating", "A4"},
                                        {24, "symmetric", "S4"},
                                        {60, "alternating", "A5"},
                                        {120, "symmetric", "S5"}};
  for (const Candidate& c : cands) {
    if (g.order() != c.order) continue;
    const FiniteGroup& model =
        c.order == 120 ? sym5_group() : catalog(c.member);
    if (is_isomorphic(g.table(), model.table()))
      return FamilyMatch{c.family, c.member, 0};
  }
  return std::nullopt;
}

inline CertificateStep crit_named_family(const FiniteGroup& g) {
  CertificateStep s;
  s.criterion = "C4_NAMED_FAMILY";
  s.anchor = "classical outer automorphism computations (Hoelder)";
  push_kv(s.premises, "group_order", std::to_string(g.order()));
  std::optional<FamilyMatch> fam = recognize_named_family(g);
  if (!fam) {
    push_kv(s.premises, "family", "none");
    return s;
  }
  push_kv(s.premises, "family", fam->family);
  if (fam->family == "dihedral") {
    push_kv(s.premises, "dihedral_t", std::to_string(fam->dihedral_t));
    s.axioms = {"Out of a dihedral group is abelian, hence solvable",
                "a homomorphism from a perfect group into a solvable group "
                "is trivial"};
  } else {
    push_kv(s.premises, "member", fam->member);
    s.axioms = {"Out(S_k) and Out(A_k) are abelian for every k",
                "a homomorphism from a perfect group into a solvable group "
                "is trivial"};
  }
  s.ok = true;
  return s;
}

// ---------------------------------------------------------------- C5

inline CertificateStep crit_elementary(const FiniteGroup& g, int n) {
  CertificateStep s;
  s.criterion = "C5_ELEMENTARY_GLKP";
  s.anchor = "Landazuri-Seitz minimal degree bounds over F_p";
  bool elem = g.table().is_abelian();
  mpz_class p = 0;
  std::size_t rank = 0;
  if (elem) {
    AbelianInvariants inv = abelian_invariants(g);
    if (inv.factors().empty()) {
      elem = false;  // trivial group: nothing for this criterion to say
    } else {
      p = inv.factors().front();
      rank = inv.factors().size();
      for (const mpz_class& d : inv.factors())
        if (d != p) elem = false;
      if (elem && !is_prime(p)) elem = false;
    }
  }
  push_kv(s.premises, "elementary_abelian", elem ? "true" : "false");
  if (!elem) return s;
  push_kv(s.premises, "p", p.get_str());
  push_kv(s.premises, "rank", std::to_string(rank));
  const long bound = n - 1;
  push_kv(s.premises, "rank_bound", std::to_string(bound));
  s.ok = static_cast<long>(rank) < bound;
  if (s.ok)
    s.axioms = {"Aut((Z/p)^k) = GL_k(F_p)",
                "Hom(St_n(Z), GL_k(F_p)) is trivial for k < n-1"};
  return s;
}

// Recompute the step for a named criterion; nullopt for an unknown name.
inline std::optional<CertificateStep> recompute(const std::string& criterion,
                                                const FiniteGroup& g, int n) {
  if (criterion == "C1_OUT_SOLVABLE") return crit_out_solvable(g);
  if (criterion == "C2_ABELIAN_RANK") return crit_abelian_rank(g, n);
  if (criterion == "C3_NILPOTENT_RANK") return crit_nilpotent_rank(g, n);
  if (criterion == "C4_NAMED_FAMILY") return crit_named_family(g);
  if (criterion == "C5_ELEMENTARY_GLKP") return crit_elementary(g, n);
  return std::nullopt;
}

inline CertificateStep axiom_perfect_image() {
  CertificateStep s;
  s.criterion = "PERFECT_IMAGE";
  s.anchor = "Milnor, Introduction to Algebraic K-Theory";
  s.axioms = {"St_n(Z) is perfect for n >= 3",
              "a homomorphic image of a perfect group is perfect",
              "the only perfect subgroup of a solvable group is trivial"};
  s.ok = true;
  return s;
}

inline CertificateStep axiom_st_to_sl() {
  CertificateStep s;
  s.criterion = "ST_TO_SL";
  s.anchor = "Milnor, Introduction to Algebraic K-Theory";
  s.axioms = {"SL_n(Z) is the quotient of St_n(Z) by its center for n >= 3",
              "the center of St_n(Z) is K_2(Z) = Z/2",
              "rank criteria stated for St_n(Z) descend to SL_n(Z) and back"};
  s.ok = true;
  return s;
}

}  // namespace decider_detail

// ---------------------------------------------------------------- decide

inline Verdict decide(const FiniteGroup& g, int n, std::string label = "") {
  if (n < 3) throw std::invalid_argument("decide: n must be >= 3");
  Verdict v;
  v.group = std::move(label);
  v.n = n;
  using namespace decider_detail;
  CertificateStep (*const chain[])(const FiniteGroup&, int) = {
      [](const FiniteGroup& h, int) { return crit_out_solvable(h); },
      [](const FiniteGroup& h, int m) { return crit_abelian_rank(h, m); },
      [](const FiniteGroup& h, int m) { return crit_nilpotent_rank(h, m); },
      [](const FiniteGroup& h, int) { return crit_named_family(h); },
      [](const FiniteGroup& h, int m) { return crit_elementary(h, m); },
  };
  for (auto crit : chain) {
    CertificateStep step = crit(g, n);
    const bool hit = step.ok;
    const std::string name = step.criterion;
    v.steps.push_back(std::move(step));
    if (hit) {
      v.outcome = Outcome::TRIVIAL_HOM;
      if (name == "C1_OUT_SOLVABLE" || name == "C4_NAMED_FAMILY")
        v.steps.push_back(axiom_perfect_image());
      else
        v.steps.push_back(axiom_st_to_sl());
      return v;
    }
  }
  v.outcome = Outcome::UNKNOWN;
  return v;
}

inline Verdict decide(const GroupSpec& spec, int n) {
  return decide(build_group(spec), n, format_group_spec(spec));
}

inline std::string succeeded_criterion(const Verdict& v) {
  for (const CertificateStep& s : v.steps)
    if (s.ok && s.criterion.size() > 1 && s.criterion[0] == 'C' &&
        s.criterion[1] >= '1' && s.criterion[1] <= '5')
      return s.criterion;
  return "";
}

// ---------------------------------------------------------------- replay

// Recompute every criterion step of the certificate from scratch and demand
// an exact match, premises included; axiom steps are checked structurally.
// Only TRIVIAL_HOM verdicts replay.
inline bool replay_certificate(const Verdict& v, const GroupSpec& spec,
                               int n) {
  using namespace decider_detail;
  if (v.outcome != Outcome::TRIVIAL_HOM) return false;
  if (v.n != n || n < 3) return false;
  FiniteGroup g = build_group(spec);

  std::size_t ok_criteria = 0;
  std::string winner;
  bool saw_perfect_image = false, saw_st_to_sl = false;
  for (const CertificateStep& step : v.steps) {
    if (step.criterion == "PERFECT_IMAGE" || step.criterion == "ST_TO_SL") {
      if (!step.premises.empty() || !step.ok) return false;
      (step.criterion == "PERFECT_IMAGE" ? saw_perfect_image : saw_st_to_sl) =
          true;
      continue;
    }
    std::optional<CertificateStep> fresh = recompute(step.criterion, g, n);
    if (!fresh) return false;  // unrecognized criterion name
    if (fresh->premises != step.premises || fresh->ok != step.ok ||
        fresh->axioms != step.axioms)
      return false;
    if (step.ok) {
      ++ok_criteria;
      winner = step.criterion;
    }
  }
  if (ok_criteria != 1) return false;
  if (winner == "C1_OUT_SOLVABLE" || winner == "C4_NAMED_FAMILY")
    return saw_perfect_image;
  return saw_st_to_sl;
}

// ---------------------------------------------------------------- db sweep

struct DbRow {
  std::string entry;
  int dim = 0;
  int n = 0;
  Outcome outcome = Outcome::UNKNOWN;
  std::string criterion;
  bool replay_ok = false;
};

struct DbReport {
  std::vector<DbRow> rows;
  std::size_t checked = 0;
  std::size_t trivial = 0;
  std::size_t replay_failures = 0;

  bool all_trivial_and_replayed() const {
    return checked > 0 && trivial == checked && replay_failures == 0;
  }
};

// Decide every database entry for every n in [n_lo, n_hi] with n > dim (an
// action on an r-manifold constrains ranks above r only) and n >= 3 (the
// decider's domain).  Entries run concurrently; rows are aggregated in
// entry order, so the report is deterministic.
inline DbReport db_check_all(const std::vector<DbEntry>& entries, int n_lo,
                             int n_hi) {
  auto check_entry = [n_lo, n_hi](const DbEntry& e) {
    std::vector<DbRow> rows;
    GroupSpec spec = parse_group_spec(e.spec_text);
    FiniteGroup g = build_group(spec);
    const int lo = std::max({n_lo, e.dim + 1, 3});
    for (int n = lo; n <= n_hi; ++n) {
      Verdict v = decide(g, n, e.spec_text);
      DbRow row;
      row.entry = e.name;
      row.dim = e.dim;
      row.n = n;
      row.outcome = v.outcome;
      row.criterion = succeeded_criterion(v);
      row.replay_ok = v.outcome == Outcome::TRIVIAL_HOM &&
                      replay_certificate(v, spec, n);
      rows.push_back(std::move(row));
    }
    return rows;
  };

  std::vector<std::future<std::vector<DbRow>>> futures;
  futures.reserve(entries.size());
  for (const DbEntry& e : entries)
    futures.push_back(std::async(std::launch::async, check_entry, e));

  DbReport rep;
  for (auto& f : futures)
    for (DbRow& row : f.get()) {
      ++rep.checked;
      if (row.outcome == Outcome::TRIVIAL_HOM) ++rep.trivial;
      if (!row.replay_ok) ++rep.replay_failures;
      rep.rows.push_back(std::move(row));
    }
  return rep;
}

// ---------------------------------------------------------------- JSON

inline nlohmann::ordered_json verdict_to_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["outcome"] = to_string(v.outcome);
  j["group"] = v.group;
  j["n"] = v.n;
  const std::string win = succeeded_criterion(v);
  if (win.empty())
    j["criterion"] = nullptr;
  else
    j["criterion"] = win;
  j["steps"] = nlohmann::ordered_json::array();
  for (const CertificateStep& s : v.steps) {
    nlohmann::ordered_json js;
    js["criterion"] = s.criterion;
    js["anchor"] = s.anchor;
    js["ok"] = s.ok;
    js["premises"] = s.premises;
    js["axioms"] = s.axioms;
    j["steps"].push_back(std::move(js));
  }
  return j;
}

inline nlohmann::ordered_json db_report_to_json(const DbReport& rep) {
  nlohmann::ordered_json j;
  j["checked"] = rep.checked;
  j["trivial"] = rep.trivial;
  j["replay_failures"] = rep.replay_failures;
  j["all_trivial_and_replayed"] = rep.all_trivial_and_replayed();
  j["rows"] = nlohmann::ordered_json::array();
  for (const DbRow& r : rep.rows) {
    nlohmann::ordered_json jr;
    jr["entry"] = r.entry;
    jr["dim"] = r.dim;
    jr["n"] = r.n;
    jr["outcome"] = to_string(r.outcome);
    jr["criterion"] = r.criterion.empty()
                          ? nlohmann::ordered_json(nullptr)
                          : nlohmann::ordered_json(r.criterion);
    jr["replay_ok"] = r.replay_ok;
    j["rows"].push_back(std::move(jr));
  }
  return j;
}

}  // namespace stz
