// Command-line surface for the library: verification suites, the rigidity
// decider, the fixed-point case analysis, and ad-hoc algebra queries.
//
// Exit codes: 0 success; 1 an open branch or failed check; 2 an UNKNOWN
// verdict or unverified sweep; 3 malformed input.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stz/borel.hpp"
#include "stz/congruence.hpp"
#include "stz/decider.hpp"
#include "stz/holonomy_db.hpp"
#include "stz/holonomy_db_embedded.hpp"
#include "stz/matrix.hpp"
#include "stz/smallgroups.hpp"
#include "stz/smith.hpp"
#include "stz/suites.hpp"
#include "stz/words.hpp"

namespace {

constexpr int kExitOpen = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitBadInput = 3;

void print_json(const nlohmann::ordered_json& j) {
  std::cout << j.dump(2) << "\n";
}

// ------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, bool json, unsigned long seed,
               bool timings) {
  stz::SuiteOptions opts;
  opts.seed = seed;
  opts.timings = timings;
  opts.holonomy_db_text = stz::dbdata::holonomy_db_text();
  std::vector<stz::SuiteReport> reports = stz::run_suites(suite, opts);
  if (json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const stz::SuiteReport& r : reports)
      j.push_back(stz::report_to_json(r));
    print_json(j);
  } else {
    for (const stz::SuiteReport& r : reports) {
      std::cout << "suite " << r.suite << " (seed " << r.seed << ")\n";
      for (const stz::CheckResult& c : r.checks) {
        std::cout << "  " << stz::to_string(c.status) << "  " << c.name;
        if (timings) std::cout << "  [" << c.seconds << "s]";
        std::cout << "\n      " << c.detail << "\n";
      }
    }
  }
  return stz::suites_exit_code(reports);
}

// ----------------------------------------------------------- check-hom

int cmd_check_hom(const std::string& group, int n, bool json) {
  stz::GroupSpec spec = stz::parse_group_spec(group);
  stz::Verdict v = stz::decide(spec, n);
  const bool replayed = v.outcome == stz::Outcome::TRIVIAL_HOM &&
                        stz::replay_certificate(v, spec, n);
  if (json) {
    nlohmann::ordered_json j = stz::verdict_to_json(v);
    j["replay_ok"] = replayed;
    print_json(j);
  } else {
    std::cout << "group: " << v.group << "\n"
              << "n: " << v.n << "\n"
              << "outcome: " << stz::to_string(v.outcome) << "\n";
    const std::string win = stz::succeeded_criterion(v);
    if (!win.empty())
      std::cout << "criterion: " << win << "\n"
                << "replay: " << (replayed ? "ok" : "FAILED") << "\n";
    for (const stz::CertificateStep& s : v.steps) {
      std::cout << "  [" << (s.ok ? "+" : "-") << "] " << s.criterion << "\n";
      for (const std::string& p : s.premises)
        std::cout << "        " << p << "\n";
      for (const std::string& a : s.axioms)
        std::cout << "        axiom: " << a << "\n";
    }
  }
  if (v.outcome != stz::Outcome::TRIVIAL_HOM) return kExitUnknown;
  return replayed ? 0 : kExitUnknown;
}

// --------------------------------------------------------------- borel

int cmd_borel(int k, const std::string& mode_text, int n, bool json) {
  stz::Mode mode = stz::mode_from_string(mode_text);
  if (n == 0) n = stz::minimal_admissible_n(k, mode);
  stz::ProofTree t = stz::run_case_analysis(k, mode, n);
  if (json) {
    print_json(stz::tree_to_json(t));
  } else {
    std::cout << "k=" << t.k << " mode=" << stz::to_string(t.mode)
              << " n=" << t.n << "\n"
              << "leaves: " << t.leaf_count << ", open: " << t.open_count
              << ", closed: " << (t.closed ? "yes" : "no") << "\n";
    if (!t.survivors.empty()) {
      std::cout << "survivors:";
      for (const auto& s : t.survivors) {
        std::cout << " (r=" << s.r << ",n_h=" << s.n_h;
        if (s.r_prime) std::cout << ",r'=" << *s.r_prime;
        std::cout << ")";
      }
      std::cout << "\n";
    }
    std::cout << "replay: " << (stz::validate_tree(t) ? "ok" : "FAILED")
              << "\n";
  }
  return t.open_count == 0 ? 0 : kExitOpen;
}

// ------------------------------------------------------ normal-closure

int cmd_normal_closure(int n, const std::string& word, bool json) {
  stz::SteinbergWord w = stz::parse_word(n, word);
  stz::ClosureResult r =
      stz::normal_closure_subspace(n, {stz::to_kernel_element(w)});
  if (json) {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["word"] = word;
    j["dimension"] = r.space.dimension();
    j["ambient_dimension"] = n * n - 1;
    j["steps"] = r.steps.size();
    print_json(j);
  } else {
    std::cout << "normal closure of " << word << " at level 4, n=" << n
              << "\n"
              << "dimension: " << r.space.dimension() << " (ambient sl_"
              << n << "(F_2) has dimension " << n * n - 1 << ")\n"
              << "closure steps: " << r.steps.size() << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- snf

int cmd_snf(const std::string& matrix_text) {
  stz::IntMatrix a = stz::parse_matrix(matrix_text);
  stz::SmithResult s = stz::smith_normal_form(a);
  std::cout << "d: " << stz::format_matrix(s.d) << "\n"
            << "u: " << stz::format_matrix(s.u) << "\n"
            << "v: " << stz::format_matrix(s.v) << "\n";
  return 0;
}

// ----------------------------------------------------------- eval-word

int cmd_eval_word(int n, const std::string& word) {
  std::cout << stz::format_matrix(stz::evaluate(stz::parse_word(n, word)))
            << "\n";
  return 0;
}

// ------------------------------------------------------------------ db

int cmd_db_list(const stz::HolonomyDb& db, bool json) {
  if (json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const stz::DbEntry& e : db.entries) {
      nlohmann::ordered_json je;
      je["name"] = e.name;
      je["dim"] = e.dim;
      je["spec"] = e.spec_text;
      j.push_back(std::move(je));
    }
    print_json(j);
  } else {
    for (const stz::DbEntry& e : db.entries)
      std::cout << e.name << "  dim=" << e.dim << "  " << e.spec_text
                << "\n";
  }
  return 0;
}

int cmd_db_show(const stz::HolonomyDb& db, const std::string& name,
                bool json) {
  for (const stz::DbEntry& e : db.entries) {
    if (e.name != name) continue;
    if (json) {
      nlohmann::ordered_json j;
      j["name"] = e.name;
      j["dim"] = e.dim;
      j["spec"] = e.spec_text;
      j["source"] = e.source;
      j["note"] = e.note;
      print_json(j);
    } else {
      std::cout << "name:   " << e.name << "\n"
                << "dim:    " << e.dim << "\n"
                << "spec:   " << e.spec_text << "\n"
                << "source: " << e.source << "\n";
      if (!e.note.empty()) std::cout << "note:   " << e.note << "\n";
    }
    return 0;
  }
  std::cerr << "error: --name: no database entry called '" << name << "'\n";
  return kExitBadInput;
}

int cmd_db_verify(const stz::HolonomyDb& db, int max_n, bool json) {
  stz::DbReport rep = stz::db_check_all(db.entries, 3, max_n);
  if (json) {
    print_json(stz::db_report_to_json(rep));
  } else {
    for (const stz::DbRow& row : rep.rows)
      std::cout << row.entry << "  n=" << row.n << "  "
                << stz::to_string(row.outcome)
                << (row.criterion.empty() ? "" : "  via " + row.criterion)
                << "  replay=" << (row.replay_ok ? "ok" : "FAILED") << "\n";
    std::cout << rep.checked << " verdicts, " << rep.trivial
              << " trivial, " << rep.replay_failures << " replay failures\n";
  }
  return rep.all_trivial_and_replayed() ? 0 : kExitUnknown;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steinberg group actions toolkit"};
  app.require_subcommand(1);

  // verify
  std::string suite = "all";
  bool json = false, timings = false;
  unsigned long seed = 20260822;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite,
                     "lemmas|borel|congruence|decider|all");
  verify->add_flag("--json", json, "machine-readable output");
  verify->add_flag("--timings", timings, "include wall times");
  verify->add_option("--seed", seed, "seed for randomized checks");

  // check-hom
  std::string group;
  int sln = 0;
  CLI::App* check = app.add_subcommand(
      "check-hom", "decide triviality of actions for a holonomy group");
  check->add_option("--group", group, "group spec, e.g. abelian:[2,2]")
      ->required();
  check->add_option("--sln", sln, "Steinberg group rank n (n >= 3)")
      ->required();
  check->add_flag("--json", json, "machine-readable output");

  // borel
  int dim = 0, rank_n = 0;
  std::string mode = "sphere";
  CLI::App* borel =
      app.add_subcommand("borel", "run the fixed-point case analysis");
  borel->add_option("--dim", dim, "manifold dimension k (1..12)")->required();
  borel->add_option("--mode", mode, "sphere|acyclic");
  borel->add_option("--n", rank_n, "rank n (defaults to minimal admissible)");
  borel->add_flag("--json", json, "machine-readable output");

  // normal-closure
  int nc_n = 0;
  std::string nc_word;
  CLI::App* closure = app.add_subcommand(
      "normal-closure", "level-4 normal closure dimension of a word");
  closure->add_option("--n", nc_n, "rank n (n >= 3)")->required();
  closure->add_option("--word", nc_word, "word, e.g. \"h(1,2)h(3,4)\"")
      ->required();
  closure->add_flag("--json", json, "machine-readable output");

  // snf
  std::string matrix_text;
  CLI::App* snf =
      app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("--matrix", matrix_text, "rows a,b;c,d")->required();

  // eval-word
  int ew_n = 0;
  std::string ew_word;
  CLI::App* eval = app.add_subcommand(
      "eval-word", "evaluate a word through the elementary representation");
  eval->add_option("--n", ew_n, "matrix size n (n >= 3)")->required();
  eval->add_option("--word", ew_word, "word, e.g. \"h(1,2)\"")->required();

  // db
  CLI::App* db_cmd = app.add_subcommand("db", "holonomy database");
  db_cmd->require_subcommand(1);
  CLI::App* db_list = db_cmd->add_subcommand("list", "list entries");
  db_list->add_flag("--json", json, "machine-readable output");
  std::string db_name;
  CLI::App* db_show = db_cmd->add_subcommand("show", "show one entry");
  db_show->add_option("--name", db_name, "entry name")->required();
  db_show->add_flag("--json", json, "machine-readable output");
  int max_n = 8;
  CLI::App* db_verify =
      db_cmd->add_subcommand("verify", "decide every entry and replay");
  db_verify->add_option("--max-n", max_n, "largest rank n to check");
  db_verify->add_flag("--json", json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*verify) return cmd_verify(suite, json, seed, timings);
    if (*check) return cmd_check_hom(group, sln, json);
    if (*borel) return cmd_borel(dim, mode, rank_n, json);
    if (*closure) return cmd_normal_closure(nc_n, nc_word, json);
    if (*snf) return cmd_snf(matrix_text);
    if (*eval) return cmd_eval_word(ew_n, ew_word);
    if (*db_cmd) {
      stz::HolonomyDb db =
          stz::parse_holonomy_db(stz::dbdata::holonomy_db_text());
      if (*db_list) return cmd_db_list(db, json);
      if (*db_show) return cmd_db_show(db, db_name, json);
      if (*db_verify) return cmd_db_verify(db, max_n, json);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;  // unreachable: a subcommand is required
}
