#include "cli_app.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "entrobust/fixtures.hpp"
#include "entrobust/io.hpp"

namespace entrobust::cli {

namespace {

using io::json;

struct Options {
  std::string input = "-";
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  bool json_out = false;
  bool table_out = false;
  std::string method = "thm4";
  std::string objective = "break-gme";
  int k = 1;
  int restarts = 32;
  int max_iters = 2000;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PureState read_state(const Options& opt, std::istream& in) {
  std::string text;
  if (opt.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(opt.input);
    if (!f) throw InputError("cannot open '" + opt.input + "'");
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  return io::parse_state(text);
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_analyze(const Options& opt, std::istream& in, std::ostream& out) {
  const PureState s = read_state(opt, in);
  const RankProfile prof = full_profile(s, opt.tol);
  if (!opt.table_out) {
    emit(out, io::profile_to_json(prof));
    return kOk;
  }
  out << std::left << std::setw(16) << "cut" << "rank\n";
  for (const auto& [part, r] : prof.ranks) out << std::setw(16) << part.to_string() << r << '\n';
  out << std::setw(16) << "r1_min" << prof.r1_min << '\n'
      << std::setw(16) << "r1_max" << prof.r1_max << '\n'
      << std::setw(16) << "r2_min" << *prof.r2_min << '\n'
      << std::setw(16) << "marginal" << yes_no(prof.marginal) << '\n';
  return kOk;
}

int cmd_certify(const Options& opt, std::istream& in, std::ostream& out) {
  const PureState s = read_state(opt, in);
  const RobustnessCertificate cert = certify(s, opt.tol);
  if (!opt.table_out) {
    emit(out, io::certificate_to_json(cert));
    return kOk;
  }
  out << std::left << std::setw(16) << "classification" << to_string(cert.classification) << '\n'
      << std::setw(16) << "gme_budget" << cert.gme_budget << '\n'
      << std::setw(16) << "insep_budget" << cert.insep_budget << '\n'
      << std::setw(16) << "triple_budget" << cert.triple_budget << '\n'
      << std::setw(16) << "marginal" << yes_no(cert.marginal) << '\n';
  if (!cert.note.empty()) out << std::setw(16) << "note" << cert.note << '\n';
  return kOk;
}

int cmd_construct(const Options& opt, std::istream& in, std::ostream& out) {
  const PureState s = read_state(opt, in);
  SuperpositionPlan plan;
  if (opt.method == "lemma2") {
    plan = lemma2_construction(s, opt.tol);
  } else if (opt.method == "thm4") {
    plan = theorem4_construction(s, opt.tol);
  } else {
    plan = theorem5_construction(s, opt.tol);
  }
  const PlanVerification v = verify_plan(s, plan, opt.tol);
  const bool ok = !is_entangled(v.classification.kind);
  if (opt.table_out) {
    out << std::left << std::setw(10) << "lead" << plan.lead << '\n';
    for (std::size_t i = 0; i < plan.terms.size(); ++i) {
      out << std::setw(10) << ("term " + std::to_string(i + 1)) << plan.terms[i].coeff
          << "  overlap " << std::abs(v.base_overlaps[i]) << '\n';
    }
    out << std::setw(10) << "verified" << to_string(v.classification.kind) << '\n';
  } else {
    emit(out, io::plan_to_json(plan, v.classification.kind));
  }
  return ok ? kOk : kFailed;
}

int cmd_search(const Options& opt, std::istream& in, std::ostream& out) {
  const PureState s = read_state(opt, in);
  SearchConfig cfg;
  cfg.k = opt.k;
  cfg.objective = opt.objective == "full-sep" ? Objective::ReachFullSeparability : Objective::BreakGME;
  cfg.restarts = opt.restarts;
  cfg.max_iters = opt.max_iters;
  cfg.seed = opt.seed;
  const SearchReport rep = adversarial_search(s, cfg);
  if (opt.table_out) {
    out << std::left << std::setw(16) << "objective" << opt.objective << '\n'
        << std::setw(16) << "best_gap" << rep.best_gap << '\n'
        << std::setw(16) << "best_restart" << rep.best_restart << '\n'
        << std::setw(16) << "iterations" << rep.iterations_used << '\n'
        << std::setw(16) << "succeeded" << yes_no(rep.succeeded) << '\n';
  } else {
    emit(out, io::search_report_to_json(rep, cfg));
  }
  return rep.succeeded ? kOk : kFailed;
}

int cmd_verify_paper(const Options& opt, std::ostream& out) {
  const auto results = fixtures::verify_all(opt.tol);
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed(); });
  if (opt.json_out) {
    json arr = json::array();
    for (const auto& r : results) {
      json checks = json::array();
      for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
      }
      arr.push_back({{"name", r.name}, {"description", r.description}, {"pass", r.passed()},
                     {"checks", std::move(checks)}});
    }
    emit(out, {{"fixtures", std::move(arr)}, {"pass", all}});
    return all ? kOk : kFailed;
  }
  for (const auto& r : results) {
    out << (r.passed() ? "PASS  " : "FAIL  ") << std::left << std::setw(10) << r.name << r.description << '\n';
    for (const auto& c : r.checks) {
      out << "        " << (c.pass ? "ok   " : "FAIL ") << std::setw(36) << c.name << " expected " << c.expected
          << ", got " << c.actual << '\n';
    }
  }
  out << (all ? "all fixtures passed" : "some fixtures FAILED") << '\n';
  return all ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schmidt-rank analysis of multipartite pure states", "entrobust"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&opt](CLI::App* sub, bool takes_input) {
    if (takes_input) sub->add_option("input", opt.input, "state JSON file, or - for stdin");
    sub->add_option("--tol", opt.tol, "relative rank tolerance")->check(CLI::Range(0.0, 1.0));
    auto* j = sub->add_flag("--json", opt.json_out, "JSON output");
    sub->add_flag("--table", opt.table_out, "plain-text output")->excludes(j);
  };

  auto* analyze = app.add_subcommand("analyze", "Schmidt ranks across every bipartition");
  common(analyze, true);
  auto* cert = app.add_subcommand("certify", "classification and robustness budgets");
  common(cert, true);
  auto* construct = app.add_subcommand("construct", "product states that disentangle the input");
  common(construct, true);
  construct->add_option("--method", opt.method, "lemma2, thm4 or thm5")
      ->check(CLI::IsMember({"lemma2", "thm4", "thm5"}));
  auto* search = app.add_subcommand("search", "adversarial search for k disentangling product states");
  common(search, true);
  search->add_option("--objective", opt.objective, "break-gme or full-sep")
      ->check(CLI::IsMember({"break-gme", "full-sep"}));
  search->add_option("-k", opt.k, "number of product states")->check(CLI::PositiveNumber);
  search->add_option("--seed", opt.seed, "RNG seed");
  search->add_option("--restarts", opt.restarts)->check(CLI::PositiveNumber);
  search->add_option("--max-iters", opt.max_iters)->check(CLI::PositiveNumber);
  auto* verify = app.add_subcommand("verify-paper", "run the worked-example fixtures");
  common(verify, false);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(opt, in, out);
    if (*cert) return cmd_certify(opt, in, out);
    if (*construct) return cmd_construct(opt, in, out);
    if (*search) return cmd_search(opt, in, out);
    return cmd_verify_paper(opt, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace entrobust::cli
