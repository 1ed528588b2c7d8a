// strawbn: straw-model conflict detection for annotated diagnostic
// Bayesian networks.
//
// Exit codes: 0 success, 1 usage/validation/data errors, 2 internal errors,
// 3 when --exit-on-conflict is set and a conflict verdict was reached.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "strawbn/errors.hpp"
#include "strawbn/harness.hpp"
#include "strawbn/inference.hpp"
#include "strawbn/io.hpp"
#include "strawbn/straw.hpp"
#include "strawbn/validate.hpp"

namespace {

using namespace strawbn;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;
constexpr int kExitConflict = 3;

Network load_and_check(const std::string& path, bool renormalize) {
  Network net = load_network(path);
  if (renormalize) net = renormalize_cpts(net);
  auto report = validate_network(net);
  if (!report.ok()) {
    std::string message = "network \"" + path + "\" fails validation:";
    for (const auto& v : report.violations) message += "\n  " + v.message;
    throw Error(message);
  }
  return net;
}

// Findings come from an optional file plus repeated VAR=STATE pairs on the
// command line; the command line wins on conflicts, with a warning.
Evidence gather_findings(const Network& net, const std::string& findings_file,
                         const std::vector<std::string>& pairs) {
  Evidence evidence;
  if (!findings_file.empty()) {
    std::ifstream in(findings_file, std::ios::binary);
    if (!in) throw Error("cannot open \"" + findings_file + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    evidence = parse_findings(buffer.str(), net);
  }

  Evidence from_cli;
  for (const auto& pair : pairs) {
    auto one = parse_findings(pair, net);
    if (one.size() != 1) {
      throw Error("--ev expects a single VAR=STATE pair, got \"" + pair + "\"");
    }
    const auto& [name, state] = *one.assignments.begin();
    if (from_cli.assignments.contains(name)) {
      throw Error("--ev assigns \"" + name + "\" twice");
    }
    if (evidence.assignments.contains(name) &&
        evidence.assignments.at(name) != state) {
      std::cerr << "warning: --ev " << name << "=" << state
                << " overrides the findings file (" << name << "="
                << evidence.assignments.at(name) << ")\n";
    }
    from_cli.set(name, state);
    evidence.set(name, state);
  }
  return evidence;
}

std::set<StrawKind> parse_kinds(const std::string& kind) {
  if (kind == "bipartite") return {StrawKind::Bipartite};
  if (kind == "independent") return {StrawKind::Independent};
  if (kind == "both") return {StrawKind::Bipartite, StrawKind::Independent};
  throw Error("unknown straw kind \"" + kind +
              "\" (want bipartite, independent or both)");
}

std::string index_text(const std::optional<double>& index) {
  if (!index) return "undefined";
  return format_sig(*index);
}

int cmd_validate(const std::string& net_file, bool renormalize) {
  Network net = load_network(net_file);
  if (renormalize) net = renormalize_cpts(net);
  auto report = validate_network(net);
  if (report.ok()) {
    std::cout << "ok: network \"" << net.name << "\" with " << net.size()
              << " variables\n";
    return kExitOk;
  }
  for (const auto& v : report.violations) {
    std::cout << to_string(v.kind) << ": " << v.message << "\n";
  }
  return kExitUsage;
}

int cmd_query(const std::string& net_file, const std::string& findings_file,
              const std::vector<std::string>& pairs,
              const std::vector<std::string>& marginals, bool renormalize) {
  Network net = load_and_check(net_file, renormalize);
  Evidence evidence = gather_findings(net, findings_file, pairs);

  std::cout << "P(evidence) = " << format_sig(prob_of_evidence(net, evidence))
            << "\n";
  for (const auto& name : marginals) {
    auto vi = net.index_of(name);
    if (!vi) throw LookupError("unknown variable \"" + name + "\"");
    auto dist = posterior_marginal(net, name, evidence);
    std::cout << "P(" << name << " | evidence):\n";
    for (std::size_t s = 0; s < dist.size(); ++s) {
      std::cout << "  " << net.var(*vi).states[s] << ": " << format_sig(dist[s])
                << "\n";
    }
  }
  return kExitOk;
}

int cmd_straw(const std::string& net_file, const std::string& kind,
              const std::string& out_file, bool renormalize) {
  auto kinds = parse_kinds(kind);
  if (kinds.size() != 1) {
    throw Error("straw builds one model at a time (bipartite or independent)");
  }
  Network net = load_and_check(net_file, renormalize);
  StrawModel straw = build_straw(net, *kinds.begin());
  for (const auto& w : straw.warnings) std::cerr << "warning: " << w << "\n";
  save_network(out_file, straw.network);
  return kExitOk;
}

int cmd_conflict(const std::string& net_file, const std::string& findings_file,
                 const std::vector<std::string>& pairs, const std::string& kind,
                 bool exit_on_conflict, bool renormalize) {
  Network net = load_and_check(net_file, renormalize);
  Evidence evidence = gather_findings(net, findings_file, pairs);
  auto report = conflict_report(net, evidence, parse_kinds(kind));

  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "P_given(evidence) = " << format_sig(report.p_given) << "\n";
  bool any_conflict = false;
  for (const auto& [k, score] : report.scores) {
    std::cout << to_string(k) << ": P_straw = " << format_sig(score.p_straw)
              << "  c_s = " << index_text(score.index)
              << "  verdict = " << to_string(score.verdict) << "\n";
    any_conflict |= score.verdict == Verdict::Conflict;
  }
  if (exit_on_conflict && any_conflict) return kExitConflict;
  return kExitOk;
}

int cmd_experiment(std::uint32_t targets, std::uint32_t evidence,
                   std::uint32_t other, std::uint32_t states, double density,
                   double strength, double epsilon, std::size_t cases,
                   std::uint64_t seed, double threshold) {
  NetSpec spec{targets, evidence, other, states, density, seed};
  auto result = run_detection_experiment(spec, strength, epsilon, cases, seed,
                                         threshold);
  std::cout << to_table(result);
  return kExitOk;
}

int cmd_check_bound(const std::string& net_file, const std::string& kind,
                    const std::vector<double>& thresholds, std::size_t cases,
                    std::uint64_t seed, bool renormalize) {
  Network net = load_and_check(net_file, renormalize);
  std::cout << "kind\tK\tbound\texceedance\tn\tseed\n";
  for (StrawKind k : parse_kinds(kind)) {
    auto rows = surprise_bound_check(net, k, thresholds, cases, seed);
    std::cout << to_table(k, rows, cases, seed);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Straw-model conflict detection for diagnostic Bayesian networks"};
  app.set_version_flag("--version", "strawbn 0.1.0");
  app.require_subcommand(1);

  std::string net_file, findings_file, out_file;
  std::string kind = "both";
  std::vector<std::string> ev_pairs, marginals;
  std::vector<double> thresholds{1.0, 2.0, 3.0, 4.0};
  bool renormalize = false, exit_on_conflict = false;
  std::uint32_t n_targets = 2, n_evidence = 3, n_other = 3, states = 2;
  double density = 0.5, strength = 0.8, epsilon = 0.5, threshold = 0.0;
  std::size_t cases = 1000;
  std::uint64_t seed = 0;

  auto add_net_arg = [&](CLI::App* cmd) {
    cmd->add_option("net-file", net_file, "network document")->required();
    cmd->add_flag("--renormalize", renormalize,
                  "rescale CPT rows to sum to one before validating");
  };
  auto add_findings = [&](CLI::App* cmd) {
    cmd->add_option("--ev", ev_pairs, "finding VAR=STATE (repeatable)");
    cmd->add_option("--findings", findings_file, "findings document");
  };

  auto* validate = app.add_subcommand("validate", "check a network document");
  add_net_arg(validate);

  auto* query = app.add_subcommand("query", "evidence probability and marginals");
  add_net_arg(query);
  add_findings(query);
  query->add_option("--marginal", marginals,
                    "variable whose posterior to print (repeatable)");

  auto* straw = app.add_subcommand("straw", "build and save a straw model");
  add_net_arg(straw);
  straw->add_option("--kind", kind, "bipartite or independent")->required();
  straw->add_option("--out", out_file, "output path")->required();

  auto* conflict = app.add_subcommand("conflict", "score findings for conflict");
  add_net_arg(conflict);
  add_findings(conflict);
  conflict->add_option("--kind", kind, "bipartite, independent or both");
  conflict->add_flag("--exit-on-conflict", exit_on_conflict,
                     "exit with code 3 when a conflict verdict is reached");

  auto* experiment =
      app.add_subcommand("experiment", "synthetic detection-rate comparison");
  experiment->add_option("--targets", n_targets, "target variables");
  experiment->add_option("--evidence", n_evidence, "evidence variables");
  experiment->add_option("--other", n_other, "Other variables");
  experiment->add_option("--states", states, "states per variable");
  experiment->add_option("--density", density, "edge density in (0,1]");
  experiment->add_option("--strength", strength, "perturbation strength in [0,1]");
  experiment->add_option("--epsilon", epsilon, "alternate-model mixing weight");
  experiment->add_option("--cases", cases, "number of sampled cases");
  experiment->add_option("--seed", seed, "experiment seed");
  experiment->add_option("--threshold", threshold, "conflict decision threshold");

  auto* check_bound =
      app.add_subcommand("check-bound", "surprise-index exceedance table");
  add_net_arg(check_bound);
  check_bound->add_option("--kind", kind, "bipartite, independent or both");
  check_bound->add_option("--K", thresholds, "thresholds K (repeatable or comma list)")
      ->delimiter(',');
  check_bound->add_option("--cases", cases, "number of sampled cases");
  check_bound->add_option("--seed", seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(net_file, renormalize);
    if (query->parsed()) {
      return cmd_query(net_file, findings_file, ev_pairs, marginals, renormalize);
    }
    if (straw->parsed()) return cmd_straw(net_file, kind, out_file, renormalize);
    if (conflict->parsed()) {
      return cmd_conflict(net_file, findings_file, ev_pairs, kind,
                          exit_on_conflict, renormalize);
    }
    if (experiment->parsed()) {
      return cmd_experiment(n_targets, n_evidence, n_other, states, density,
                            strength, epsilon, cases, seed, threshold);
    }
    if (check_bound->parsed()) {
      return cmd_check_bound(net_file, kind, thresholds, cases, seed, renormalize);
    }
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
