#include "strawbn/straw.hpp"

#include <cmath>
#include <limits>

#include "strawbn/errors.hpp"
#include "strawbn/inference.hpp"

namespace strawbn {

std::string_view to_string(StrawKind kind) {
  return kind == StrawKind::Bipartite ? "bipartite" : "independent";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Conflict: return "conflict";
    case Verdict::NoConflict: return "no-conflict";
    case Verdict::Undefined: return "undefined";
  }
  return "undefined";
}

namespace {

std::vector<std::uint32_t> vars_with_role(const Network& net, Role role) {
  std::vector<std::uint32_t> result;
  for (std::uint32_t i = 0; i < net.size(); ++i) {
    if (net.var(i).role == role) result.push_back(i);
  }
  return result;
}

}  // namespace

StrawModel build_bipartite_straw(const Network& net,
                                 std::size_t target_config_cap) {
  const auto targets = vars_with_role(net, Role::Target);
  const auto evidence_vars = vars_with_role(net, Role::Evidence);
  if (targets.empty()) {
    throw StrawError("network \"" + net.name + "\" has no Target variable");
  }
  if (evidence_vars.empty()) {
    throw StrawError("network \"" + net.name + "\" has no Evidence variable");
  }

  std::vector<std::uint32_t> target_cards;
  std::size_t n_target_configs = 1;
  for (auto t : targets) {
    const std::uint32_t c = net.card(t);
    if (c == 0 || n_target_configs > target_config_cap / c) {
      throw StrawError("bipartite straw model needs more than " +
                       std::to_string(target_config_cap) +
                       " target configurations");
    }
    n_target_configs *= c;
    target_cards.push_back(c);
  }

  StrawModel straw;
  straw.network.name = net.name + "-bipartite-straw";

  // Keep the surviving variables in declaration order; targets map to their
  // new indices for parent lists.
  std::vector<std::uint32_t> old_of_new;
  std::map<std::uint32_t, std::uint32_t> new_of_old;
  for (std::uint32_t i = 0; i < net.size(); ++i) {
    if (net.var(i).role == Role::Target || net.var(i).role == Role::Evidence) {
      new_of_old[i] = static_cast<std::uint32_t>(old_of_new.size());
      old_of_new.push_back(i);
      straw.network.variables.push_back(net.var(i));
    }
  }

  std::vector<std::uint32_t> straw_target_ids;
  for (auto t : targets) straw_target_ids.push_back(new_of_old.at(t));

  // P(t) over the joint target configuration, to spot impossible rows.
  Factor target_joint = joint_with_evidence(net, targets, Evidence{});

  for (std::uint32_t new_id = 0; new_id < old_of_new.size(); ++new_id) {
    const std::uint32_t old_id = old_of_new[new_id];
    const Variable& v = net.var(old_id);
    Cpt cpt;
    cpt.child = new_id;
    if (v.role == Role::Target) {
      cpt.rows.push_back(posterior_marginal(net, v.name, Evidence{}));
    } else {
      cpt.parents = straw_target_ids;
      cpt.rows.reserve(n_target_configs);
      for (std::size_t row = 0; row < n_target_configs; ++row) {
        auto digits = index_to_config(target_cards, row);
        if (target_joint.values[row] == 0.0) {
          std::string config;
          for (std::size_t i = 0; i < targets.size(); ++i) {
            if (!config.empty()) config += ", ";
            config += net.var(targets[i]).name + "=" +
                      net.var(targets[i]).states[digits[i]];
          }
          straw.warnings.push_back(
              "target configuration (" + config +
              ") has probability zero; conditional row for \"" + v.name +
              "\" filled with the uniform distribution");
          cpt.rows.emplace_back(v.card(), 1.0 / v.card());
          continue;
        }
        Evidence target_config;
        for (std::size_t i = 0; i < targets.size(); ++i) {
          target_config.set(net.var(targets[i]).name,
                            net.var(targets[i]).states[digits[i]]);
        }
        cpt.rows.push_back(posterior_marginal(net, v.name, target_config));
      }
    }
    straw.network.cpts.push_back(std::move(cpt));
  }
  return straw;
}

StrawModel build_independent_straw(const Network& net) {
  StrawModel straw;
  straw.network.name = net.name + "-independent-straw";
  straw.network.variables = net.variables;
  for (std::uint32_t i = 0; i < net.size(); ++i) {
    Cpt cpt;
    cpt.child = i;
    cpt.rows.push_back(posterior_marginal(net, net.var(i).name, Evidence{}));
    straw.network.cpts.push_back(std::move(cpt));
  }
  return straw;
}

StrawModel build_straw(const Network& net, StrawKind kind,
                       std::size_t target_config_cap) {
  return kind == StrawKind::Bipartite
             ? build_bipartite_straw(net, target_config_cap)
             : build_independent_straw(net);
}

std::optional<double> conflict_index(double p_straw, double p_given) {
  if (p_straw == 0.0 && p_given == 0.0) return std::nullopt;
  if (p_given == 0.0) return std::numeric_limits<double>::infinity();
  if (p_straw == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log2(p_straw / p_given);
}

Verdict verdict_of(std::optional<double> index) {
  if (!index) return Verdict::Undefined;
  return *index > kVerdictTieBreak ? Verdict::Conflict : Verdict::NoConflict;
}

std::optional<double> jensen_conf(const Network& net, const Evidence& evidence) {
  if (evidence.empty()) {
    throw StrawError("conflict measure needs at least one finding");
  }
  double product = 1.0;
  for (const auto& [name, state] : evidence.assignments) {
    auto vi = net.index_of(name);
    if (!vi) throw LookupError("unknown variable \"" + name + "\"");
    auto si = net.var(*vi).state_index(state);
    if (!si) {
      throw LookupError("variable \"" + name + "\" has no state \"" + state + "\"");
    }
    product *= posterior_marginal(net, name, Evidence{})[*si];
  }
  return conflict_index(product, prob_of_evidence(net, evidence));
}

ConflictReport conflict_report(const Network& net, const Evidence& evidence,
                               const std::set<StrawKind>& kinds,
                               std::size_t target_config_cap) {
  if (evidence.empty()) {
    throw StrawError("conflict report needs at least one finding");
  }
  for (const auto& [name, state] : evidence.assignments) {
    auto vi = net.index_of(name);
    if (!vi) throw LookupError("unknown variable \"" + name + "\"");
    if (net.var(*vi).role != Role::Evidence) {
      throw StrawError("finding on \"" + name + "\" (role " +
                       std::string(to_string(net.var(*vi).role)) +
                       "): straw models only score Evidence variables");
    }
  }

  ConflictReport report;
  report.evidence = evidence;
  report.p_given = prob_of_evidence(net, evidence);
  for (StrawKind kind : kinds) {
    StrawModel straw = build_straw(net, kind, target_config_cap);
    KindScore score;
    score.p_straw = prob_of_evidence(straw.network, evidence);
    score.index = conflict_index(score.p_straw, report.p_given);
    score.verdict = verdict_of(score.index);
    report.scores.emplace(kind, score);
    for (auto& w : straw.warnings) report.warnings.push_back(std::move(w));
  }
  return report;
}

}  // namespace strawbn
