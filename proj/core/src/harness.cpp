#include "strawbn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "strawbn/errors.hpp"
#include "strawbn/inference.hpp"
#include "strawbn/rng.hpp"

namespace strawbn {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void check_spec(const NetSpec& spec) {
  if (spec.n_target < 1) throw Error("NetSpec needs at least one target");
  if (spec.n_evidence < 1) throw Error("NetSpec needs at least one evidence variable");
  if (spec.states_per_var < 2) throw Error("NetSpec needs at least two states per variable");
  if (!(spec.edge_density > 0.0 && spec.edge_density <= 1.0)) {
    throw Error("NetSpec edge density must be in (0, 1]");
  }
}

std::vector<std::string> make_states(std::uint32_t k) {
  std::vector<std::string> states;
  states.reserve(k);
  for (std::uint32_t i = 1; i <= k; ++i) states.push_back("s" + std::to_string(i));
  return states;
}

// Forward (ancestral) sampling: one full assignment, one categorical draw
// per variable in topological order.
std::vector<std::uint32_t> forward_sample(const Network& net,
                                          std::span<const std::uint32_t> topo,
                                          std::mt19937_64& gen) {
  std::vector<std::uint32_t> digits(net.size(), 0);
  for (auto v : topo) {
    const Cpt& cpt = net.cpt_of(v);
    std::size_t row = 0;
    for (auto p : cpt.parents) row = row * net.card(p) + digits[p];
    digits[v] = static_cast<std::uint32_t>(rng::categorical(gen, cpt.rows[row]));
  }
  return digits;
}

Evidence findings_of(const Network& net, std::span<const std::uint32_t> digits,
                     std::span<const std::uint32_t> evidence_vars) {
  Evidence e;
  for (auto v : evidence_vars) {
    e.set(net.var(v).name, net.var(v).states[digits[v]]);
  }
  return e;
}

std::vector<std::uint32_t> evidence_role_vars(const Network& net) {
  std::vector<std::uint32_t> vars;
  for (std::uint32_t i = 0; i < net.size(); ++i) {
    if (net.var(i).role == Role::Evidence) vars.push_back(i);
  }
  return vars;
}

// Evidence probabilities under one network, memoized per distinct finding
// set; sampled experiments draw from a small configuration space.
class EvidenceScorer {
 public:
  explicit EvidenceScorer(const Network& net) : net_(net) {}

  double operator()(const Evidence& evidence) {
    auto [it, inserted] = cache_.try_emplace(evidence, 0.0);
    if (inserted) it->second = prob_of_evidence(net_, evidence);
    return it->second;
  }

 private:
  const Network& net_;
  std::map<Evidence, double> cache_;
};

}  // namespace

Network generate_diagnostic_network(const NetSpec& spec) {
  check_spec(spec);
  std::mt19937_64 gen(spec.seed);

  const std::uint32_t n_roots = (spec.n_other + 1) / 2;
  const std::uint32_t n_mediators = spec.n_other - n_roots;

  Network net;
  net.name = "generated-" + std::to_string(spec.seed);

  auto add_var = [&](const std::string& name, Role role) {
    net.variables.push_back({name, make_states(spec.states_per_var), role});
    return static_cast<std::uint32_t>(net.variables.size() - 1);
  };

  std::vector<std::uint32_t> roots, targets, mediators, evidence;
  for (std::uint32_t i = 0; i < n_roots; ++i) {
    roots.push_back(add_var("Other" + std::to_string(i + 1), Role::Other));
  }
  for (std::uint32_t i = 0; i < spec.n_target; ++i) {
    targets.push_back(add_var("Target" + std::to_string(i + 1), Role::Target));
  }
  for (std::uint32_t i = 0; i < n_mediators; ++i) {
    mediators.push_back(
        add_var("Other" + std::to_string(n_roots + i + 1), Role::Other));
  }
  for (std::uint32_t i = 0; i < spec.n_evidence; ++i) {
    evidence.push_back(add_var("Evidence" + std::to_string(i + 1), Role::Evidence));
  }

  // Structure pass. Setting-factor roots may parent targets; targets parent
  // mediators; targets and mediators parent evidence, at least one each.
  std::vector<std::vector<std::uint32_t>> parents_of(net.size());
  auto pick_parents = [&](std::uint32_t child, std::span<const std::uint32_t> pool,
                          bool force_nonempty) {
    for (auto candidate : pool) {
      if (rng::uniform01(gen) < spec.edge_density) {
        parents_of[child].push_back(candidate);
      }
    }
    if (force_nonempty && parents_of[child].empty() && !pool.empty()) {
      parents_of[child].push_back(pool[rng::uniform_index(gen, pool.size())]);
    }
  };
  for (auto t : targets) pick_parents(t, roots, false);
  for (auto m : mediators) pick_parents(m, targets, false);
  std::vector<std::uint32_t> evidence_pool = targets;
  evidence_pool.insert(evidence_pool.end(), mediators.begin(), mediators.end());
  for (auto e : evidence) pick_parents(e, evidence_pool, true);

  // CPT pass: rows drawn uniformly from the simplex.
  for (std::uint32_t v = 0; v < net.size(); ++v) {
    Cpt cpt;
    cpt.child = v;
    cpt.parents = parents_of[v];
    std::size_t n_rows = 1;
    for (auto p : cpt.parents) n_rows *= net.card(p);
    cpt.rows.reserve(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
      cpt.rows.push_back(rng::simplex_sample(gen, spec.states_per_var));
    }
    net.cpts.push_back(std::move(cpt));
  }
  return net;
}

Network perturb_network(const Network& net, double strength, std::uint64_t seed) {
  if (!(strength >= 0.0 && strength <= 1.0)) {
    throw Error("perturbation strength must be in [0, 1]");
  }
  if (strength == 0.0) return net;

  std::mt19937_64 gen(seed);
  Network out = net;
  for (auto& cpt : out.cpts) {
    for (auto& row : cpt.rows) {
      auto fresh = rng::simplex_sample(gen, row.size());
      double sum = 0.0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        row[i] = (1.0 - strength) * row[i] + strength * fresh[i];
        sum += row[i];
      }
      if (sum > 0.0) {
        for (auto& v : row) v /= sum;
      }
    }
  }
  return out;
}

std::vector<LabeledCase> sample_cases(const MixtureWorld& world, std::size_t n,
                                      std::uint64_t seed) {
  if (world.base.variables != world.alternate.variables) {
    throw Error("mixture world components disagree on variables");
  }
  if (!(world.epsilon >= 0.0 && world.epsilon <= 1.0)) {
    throw Error("mixture epsilon must be in [0, 1]");
  }

  const auto topo_base = topological_order(world.base);
  const auto topo_alt = topological_order(world.alternate);
  const auto findings_vars = evidence_role_vars(world.base);

  std::mt19937_64 gen(seed);
  std::vector<LabeledCase> cases;
  cases.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool alternate = rng::uniform01(gen) < world.epsilon;
    const Network& net = alternate ? world.alternate : world.base;
    const auto& topo = alternate ? topo_alt : topo_base;
    auto digits = forward_sample(net, topo, gen);
    cases.push_back({findings_of(net, digits, findings_vars),
                     alternate ? CaseLabel::Alternate : CaseLabel::Base});
  }
  return cases;
}

ExperimentResult score_cases(const Network& base,
                             const std::vector<LabeledCase>& cases,
                             const std::set<StrawKind>& kinds, double threshold) {
  ExperimentResult result;
  result.n_cases = cases.size();

  EvidenceScorer score_given(base);
  for (StrawKind kind : kinds) {
    StrawModel straw = build_straw(base, kind);
    EvidenceScorer score_straw(straw.network);

    std::size_t n_base = 0, n_alt = 0, hits_base = 0, hits_alt = 0;
    for (const auto& c : cases) {
      auto index = conflict_index(score_straw(c.evidence), score_given(c.evidence));
      const bool detected =
          index.has_value() && *index > threshold + kVerdictTieBreak;
      if (c.label == CaseLabel::Alternate) {
        ++n_alt;
        hits_alt += detected;
      } else {
        ++n_base;
        hits_base += detected;
      }
    }
    KindRates rates;
    if (n_alt > 0) {
      rates.detection_rate = static_cast<double>(hits_alt) / static_cast<double>(n_alt);
    }
    if (n_base > 0) {
      rates.false_alarm_rate =
          static_cast<double>(hits_base) / static_cast<double>(n_base);
    }
    result.rates.emplace_back(kind, rates);
  }
  return result;
}

ExperimentResult run_detection_experiment(const NetSpec& spec, double strength,
                                          double epsilon, std::size_t n,
                                          std::uint64_t seed, double threshold) {
  Network base = generate_diagnostic_network(spec);
  MixtureWorld world{base, perturb_network(base, strength, rng::derive_seed(seed, 1)),
                     epsilon};
  auto cases = sample_cases(world, n, rng::derive_seed(seed, 2));
  ExperimentResult result = score_cases(
      base, cases, {StrawKind::Bipartite, StrawKind::Independent}, threshold);
  result.seed = seed;
  return result;
}

std::vector<ExceedanceRow> surprise_bound_check(const Network& net,
                                                StrawKind kind,
                                                std::span<const double> thresholds,
                                                std::size_t n,
                                                std::uint64_t seed) {
  StrawModel straw = build_straw(net, kind);
  EvidenceScorer score_given(net);
  EvidenceScorer score_straw(straw.network);

  const auto topo = topological_order(net);
  const auto findings_vars = evidence_role_vars(net);

  std::vector<std::size_t> exceed(thresholds.size(), 0);
  std::mt19937_64 gen(seed);
  for (std::size_t i = 0; i < n; ++i) {
    auto digits = forward_sample(net, topo, gen);
    Evidence e = findings_of(net, digits, findings_vars);
    auto index = conflict_index(score_straw(e), score_given(e));
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      if (index.has_value() && *index > thresholds[k]) ++exceed[k];
    }
  }

  std::vector<ExceedanceRow> rows;
  rows.reserve(thresholds.size());
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    rows.push_back({thresholds[k], std::exp2(-thresholds[k]),
                    n > 0 ? static_cast<double>(exceed[k]) / static_cast<double>(n)
                          : 0.0});
  }
  return rows;
}

std::string to_table(const ExperimentResult& result) {
  std::string out = "kind\tn\tdetection_rate\tfalse_alarm_rate\tseed\n";
  for (const auto& [kind, rates] : result.rates) {
    out += std::string(to_string(kind)) + "\t" + std::to_string(result.n_cases) +
           "\t" + (rates.detection_rate ? fixed6(*rates.detection_rate) : "-") +
           "\t" + (rates.false_alarm_rate ? fixed6(*rates.false_alarm_rate) : "-") +
           "\t" + std::to_string(result.seed) + "\n";
  }
  return out;
}

std::string to_table(StrawKind kind, std::span<const ExceedanceRow> rows,
                     std::size_t n, std::uint64_t seed) {
  std::string out;
  for (const auto& row : rows) {
    out += std::string(to_string(kind)) + "\t" + general(row.threshold) + "\t" +
           fixed6(row.bound) + "\t" + fixed6(row.fraction) + "\t" +
           std::to_string(n) + "\t" + std::to_string(seed) + "\n";
  }
  return out;
}

}  // namespace strawbn
