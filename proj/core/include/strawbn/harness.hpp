#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strawbn/network.hpp"
#include "strawbn/straw.hpp"

namespace strawbn {

/// Parameters of a generated layered diagnostic network.
struct NetSpec {
  std::uint32_t n_target = 1;
  std::uint32_t n_evidence = 1;
  std::uint32_t n_other = 0;
  std::uint32_t states_per_var = 2;
  double edge_density = 0.5;
  std::uint64_t seed = 0;
};

/// A two-component world: the base model P^a, an alternate model P^o over
/// the same variables, and the probability epsilon that a case comes from
/// the alternate.
struct MixtureWorld {
  Network base;
  Network alternate;
  double epsilon = 0.0;
};

enum class CaseLabel { Base, Alternate };

/// One sampled case: the findings (full assignment to the Evidence-role
/// variables) plus which mixture component generated the underlying sample.
struct LabeledCase {
  Evidence evidence;
  CaseLabel label = CaseLabel::Base;
};

struct KindRates {
  std::optional<double> detection_rate;   // alternate cases flagged Conflict
  std::optional<double> false_alarm_rate; // base cases flagged Conflict
};

struct ExperimentResult {
  std::vector<std::pair<StrawKind, KindRates>> rates;
  std::size_t n_cases = 0;
  std::uint64_t seed = 0;
};

struct ExceedanceRow {
  double threshold = 0.0;  // K
  double bound = 0.0;      // 2^-K
  double fraction = 0.0;   // empirical share of samples with c_s > K
};

/// Generates a layered diagnostic network: Other-role roots may parent
/// targets, targets and mediator Others parent evidence, every evidence
/// variable has at least one parent, and CPT rows are drawn uniformly from
/// the probability simplex. Deterministic in the seed.
Network generate_diagnostic_network(const NetSpec& spec);

/// Mixes every CPT row with a fresh simplex sample:
/// (1-strength)*row + strength*fresh, renormalized. strength 0 returns the
/// input unchanged; strength 1 replaces the rows outright.
Network perturb_network(const Network& net, double strength, std::uint64_t seed);

/// Draws n cases: with probability epsilon the alternate model is chosen,
/// a full assignment is forward-sampled from the chosen model, and the
/// Evidence-role variables become the findings.
std::vector<LabeledCase> sample_cases(const MixtureWorld& world, std::size_t n,
                                      std::uint64_t seed);

/// Scores each case against the straw models built once from `base`; a case
/// counts as detected when its conflict index exceeds `threshold` (plus the
/// verdict tie-break). Rates are absent when a label has no cases.
ExperimentResult score_cases(const Network& base,
                             const std::vector<LabeledCase>& cases,
                             const std::set<StrawKind>& kinds,
                             double threshold = 0.0);

/// End-to-end comparison: generates the base network from `spec`, perturbs
/// it into the alternate, samples n mixture cases and scores them under
/// both straw kinds. Deterministic in the seed.
ExperimentResult run_detection_experiment(const NetSpec& spec, double strength,
                                          double epsilon, std::size_t n,
                                          std::uint64_t seed,
                                          double threshold = 0.0);

/// Samples n full evidence configurations from the network itself and
/// reports, for each K, the fraction with surprise index above K. Under the
/// surprise-index bound the expected fraction is at most 2^-K.
std::vector<ExceedanceRow> surprise_bound_check(const Network& net,
                                                StrawKind kind,
                                                std::span<const double> thresholds,
                                                std::size_t n,
                                                std::uint64_t seed);

/// Tab-separated table of an experiment result, one row per straw kind:
/// kind, n, detection_rate, false_alarm_rate, seed. Absent rates print "-".
std::string to_table(const ExperimentResult& result);

/// Tab-separated table of exceedance rows for one straw kind.
std::string to_table(StrawKind kind, std::span<const ExceedanceRow> rows,
                     std::size_t n, std::uint64_t seed);

}  // namespace strawbn
