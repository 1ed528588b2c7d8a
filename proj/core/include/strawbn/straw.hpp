#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strawbn/network.hpp"

namespace strawbn {

enum class StrawKind { Bipartite, Independent };

std::string_view to_string(StrawKind kind);

/// Indices within 1e-9 of zero count as zero when calling a verdict;
/// numerically identical models produce |c_s| at rounding-noise scale.
inline constexpr double kVerdictTieBreak = 1e-9;

/// Default cap on the number of target configurations a bipartite straw
/// model may require.
inline constexpr std::size_t kTargetConfigCap = 4096;

enum class Verdict { Conflict, NoConflict, Undefined };

std::string_view to_string(Verdict verdict);

/// A constructed straw model plus any warnings raised while building it
/// (currently: target configurations of probability zero, whose conditional
/// rows are filled uniformly).
struct StrawModel {
  Network network;
  std::vector<std::string> warnings;
};

/// Builds the bipartite straw model: only Target and Evidence variables
/// survive, every target becomes a root keeping its base-model marginal,
/// and every evidence variable gets all targets as parents with rows equal
/// to the base-model conditionals given each target configuration.
///
/// Throws StrawError when the network has no Target or no Evidence
/// variable, or when the number of target configurations exceeds the cap.
StrawModel build_bipartite_straw(const Network& net,
                                 std::size_t target_config_cap = kTargetConfigCap);

/// Builds the straw model in which every variable is independent and keeps
/// its base-model marginal.
StrawModel build_independent_straw(const Network& net);

StrawModel build_straw(const Network& net, StrawKind kind,
                       std::size_t target_config_cap = kTargetConfigCap);

/// The surprise index log2(p_straw / p_given). Returns +infinity when only
/// p_given is zero, -infinity when only p_straw is zero, and nullopt (the
/// undefined index) when both are zero.
std::optional<double> conflict_index(double p_straw, double p_given);

/// Verdict for an index value: Conflict above the tie-break threshold,
/// NoConflict otherwise, Undefined for the undefined index.
Verdict verdict_of(std::optional<double> index);

/// The independence-based conflict measure computed directly from the
/// per-finding marginals: log2(prod_i P(x_i) / P(x_1...x_n)). Must agree
/// with scoring the evidence under build_independent_straw; the two routes
/// are kept separate so tests can cross-check them.
std::optional<double> jensen_conf(const Network& net, const Evidence& evidence);

struct KindScore {
  double p_straw = 0.0;
  std::optional<double> index;
  Verdict verdict = Verdict::Undefined;

  bool operator==(const KindScore&) const = default;
};

struct ConflictReport {
  Evidence evidence;
  double p_given = 0.0;
  std::map<StrawKind, KindScore> scores;
  std::vector<std::string> warnings;
};

/// Scores the findings against each requested straw kind. Requires
/// nonempty evidence placed on Evidence-role variables only (the bipartite
/// straw has nothing else to say about them); throws StrawError otherwise.
ConflictReport conflict_report(const Network& net, const Evidence& evidence,
                               const std::set<StrawKind>& kinds,
                               std::size_t target_config_cap = kTargetConfigCap);

}  // namespace strawbn
