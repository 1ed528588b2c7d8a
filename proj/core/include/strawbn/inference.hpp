#pragma once

#include <cstdint>
#include <vector>

#include "strawbn/factor.hpp"
#include "strawbn/network.hpp"

namespace strawbn {

/// Default cap on the total state space enumerated by brute_force_joint.
inline constexpr std::size_t kBruteForceCap = std::size_t{1} << 22;

/// Elimination order over `net`'s variables excluding `keep`, chosen by the
/// greedy min-fill heuristic on the moral graph. Deterministic: ties break
/// toward the smaller declaration index.
std::vector<std::uint32_t> elimination_order(const Network& net,
                                             std::span<const std::uint32_t> keep);

/// Exact probability of the evidence under the network's joint
/// distribution. Empty evidence yields 1 (up to rounding).
double prob_of_evidence(const Network& net, const Evidence& evidence);

/// As above but eliminating in the given order, which must be a permutation
/// of the non-evidence variables. Any valid order returns the same value.
double prob_of_evidence_with_order(const Network& net, const Evidence& evidence,
                                   std::span<const std::uint32_t> order);

/// Posterior distribution of one variable given the evidence, over the
/// variable's states in declaration order; sums to one. Throws
/// InferenceError if the evidence has probability zero and LookupError on
/// an unknown name.
std::vector<double> posterior_marginal(const Network& net,
                                       std::string_view variable,
                                       const Evidence& evidence);

/// Unnormalized joint P(keep = ., evidence): a factor whose scope is `keep`
/// sorted by declaration index. Entries sum to P(evidence).
Factor joint_with_evidence(const Network& net, std::span<const std::uint32_t> keep,
                           const Evidence& evidence);

/// Independent test oracle: P(evidence) by full enumeration of the
/// chain-rule joint. Throws InferenceError when the state space exceeds
/// `cap`.
double brute_force_joint(const Network& net, const Evidence& evidence,
                         std::size_t cap = kBruteForceCap);

}  // namespace strawbn
