#include "strawbn/inference.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "strawbn/errors.hpp"

namespace strawbn {

namespace {

// One factor per CPT with the evidence sliced in. Observed variables do not
// appear in any scope afterwards.
std::vector<Factor> evidence_reduced_factors(const Network& net,
                                             const ResolvedEvidence& resolved) {
  std::vector<Factor> factors;
  factors.reserve(net.cpts.size());
  for (const auto& cpt : net.cpts) {
    Factor f = cpt_factor(net, cpt.child);
    for (const auto& [var, state] : resolved) {
      if (f.has_var(var)) f = factor_reduce(f, var, state);
    }
    factors.push_back(std::move(f));
  }
  return factors;
}

// Multiplies out the factors containing `var`, sums `var` away and puts the
// result back. Factors are consumed in place.
void eliminate_variable(std::vector<Factor>& factors, std::uint32_t var) {
  Factor combined = Factor::scalar(1.0);
  bool found = false;
  for (std::size_t i = 0; i < factors.size();) {
    if (factors[i].has_var(var)) {
      combined = found ? factor_product(combined, factors[i])
                       : std::move(factors[i]);
      found = true;
      factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (found) factors.push_back(factor_marginalize(combined, var));
}

Factor multiply_all(const std::vector<Factor>& factors) {
  Factor result = Factor::scalar(1.0);
  for (const auto& f : factors) result = factor_product(result, f);
  return result;
}

std::vector<std::uint32_t> evidence_vars(const ResolvedEvidence& resolved) {
  std::vector<std::uint32_t> vars;
  vars.reserve(resolved.size());
  for (const auto& [var, state] : resolved) vars.push_back(var);
  return vars;
}

}  // namespace

std::vector<std::uint32_t> elimination_order(const Network& net,
                                             std::span<const std::uint32_t> keep) {
  const std::size_t n = net.size();
  std::vector<char> kept(n, 0);
  for (auto k : keep) {
    if (k >= n) throw LookupError("keep set references a missing variable");
    kept[k] = 1;
  }

  // Moral graph: each CPT's scope (child plus parents) forms a clique.
  std::vector<std::set<std::uint32_t>> adj(n);
  for (const auto& cpt : net.cpts) {
    std::vector<std::uint32_t> scope(cpt.parents.begin(), cpt.parents.end());
    scope.push_back(cpt.child);
    for (std::size_t i = 0; i < scope.size(); ++i) {
      for (std::size_t j = i + 1; j < scope.size(); ++j) {
        adj[scope[i]].insert(scope[j]);
        adj[scope[j]].insert(scope[i]);
      }
    }
  }

  std::vector<char> eliminated(n, 0);
  std::vector<std::uint32_t> order;
  std::size_t to_eliminate = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!kept[v]) ++to_eliminate;
  }
  order.reserve(to_eliminate);

  auto fill_count = [&](std::uint32_t v) {
    std::size_t fill = 0;
    std::vector<std::uint32_t> nb(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (!adj[nb[i]].contains(nb[j])) ++fill;
      }
    }
    return fill;
  };

  while (order.size() < to_eliminate) {
    std::uint32_t best = 0;
    std::size_t best_fill = 0;
    bool have_best = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (kept[v] || eliminated[v]) continue;
      std::size_t fill = fill_count(v);
      if (!have_best || fill < best_fill) {
        best = v;
        best_fill = fill;
        have_best = true;
      }
    }
    // Connect the eliminated variable's neighbors pairwise and remove it.
    std::vector<std::uint32_t> nb(adj[best].begin(), adj[best].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    }
    for (auto u : nb) adj[u].erase(best);
    adj[best].clear();
    eliminated[best] = 1;
    order.push_back(best);
  }
  return order;
}

double prob_of_evidence(const Network& net, const Evidence& evidence) {
  ResolvedEvidence resolved = resolve_evidence(net, evidence);
  auto order = elimination_order(net, evidence_vars(resolved));
  return prob_of_evidence_with_order(net, evidence, order);
}

double prob_of_evidence_with_order(const Network& net, const Evidence& evidence,
                                   std::span<const std::uint32_t> order) {
  ResolvedEvidence resolved = resolve_evidence(net, evidence);
  std::vector<Factor> factors = evidence_reduced_factors(net, resolved);
  for (auto v : order) eliminate_variable(factors, v);
  Factor result = multiply_all(factors);
  if (!result.is_scalar()) {
    throw InferenceError("elimination order does not cover all variables");
  }
  return result.values[0];
}

std::vector<double> posterior_marginal(const Network& net,
                                       std::string_view variable,
                                       const Evidence& evidence) {
  auto vi = net.index_of(variable);
  if (!vi) throw LookupError("unknown variable \"" + std::string(variable) + "\"");

  ResolvedEvidence resolved = resolve_evidence(net, evidence);
  for (const auto& [var, state] : resolved) {
    if (var == *vi) {
      // Observed query variable: the posterior is degenerate at the
      // observed state, provided the evidence is possible at all.
      double p = prob_of_evidence(net, evidence);
      if (p == 0.0) {
        throw InferenceError("evidence has probability zero");
      }
      std::vector<double> result(net.card(*vi), 0.0);
      result[state] = 1.0;
      return result;
    }
  }

  Factor joint = joint_with_evidence(net, std::array{*vi}, evidence);
  double z = factor_total(joint);
  if (z == 0.0) throw InferenceError("evidence has probability zero");
  std::vector<double> result(joint.values);
  for (double& v : result) v /= z;
  return result;
}

Factor joint_with_evidence(const Network& net, std::span<const std::uint32_t> keep,
                           const Evidence& evidence) {
  ResolvedEvidence resolved = resolve_evidence(net, evidence);
  std::vector<std::uint32_t> keep_all(keep.begin(), keep.end());
  std::sort(keep_all.begin(), keep_all.end());
  keep_all.erase(std::unique(keep_all.begin(), keep_all.end()), keep_all.end());

  std::vector<std::uint32_t> keep_and_evidence = keep_all;
  for (const auto& [var, state] : resolved) keep_and_evidence.push_back(var);

  auto order = elimination_order(net, keep_and_evidence);
  std::vector<Factor> factors = evidence_reduced_factors(net, resolved);
  for (auto v : order) eliminate_variable(factors, v);
  Factor result = multiply_all(factors);

  // Normalize the scope order to `keep_all` (sorted by declaration index).
  // A kept variable observed as evidence was reduced away; reintroducing it
  // is not supported here, so require disjointness.
  for (auto k : keep_all) {
    if (!result.has_var(k)) {
      throw InferenceError("kept variable \"" + net.var(k).name +
                           "\" was observed as evidence");
    }
  }
  Factor ordered;
  ordered.scope = keep_all;
  for (auto k : keep_all) ordered.cards.push_back(net.card(k));
  ordered.values.resize(num_configs(ordered.cards));

  std::vector<std::size_t> src_pos(result.scope.size(), 0);
  for (std::size_t i = 0; i < result.scope.size(); ++i) {
    auto it = std::find(keep_all.begin(), keep_all.end(), result.scope[i]);
    src_pos[i] = static_cast<std::size_t>(it - keep_all.begin());
  }
  std::vector<std::uint32_t> digits(ordered.scope.size(), 0);
  std::vector<std::uint32_t> src_digits(result.scope.size(), 0);
  for (std::size_t o = 0; o < ordered.values.size(); ++o) {
    for (std::size_t i = 0; i < result.scope.size(); ++i) {
      src_digits[i] = digits[src_pos[i]];
    }
    ordered.values[o] = result.at(src_digits);
    for (std::size_t k = ordered.scope.size(); k-- > 0;) {
      if (++digits[k] < ordered.cards[k]) break;
      digits[k] = 0;
    }
  }
  return ordered;
}

double brute_force_joint(const Network& net, const Evidence& evidence,
                         std::size_t cap) {
  ResolvedEvidence resolved = resolve_evidence(net, evidence);
  const std::size_t n = net.size();

  std::size_t space = 1;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (net.card(v) == 0) return 0.0;
    if (space > cap / net.card(v)) {
      throw InferenceError("state space exceeds enumeration cap of " +
                           std::to_string(cap));
    }
    space *= net.card(v);
  }

  std::vector<std::int64_t> fixed(n, -1);
  for (const auto& [var, state] : resolved) fixed[var] = state;

  // Enumerate free variables only; evidence digits stay pinned.
  std::vector<std::uint32_t> free_vars;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (fixed[v] < 0) free_vars.push_back(v);
  }

  std::vector<std::uint32_t> digits(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (fixed[v] >= 0) digits[v] = static_cast<std::uint32_t>(fixed[v]);
  }

  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (std::uint32_t v = 0; v < n && w != 0.0; ++v) {
      const Cpt& cpt = net.cpt_of(v);
      std::size_t row = 0;
      for (auto p : cpt.parents) row = row * net.card(p) + digits[p];
      w *= cpt.rows[row][digits[v]];
    }
    total += w;

    std::size_t k = free_vars.size();
    while (k-- > 0) {
      std::uint32_t v = free_vars[k];
      if (++digits[v] < net.card(v)) break;
      digits[v] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return total;
}

}  // namespace strawbn
