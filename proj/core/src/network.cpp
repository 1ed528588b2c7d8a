#include "strawbn/network.hpp"

#include <algorithm>
#include <queue>

#include "strawbn/errors.hpp"

namespace strawbn {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Target: return "target";
    case Role::Evidence: return "evidence";
    case Role::Other: return "other";
  }
  return "other";
}

std::optional<Role> role_from_string(std::string_view text) {
  if (text == "target") return Role::Target;
  if (text == "evidence") return Role::Evidence;
  if (text == "other") return Role::Other;
  return std::nullopt;
}

std::optional<std::uint32_t> Variable::state_index(std::string_view state) const {
  for (std::uint32_t i = 0; i < states.size(); ++i) {
    if (states[i] == state) return i;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> Network::index_of(std::string_view variable_name) const {
  for (std::uint32_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == variable_name) return i;
  }
  return std::nullopt;
}

const Cpt& Network::cpt_of(std::uint32_t index) const {
  if (index < cpts.size() && cpts[index].child == index) return cpts[index];
  for (const auto& cpt : cpts) {
    if (cpt.child == index) return cpt;
  }
  throw StructuralError("variable \"" + var(index).name + "\" has no CPT");
}

ResolvedEvidence resolve_evidence(const Network& net, const Evidence& evidence) {
  ResolvedEvidence resolved;
  resolved.reserve(evidence.size());
  for (const auto& [name, state] : evidence.assignments) {
    auto vi = net.index_of(name);
    if (!vi) throw LookupError("unknown variable \"" + name + "\"");
    auto si = net.var(*vi).state_index(state);
    if (!si) {
      throw LookupError("variable \"" + name + "\" has no state \"" + state + "\"");
    }
    resolved.emplace_back(*vi, *si);
  }
  std::sort(resolved.begin(), resolved.end());
  return resolved;
}

std::size_t num_configs(std::span<const std::uint32_t> cards) {
  std::size_t n = 1;
  for (auto c : cards) n *= c;
  return n;
}

std::size_t config_to_index(std::span<const std::uint32_t> cards,
                            std::span<const std::uint32_t> digits) {
  if (cards.size() != digits.size()) {
    throw FactorError("configuration length does not match variable count");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    if (digits[i] >= cards[i]) throw FactorError("state index out of range");
    index = index * cards[i] + digits[i];
  }
  return index;
}

std::vector<std::uint32_t> index_to_config(std::span<const std::uint32_t> cards,
                                           std::size_t index) {
  std::vector<std::uint32_t> digits(cards.size(), 0);
  for (std::size_t i = cards.size(); i-- > 0;) {
    digits[i] = static_cast<std::uint32_t>(index % cards[i]);
    index /= cards[i];
  }
  if (index != 0) throw FactorError("configuration index out of range");
  return digits;
}

std::size_t cpt_row_index(std::span<const Variable> parents,
                          std::span<const std::string> config) {
  if (parents.size() != config.size()) {
    throw FactorError("configuration assigns " + std::to_string(config.size()) +
                      " states to " + std::to_string(parents.size()) + " parents");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    auto si = parents[i].state_index(config[i]);
    if (!si) {
      throw LookupError("variable \"" + parents[i].name + "\" has no state \"" +
                        config[i] + "\"");
    }
    index = index * parents[i].card() + *si;
  }
  return index;
}

std::vector<std::uint32_t> topological_order(const Network& net) {
  const std::size_t n = net.size();
  std::vector<std::uint32_t> indegree(n, 0);
  std::vector<std::vector<std::uint32_t>> children(n);
  for (const auto& cpt : net.cpts) {
    if (cpt.child >= n) throw StructuralError("CPT child index out of range");
    for (auto p : cpt.parents) {
      if (p >= n) {
        throw StructuralError("dangling parent reference in CPT of \"" +
                              net.var(cpt.child).name + "\"");
      }
      children[p].push_back(cpt.child);
      ++indegree[cpt.child];
    }
  }

  // Kahn's algorithm; the min-heap on declaration index makes ties
  // deterministic.
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::uint32_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::uint32_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (auto c : children[v]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (order.size() != n) {
    throw StructuralError("network \"" + net.name + "\" contains a cycle");
  }
  return order;
}

Network renormalize_cpts(const Network& net) {
  Network out = net;
  for (auto& cpt : out.cpts) {
    for (auto& row : cpt.rows) {
      double sum = 0.0;
      for (double v : row) sum += v;
      if (sum > 0.0) {
        for (double& v : row) v /= sum;
      }
    }
  }
  return out;
}

}  // namespace strawbn
