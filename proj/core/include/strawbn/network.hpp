#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace strawbn {

/// Diagnostic role of a variable. Targets are the quantities of interest
/// (diseases), Evidence variables carry findings (symptoms), Other covers
/// everything else (setting factors, physiological states).
enum class Role { Target, Evidence, Other };

std::string_view to_string(Role role);
std::optional<Role> role_from_string(std::string_view text);

/// A discrete variable: a name, an ordered list of named states and a role.
struct Variable {
  std::string name;
  std::vector<std::string> states;
  Role role = Role::Other;

  std::uint32_t card() const { return static_cast<std::uint32_t>(states.size()); }
  std::optional<std::uint32_t> state_index(std::string_view state) const;

  bool operator==(const Variable&) const = default;
};

/// Conditional probability table of one variable given its parents.
///
/// Rows are indexed by parent configuration in row-major order with the
/// first listed parent varying slowest; each row is a distribution over the
/// child's states in declaration order. A root variable has no parents and
/// a single prior row.
struct Cpt {
  std::uint32_t child = 0;
  std::vector<std::uint32_t> parents;
  std::vector<std::vector<double>> rows;

  bool operator==(const Cpt&) const = default;
};

/// An annotated discrete Bayesian network. `cpts[i]` is the table of
/// `variables[i]`; parents are indices into `variables`. Instances are
/// treated as immutable once built and are safe to share between threads.
struct Network {
  std::string name;
  std::vector<Variable> variables;
  std::vector<Cpt> cpts;

  std::optional<std::uint32_t> index_of(std::string_view variable_name) const;
  const Variable& var(std::uint32_t index) const { return variables[index]; }
  std::uint32_t card(std::uint32_t index) const { return variables[index].card(); }
  std::size_t size() const { return variables.size(); }

  /// The CPT whose child is `index`. Throws StructuralError if absent.
  const Cpt& cpt_of(std::uint32_t index) const;

  bool operator==(const Network&) const = default;
};

/// A partial assignment of states to variables (the findings to score).
/// Kept sorted by variable name so iteration order is deterministic.
struct Evidence {
  std::map<std::string, std::string> assignments;

  bool empty() const { return assignments.empty(); }
  std::size_t size() const { return assignments.size(); }
  void set(std::string variable, std::string state) {
    assignments.insert_or_assign(std::move(variable), std::move(state));
  }

  bool operator==(const Evidence&) const = default;
  auto operator<=>(const Evidence&) const = default;
};

/// Evidence resolved to (variable index, state index) pairs against one
/// network, sorted by variable index.
using ResolvedEvidence = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Resolves names against `net`. Throws LookupError on an unknown variable
/// or a state that does not belong to it.
ResolvedEvidence resolve_evidence(const Network& net, const Evidence& evidence);

/// Number of joint configurations of variables with the given cardinalities.
std::size_t num_configs(std::span<const std::uint32_t> cards);

/// Row-major index of a configuration (first position slowest). `digits`
/// must assign a valid state index per position.
std::size_t config_to_index(std::span<const std::uint32_t> cards,
                            std::span<const std::uint32_t> digits);

/// Inverse of config_to_index.
std::vector<std::uint32_t> index_to_config(std::span<const std::uint32_t> cards,
                                           std::size_t index);

/// CPT row index of the parent configuration given by state names, in the
/// row-major convention above. Throws LookupError on an unknown state and
/// FactorError on a length mismatch.
std::size_t cpt_row_index(std::span<const Variable> parents,
                          std::span<const std::string> config);

/// Variables ordered so every parent precedes its children; ties broken by
/// declaration order. Throws StructuralError if the graph has a cycle or a
/// dangling parent reference.
std::vector<std::uint32_t> topological_order(const Network& net);

/// Copy of `net` with every CPT row rescaled to sum to one. Rows that sum
/// to zero are left untouched (validation will flag them).
Network renormalize_cpts(const Network& net);

}  // namespace strawbn
