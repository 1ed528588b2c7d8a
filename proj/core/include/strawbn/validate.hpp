#pragma once

#include <string>
#include <vector>

#include "strawbn/network.hpp"

namespace strawbn {

/// Maximum |row sum - 1| accepted at validation. Rows are not silently
/// renormalized; see renormalize_cpts for the explicit opt-in.
inline constexpr double kRowSumTolerance = 1e-6;

struct Violation {
  enum class Kind {
    DuplicateVariable,
    TooFewStates,
    DuplicateState,
    MissingCpt,
    ExtraCpt,
    CptChildMismatch,
    DanglingParent,
    DuplicateParent,
    Cycle,
    BadRowCount,
    BadRowLength,
    EntryOutOfRange,
    BadRowSum,
  };

  Kind kind;
  std::string variable;  // offending variable, empty for network-level defects
  std::string message;

  bool operator==(const Violation&) const = default;
};

std::string_view to_string(Violation::Kind kind);

/// Violations are data, not failures: an empty report means the network is
/// well formed.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks every structural and numeric invariant: unique names, >=2 states,
/// one CPT per variable, resolvable parents, acyclicity, table dimensions,
/// entries in [0,1] and row sums within kRowSumTolerance of one.
ValidationReport validate_network(const Network& net);

}  // namespace strawbn
