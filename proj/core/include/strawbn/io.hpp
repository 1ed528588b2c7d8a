#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "strawbn/network.hpp"

namespace strawbn {

/// Parses the network document format (see docs/network-format.md):
///
///   network "name" {
///     variable "Gender" {
///       role: other
///       states: "male", "female"
///       parents: ...            # omitted for roots
///       cpt {
///         row: 0.5, 0.5         # one row per parent configuration
///       }
///     }
///     ...
///   }
///
/// Rows follow the row-major convention: the first listed parent varies
/// slowest. Throws ParseError with the offending line (syntax) or variable
/// (semantics, e.g. an unknown parent). The returned network is not
/// guaranteed to pass validate_network; numeric checks stay there.
Network parse_network(std::string_view text);

/// Canonical text form: declaration order preserved, two-space indents,
/// probabilities in shortest round-trip notation. parse(serialize(net))
/// reproduces `net` exactly, and serializing twice yields identical bytes.
std::string serialize_network(const Network& net);

/// Parses findings: comma- or newline-separated `variable = state` pairs,
/// either bare words or quoted strings ("Breast Cancer" = yes). Validates
/// every pair against `net`; throws ParseError on unknown variables or
/// states and on duplicate assignments.
Evidence parse_findings(std::string_view text, const Network& net);

/// `value` with up to `digits` significant digits, the display precision
/// used by the command-line reports.
std::string format_sig(double value, int digits = 4);

Network load_network(const std::filesystem::path& path);
void save_network(const std::filesystem::path& path, const Network& net);

}  // namespace strawbn
