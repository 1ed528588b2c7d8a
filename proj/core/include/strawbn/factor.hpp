#pragma once

#include <cstdint>
#include <vector>

#include "strawbn/network.hpp"

namespace strawbn {

/// A nonnegative table over a subset of variables, the intermediate object
/// of all probability computations. `scope` holds variable ids (indices
/// into the owning network); `values` is row-major with the first scope
/// variable varying slowest, matching the CPT convention.
struct Factor {
  std::vector<std::uint32_t> scope;
  std::vector<std::uint32_t> cards;  // aligned with scope
  std::vector<double> values;

  static Factor scalar(double value) { return Factor{{}, {}, {value}}; }

  bool is_scalar() const { return scope.empty(); }
  bool has_var(std::uint32_t var) const;
  std::size_t size() const { return values.size(); }

  /// Value at one joint configuration, given as a state index per scope
  /// position.
  double at(std::span<const std::uint32_t> digits) const;
};

/// Pointwise product over the union of scopes (operands' shared variables
/// must agree on cardinality). The result scope keeps f's order followed by
/// g's variables not already present.
Factor factor_product(const Factor& f, const Factor& g);

/// Sums `var` out of the scope. Throws FactorError if absent.
Factor factor_marginalize(const Factor& f, std::uint32_t var);

/// Slice at `var = state`, dropping `var` from the scope. No
/// renormalization. Throws FactorError on an unknown variable or state.
Factor factor_reduce(const Factor& f, std::uint32_t var, std::uint32_t state);

/// Sum of all entries.
double factor_total(const Factor& f);

/// The CPT of `net.variables[var]` as a factor with scope
/// (parents..., var), which is exactly the flattened row layout.
Factor cpt_factor(const Network& net, std::uint32_t var);

}  // namespace strawbn
