#include "strawbn/validate.hpp"

#include <cmath>
#include <set>
#include <string>

namespace strawbn {

std::string_view to_string(Violation::Kind kind) {
  using K = Violation::Kind;
  switch (kind) {
    case K::DuplicateVariable: return "duplicate-variable";
    case K::TooFewStates: return "too-few-states";
    case K::DuplicateState: return "duplicate-state";
    case K::MissingCpt: return "missing-cpt";
    case K::ExtraCpt: return "extra-cpt";
    case K::CptChildMismatch: return "cpt-child-mismatch";
    case K::DanglingParent: return "dangling-parent";
    case K::DuplicateParent: return "duplicate-parent";
    case K::Cycle: return "cycle";
    case K::BadRowCount: return "bad-row-count";
    case K::BadRowLength: return "bad-row-length";
    case K::EntryOutOfRange: return "entry-out-of-range";
    case K::BadRowSum: return "bad-row-sum";
  }
  return "unknown";
}

namespace {

bool has_cycle(const Network& net) {
  const std::size_t n = net.size();
  // Colors: 0 unvisited, 1 on stack, 2 done. Iterative DFS over parent
  // edges; out-of-range parents are skipped (reported separately).
  std::vector<int> color(n, 0);
  std::vector<std::vector<std::uint32_t>> children(n);
  for (const auto& cpt : net.cpts) {
    if (cpt.child >= n) continue;
    for (auto p : cpt.parents) {
      if (p < n) children[p].push_back(cpt.child);
    }
  }
  for (std::uint32_t root = 0; root < n; ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < children[v].size()) {
        std::uint32_t c = children[v][next++];
        if (color[c] == 1) return true;
        if (color[c] == 0) {
          color[c] = 1;
          stack.emplace_back(c, 0);
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

ValidationReport validate_network(const Network& net) {
  ValidationReport report;
  auto add = [&](Violation::Kind kind, const std::string& variable,
                 std::string message) {
    report.violations.push_back({kind, variable, std::move(message)});
  };

  std::set<std::string_view> seen_names;
  for (const auto& v : net.variables) {
    if (!seen_names.insert(v.name).second) {
      add(Violation::Kind::DuplicateVariable, v.name,
          "variable \"" + v.name + "\" is declared more than once");
    }
    if (v.states.size() < 2) {
      add(Violation::Kind::TooFewStates, v.name,
          "variable \"" + v.name + "\" has " + std::to_string(v.states.size()) +
              " states, need at least 2");
    }
    std::set<std::string_view> seen_states;
    for (const auto& s : v.states) {
      if (!seen_states.insert(s).second) {
        add(Violation::Kind::DuplicateState, v.name,
            "variable \"" + v.name + "\" repeats state \"" + s + "\"");
      }
    }
  }

  const std::size_t n = net.size();
  std::vector<int> cpt_count(n, 0);
  for (const auto& cpt : net.cpts) {
    if (cpt.child >= n) {
      add(Violation::Kind::CptChildMismatch, "",
          "CPT child index " + std::to_string(cpt.child) + " out of range");
      continue;
    }
    ++cpt_count[cpt.child];
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (cpt_count[i] == 0) {
      add(Violation::Kind::MissingCpt, net.var(i).name,
          "variable \"" + net.var(i).name + "\" has no CPT");
    } else if (cpt_count[i] > 1) {
      add(Violation::Kind::ExtraCpt, net.var(i).name,
          "variable \"" + net.var(i).name + "\" has more than one CPT");
    }
  }

  for (const auto& cpt : net.cpts) {
    if (cpt.child >= n) continue;
    const std::string& child_name = net.var(cpt.child).name;

    bool parents_ok = true;
    std::set<std::uint32_t> seen_parents;
    for (auto p : cpt.parents) {
      if (p >= n) {
        add(Violation::Kind::DanglingParent, child_name,
            "variable \"" + child_name + "\" references a missing parent");
        parents_ok = false;
        continue;
      }
      if (!seen_parents.insert(p).second) {
        add(Violation::Kind::DuplicateParent, child_name,
            "variable \"" + child_name + "\" lists parent \"" + net.var(p).name +
                "\" twice");
        parents_ok = false;
      }
    }

    if (parents_ok) {
      std::size_t expected_rows = 1;
      for (auto p : cpt.parents) expected_rows *= net.card(p);
      if (cpt.rows.size() != expected_rows) {
        add(Violation::Kind::BadRowCount, child_name,
            "CPT of \"" + child_name + "\" has " + std::to_string(cpt.rows.size()) +
                " rows, expected " + std::to_string(expected_rows));
      }
    }

    const std::size_t child_card = net.card(cpt.child);
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      const auto& row = cpt.rows[r];
      if (row.size() != child_card) {
        add(Violation::Kind::BadRowLength, child_name,
            "CPT of \"" + child_name + "\" row " + std::to_string(r) + " has " +
                std::to_string(row.size()) + " entries, expected " +
                std::to_string(child_card));
        continue;
      }
      double sum = 0.0;
      bool in_range = true;
      for (double p : row) {
        sum += p;
        if (!(p >= 0.0 && p <= 1.0)) in_range = false;
      }
      if (!in_range || !std::isfinite(sum)) {
        add(Violation::Kind::EntryOutOfRange, child_name,
            "CPT of \"" + child_name + "\" row " + std::to_string(r) +
                " has entries outside [0,1]");
      }
      if (std::isfinite(sum) && std::abs(sum - 1.0) > kRowSumTolerance) {
        add(Violation::Kind::BadRowSum, child_name,
            "CPT of \"" + child_name + "\" row " + std::to_string(r) +
                " sums to " + std::to_string(sum));
      }
    }
  }

  if (has_cycle(net)) {
    add(Violation::Kind::Cycle, "",
        "network \"" + net.name + "\" contains a directed cycle");
  }

  return report;
}

}  // namespace strawbn
