#pragma once

#include <string>

#include "strawbn/network.hpp"

namespace strawbn::testutil {

// Directory holding the bundled corpus (set by the build).
inline std::string data_dir() { return STRAWBN_DATA_DIR; }

// Expected values for the liver/breast-cancer corpus, frozen from an
// independent full-joint enumeration of its tables. The corpus reference figures
// round these to three digits (0.252, 0.365, 0.247, 0.0452, 0.0619,
// 0.0388, 0.0551, 0.0227).
inline constexpr double kPBreastCancerYes = 0.224;
inline constexpr double kPLiverCancerYes = 0.2184;
inline constexpr double kPPalpationYes = 0.2516;
inline constexpr double kPXrayYes = 0.36494;
inline constexpr double kPDiabetesYes = 0.24656;
inline constexpr double kPGivenPalpDiab = 0.045169;
inline constexpr double kPStrawPalpDiab = 0.062034496;
inline constexpr double kPGivenTriple = 0.03884105;
inline constexpr double kPStrawTriple = 0.0551131304;
inline constexpr double kPIndependentTriple = 0.02263886897024;
inline constexpr double kJensenConfTriple = -0.7787803185825756;

// The cancer corpus built in code; must stay byte-for-byte in sync with
// data/cancer.net (the io tests enforce that).
inline Network cancer_network() {
  Network net;
  net.name = "cancer";

  auto add = [&net](std::string name, Role role,
                    std::vector<std::string> states) {
    net.variables.push_back({std::move(name), std::move(states), role});
    return static_cast<std::uint32_t>(net.variables.size() - 1);
  };
  const auto gender = add("Gender", Role::Other, {"male", "female"});
  const auto age = add("Age", Role::Other, {"below30", "above30"});
  const auto alcohol = add("Alcohol", Role::Other, {"yes", "no"});
  const auto bc = add("Breast Cancer", Role::Target, {"yes", "no"});
  const auto lc = add("Liver Cancer", Role::Target, {"yes", "no"});
  add("Palpation", Role::Evidence, {"yes", "no"});
  add("X-ray", Role::Evidence, {"yes", "no"});
  add("Diabetes", Role::Evidence, {"yes", "no"});

  net.cpts = {
      {0, {}, {{0.5, 0.5}}},
      {1, {}, {{0.2, 0.8}}},
      {2, {gender}, {{0.95, 0.05}, {0.1, 0.9}}},
      {3, {gender, age}, {{0, 1}, {0.01, 0.99}, {0.2, 0.8}, {0.5, 0.5}}},
      {4, {alcohol, age}, {{0.1, 0.9}, {0.4, 0.6}, {0.02, 0.98}, {0.1, 0.9}}},
      {5, {bc}, {{0.95, 0.05}, {0.05, 0.95}}},
      {6, {bc, lc}, {{0.95, 0.05}, {0.8, 0.2}, {0.8, 0.2}, {0.05, 0.95}}},
      {7, {lc}, {{0.95, 0.05}, {0.05, 0.95}}},
  };
  return net;
}

inline Evidence evidence_of(
    std::initializer_list<std::pair<std::string, std::string>> pairs) {
  Evidence e;
  for (const auto& [name, state] : pairs) e.set(name, state);
  return e;
}

}  // namespace strawbn::testutil
