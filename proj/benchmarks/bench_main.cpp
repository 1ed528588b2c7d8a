#include <benchmark/benchmark.h>

#include "strawbn/harness.hpp"
#include "strawbn/inference.hpp"
#include "strawbn/io.hpp"
#include "strawbn/straw.hpp"

using namespace strawbn;

namespace {

Network corpus() {
  return load_network(std::string(STRAWBN_DATA_DIR) + "/cancer.net");
}

Network sized_net(std::uint32_t n_other, std::uint32_t states) {
  NetSpec spec{3, 4, n_other, states, 0.5, 1234};
  return generate_diagnostic_network(spec);
}

void BM_FactorProduct(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  Factor f, g;
  for (std::uint32_t i = 0; i < n; ++i) {
    f.scope.push_back(i);
    f.cards.push_back(2);
    g.scope.push_back(i + n / 2);  // half-overlapping scopes
    g.cards.push_back(2);
  }
  f.values.assign(num_configs(f.cards), 0.5);
  g.values.assign(num_configs(g.cards), 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(factor_product(f, g));
  }
}
BENCHMARK(BM_FactorProduct)->Arg(4)->Arg(8)->Arg(12);

void BM_ProbOfEvidenceCorpus(benchmark::State& state) {
  auto net = corpus();
  Evidence e;
  e.set("Palpation", "yes");
  e.set("Diabetes", "yes");
  for (auto _ : state) {
    benchmark::DoNotOptimize(prob_of_evidence(net, e));
  }
}
BENCHMARK(BM_ProbOfEvidenceCorpus);

void BM_ProbOfEvidenceGenerated(benchmark::State& state) {
  auto net = sized_net(static_cast<std::uint32_t>(state.range(0)), 2);
  Evidence e;
  for (const auto& v : net.variables) {
    if (v.role == Role::Evidence) e.set(v.name, v.states[0]);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(prob_of_evidence(net, e));
  }
}
BENCHMARK(BM_ProbOfEvidenceGenerated)->Arg(4)->Arg(8)->Arg(12);

void BM_BruteForceGenerated(benchmark::State& state) {
  auto net = sized_net(static_cast<std::uint32_t>(state.range(0)), 2);
  Evidence e;
  for (const auto& v : net.variables) {
    if (v.role == Role::Evidence) e.set(v.name, v.states[0]);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_joint(net, e));
  }
}
BENCHMARK(BM_BruteForceGenerated)->Arg(4)->Arg(8)->Arg(12);

void BM_BuildBipartiteStraw(benchmark::State& state) {
  auto net = sized_net(static_cast<std::uint32_t>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_bipartite_straw(net));
  }
}
BENCHMARK(BM_BuildBipartiteStraw)->Arg(2)->Arg(6);

void BM_SurpriseBoundCheck(benchmark::State& state) {
  auto net = corpus();
  const std::array<double, 4> ks{1.0, 2.0, 3.0, 4.0};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        surprise_bound_check(net, StrawKind::Bipartite, ks, n, 9));
  }
}
BENCHMARK(BM_SurpriseBoundCheck)->Arg(1000)->Arg(10000);

void BM_ParseCorpus(benchmark::State& state) {
  auto text = serialize_network(corpus());
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_network(text));
  }
}
BENCHMARK(BM_ParseCorpus);

}  // namespace

BENCHMARK_MAIN();
