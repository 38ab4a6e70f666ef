#include <benchmark/benchmark.h>

#include "rzk/catalogue.hpp"
#include "rzk/generator.hpp"
#include "rzk/protocol.hpp"

namespace rzk {
namespace {

struct Fixture {
  Graph graph;
  Colouring colouring;
};

const Fixture& demo() {
  static const Fixture f{catalogue::demo(), catalogue::demo_colouring()};
  return f;
}

const Fixture& full_scale() {
  static const Fixture f = [] {
    std::vector<Graph> pool;
    for (const auto& s : catalogue::hardness_seeds()) pool.push_back(s.graph);
    Rng rng(7, Stream::kGraph);
    auto inst = generate_instance(pool, 588, rng);
    return Fixture{std::move(inst.graph), std::move(inst.colouring)};
  }();
  return f;
}

const Fixture& fixture(std::int64_t which) { return which == 0 ? demo() : full_scale(); }

void BM_ProverAnswer(benchmark::State& state) {
  const Fixture& f = fixture(state.range(0));
  HonestProver prover(make_prover_secret(f.graph, f.colouring, 1));
  Rng rng(2, Stream::kVerifier);
  std::vector<Challenge> pool;
  for (std::uint32_t n = 0; n < 4096; ++n) pool.push_back(sample_challenge_pair(f.graph, rng, n).left);
  std::uint32_t n = 0;
  for (auto _ : state) {
    Challenge ch = pool[n % pool.size()];
    ch.round = n++;
    benchmark::DoNotOptimize(prover.respond(ch));
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(std::to_string(f.graph.num_edges()) + " edges");
}

void BM_FullRound(benchmark::State& state) {
  const Fixture& f = fixture(state.range(0));
  HonestProver left(make_prover_secret(f.graph, f.colouring, 1));
  HonestProver right(make_prover_secret(f.graph, f.colouring, 1));
  constexpr std::uint64_t kBatch = 10'000;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SessionConfig cfg;
    cfg.seed = seed++;
    cfg.rounds = kBatch;
    benchmark::DoNotOptimize(run_session(f.graph, cfg, left, right));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kBatch));
  state.SetLabel(std::to_string(f.graph.num_edges()) + " edges");
}

void BM_ChallengeSampling(benchmark::State& state) {
  const Fixture& f = fixture(state.range(0));
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_challenge_pair(f.graph, rng));
  state.SetItemsProcessed(state.iterations());
}

BENCHMARK(BM_ProverAnswer)->Arg(0)->Arg(1);
BENCHMARK(BM_FullRound)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChallengeSampling)->Arg(0)->Arg(1);

}  // namespace
}  // namespace rzk

BENCHMARK_MAIN();
