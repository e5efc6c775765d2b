#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "morphan/analyzer.hpp"
#include "morphan/classifier.hpp"
#include "morphan/complexity.hpp"
#include "morphan/normalization.hpp"

using namespace morphan;

namespace {

MorphicSystem load(const std::string& name) {
  std::ifstream in(std::string(MORPHAN_FIXTURE_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

void BM_generate_prefix(benchmark::State& state) {
  MorphicSystem s = load("fix_a.morph");
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    ProvenancePrefix p = generate_prefix(s, n);
    benchmark::DoNotOptimize(p.size());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_generate_prefix)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);

void BM_suffix_automaton(benchmark::State& state) {
  MorphicSystem s = load("fix_a.morph");
  const std::int64_t n = state.range(0);
  Word beta = apply_coding(s, generate_prefix(s, n).text());
  beta.resize(static_cast<std::size_t>(n));
  for (auto _ : state) {
    SuffixAutomaton sam(beta);
    auto counts = sam.counts_up_to(2048);
    benchmark::DoNotOptimize(counts.back());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_suffix_automaton)->Arg(1 << 14)->Arg(1 << 17)->Arg(200000);

void BM_decompose_and_evolutions(benchmark::State& state) {
  auto [nsys, rep] = normalize(load("fix_e.morph"));
  auto profiles = letter_profiles(nsys);
  ProvenancePrefix pre = generate_prefix(nsys, state.range(0));
  for (auto _ : state) {
    PrefixAnalyzer an(nsys, profiles, pre);
    benchmark::DoNotOptimize(an.evolutions(2).size());
  }
}
BENCHMARK(BM_decompose_and_evolutions)->Arg(1 << 14)->Arg(1 << 16);

void BM_classify(benchmark::State& state) {
  MorphicSystem a = load("fix_a.morph");
  MorphicSystem b = load("fix_b.morph");
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(a).k_star);
    benchmark::DoNotOptimize(classify(b).k_star);
  }
}
BENCHMARK(BM_classify);

}  // namespace

BENCHMARK_MAIN();
