#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "mdi/declarations.hpp"
#include "mdi/encoder.hpp"
#include "mdi/hierarchy.hpp"
#include "mdi/oracle.hpp"
#include "mdi/systemic.hpp"
#include "mdi/unify.hpp"

namespace {

using namespace mdi;

std::string read(const char* name) {
  std::ifstream in(std::string(MDI_BENCH_DATA) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const Hierarchy& hpsg() {
  static const Hierarchy h = Hierarchy::build(parse_declarations(read("hpsg.decl")));
  return h;
}

const Hierarchy& pronoun() {
  static const Hierarchy h = network_hierarchy(parse_network(read("pronoun.sysnet")));
  return h;
}

void BM_Compile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(EncodingTable::compile(pronoun()));
}
BENCHMARK(BM_Compile);

void BM_UnifyTemplates(benchmark::State& state) {
  const Hierarchy& h = hpsg();
  auto tab = EncodingTable::compile(h);
  Term a = tab.instantiate(h.id("h_su"));
  Term b = tab.instantiate(h.id("wh_rel"));
  for (auto _ : state) benchmark::DoNotOptimize(unify(a, b));
}
BENCHMARK(BM_UnifyTemplates);

void BM_EncodeConjunction(benchmark::State& state) {
  const Hierarchy& h = pronoun();
  auto tab = EncodingTable::compile(h);
  TypeConj c = parse_conj(h, "third & singular & possessive & feminine");
  for (auto _ : state) benchmark::DoNotOptimize(encode(tab, c));
}
BENCHMARK(BM_EncodeConjunction);

void BM_Conjoin(benchmark::State& state) {
  const Hierarchy& h = pronoun();
  TypeConj a = parse_conj(h, "third & possessive");
  TypeConj b = parse_conj(h, "singular & feminine");
  for (auto _ : state) benchmark::DoNotOptimize(conjoin(h, a, b));
}
BENCHMARK(BM_Conjoin);

// Finite-domain baseline: rule out possibilities one by one.
void BM_BruteForceExclude(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    std::optional<FiniteDomain> fd = bruteforce_encode(n);
    for (std::size_t k = 1; k < n; ++k) fd = fd->exclude(k);
    benchmark::DoNotOptimize(fd);
  }
}
BENCHMARK(BM_BruteForceExclude)->Arg(54);

void BM_CountPossibilities(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_possibilities(pronoun()));
}
BENCHMARK(BM_CountPossibilities);

void BM_Faithfulness(benchmark::State& state) {
  const Hierarchy& h = hpsg();
  auto tab = EncodingTable::compile(h);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::check_faithfulness(h, tab));
}
BENCHMARK(BM_Faithfulness);

}  // namespace

BENCHMARK_MAIN();
