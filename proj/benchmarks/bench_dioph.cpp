// Copyright 2026 The dioph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "dioph/pipeline.hpp"

namespace {

using dioph::seq::BinaryRecurrence;
using dioph::seq::RecurrencePair;
namespace lin = dioph::lin;
namespace pipe = dioph::pipe;
namespace real = dioph::real;
namespace red = dioph::red;

const mpz_class kLemmaM("30000000000000000000000000000000");

void BM_PellTerms(benchmark::State& state) {
  const BinaryRecurrence pell = BinaryRecurrence::pell();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pell.terms(n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PellTerms)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_ExpandTau(benchmark::State& state) {
  const real::Expr tau = red::pair_tau(RecurrencePair::fpp());
  const auto terms = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(red::expand(tau, 6 * kLemmaM, terms));
}
BENCHMARK(BM_ExpandTau)->Arg(80)->Arg(115)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SecondFormFamily(benchmark::State& state) {
  const RecurrencePair pair = RecurrencePair::ffp();
  const lin::MBound mb = lin::stage1_m_bound(pair);
  const lin::LinearFormStage stage = lin::build_stage(lin::StageKind::kSecond, pair, mb.a1_coefficient);
  const red::ConvergentTable table = red::expand(red::pair_tau(pair), 6 * kLemmaM, 115);
  const red::ReductionInstance base =
      red::gamma_to_lemma_form(stage, pair, red::Sign::kPositive, kLemmaM, 1);
  const auto members = red::family_members(stage, pair, red::Sign::kPositive, state.range(0));
  red::ReducePolicy policy;
  policy.start_index = 74;
  for (auto _ : state) benchmark::DoNotOptimize(red::reduce_family(base, members, table, policy));
}
BENCHMARK(BM_SecondFormFamily)->Arg(10)->Arg(91)->Unit(benchmark::kMillisecond);

void BM_Search(benchmark::State& state) {
  const RecurrencePair pair = RecurrencePair::fpp();
  const long n_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(pipe::search(pair, 4 * n_max, n_max));
}
BENCHMARK(BM_Search)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_VerifyTheorem(benchmark::State& state) {
  const pipe::PipelineConfig config = pipe::builtin_config(state.range(0) == 0 ? "fpp" : "ffp");
  for (auto _ : state) benchmark::DoNotOptimize(pipe::verify_theorem(config));
}
BENCHMARK(BM_VerifyTheorem)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
