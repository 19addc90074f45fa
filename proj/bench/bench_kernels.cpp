// Copyright 2026 The cmcheck Authors
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

// Serial vs OpenMP kernels. Run with --benchmark_filter=... as usual.

#include <benchmark/benchmark.h>

#include <random>

#include "cmcheck/certify.hpp"
#include "cmcheck/expr.hpp"
#include "cmcheck/family.hpp"
#include "cmcheck/quadrature.hpp"

namespace {

using cmcheck::ExecPolicy;

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial;
}

void BM_CertifyMixture(benchmark::State& state) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> uw(0, 1), ut(0, 10);
  std::vector<double> w(50), t(50);
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = uw(rng);
    t[i] = ut(rng);
  }
  const auto grid = cmcheck::CertGrid::log_spaced(0.01, 100, static_cast<int>(state.range(1)), 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cmcheck::laplace_probe(w, t, grid, policy_of(state)));
  }
  state.SetLabel(std::string(cmcheck::to_string(policy_of(state))));
}
BENCHMARK(BM_CertifyMixture)->ArgsProduct({{0, 1}, {64, 512}})->Unit(benchmark::kMillisecond);

void BM_CertifyExtended(benchmark::State& state) {
  const auto ev = cmcheck::expr_evaluator(cmcheck::parse("log(1 + x)/x"), {}, 256);
  const auto grid = cmcheck::CertGrid::log_spaced(0.01, 100, 64, 40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cmcheck::certify(cmcheck::ClassKind::CompletelyMonotonic, ev, grid, policy_of(state)));
  }
  state.SetLabel(std::string(cmcheck::to_string(policy_of(state))));
}
BENCHMARK(BM_CertifyExtended)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Quadrature(benchmark::State& state) {
  const cmcheck::FamilyParams p{};
  cmcheck::QuadOptions opt;
  opt.policy = policy_of(state);
  opt.abs_tol = 1e-13;
  const cmcheck::Integrand f = [&](double s, double l, double r) {
    return cmcheck::density_g(l, r, p) * std::exp(-3.0 * s);
  };
  for (auto _ : state) benchmark::DoNotOptimize(cmcheck::tanh_sinh(f, 0.0, 1.0, opt));
  state.SetLabel(std::string(cmcheck::to_string(policy_of(state))));
}
BENCHMARK(BM_Quadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
