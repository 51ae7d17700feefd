// Copyright 2026 The Chronodiag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference versus OpenMP kernel for each parallel hot spot.

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "chronodiag/atemporal.hpp"
#include "chronodiag/simulate.hpp"
#include "chronodiag/stochastic.hpp"
#include "chronodiag/temporal.hpp"

namespace chronodiag {
namespace {

std::vector<std::vector<double>> random_rows(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (auto& row : rows) {
    double s = 0.0;
    for (auto& x : row) s += (x = u(rng));
    for (auto& x : row) x /= s;
    double drift = 1.0;
    for (std::size_t j = 0; j + 1 < n; ++j) drift -= row[j];
    row[n - 1] = drift;
  }
  return rows;
}

// k components with m modes each; every mode of every component predicts one
// atom, so an observation over those atoms prunes the space.
SystemModel wide_model(std::size_t k, std::size_t m) {
  ModelDecl d;
  for (std::size_t c = 0; c < k; ++c) {
    ComponentDecl cd;
    cd.id = "c" + std::to_string(c);
    for (std::size_t i = 0; i < m; ++i) cd.modes.push_back("m" + std::to_string(i));
    cd.correct_mode = cd.modes.back();
    cd.matrix = random_rows(m, c);
    d.components.push_back(cd);
    for (std::size_t i = 0; i < m; ++i) {
      d.rules.push_back({{{cd.id, cd.modes[i]}}, "obs_" + cd.id + "_" + std::to_string(i % 2)});
    }
  }
  return validate_model(d);
}

void BM_MultiplySerial(benchmark::State& state) {
  const auto p = validate_matrix(random_rows(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(multiply_serial(p, p));
}
void BM_MultiplyParallel(benchmark::State& state) {
  const auto p = validate_matrix(random_rows(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(multiply(p, p));
}
BENCHMARK(BM_MultiplySerial)->Arg(64)->Arg(256);
BENCHMARK(BM_MultiplyParallel)->Arg(64)->Arg(256);

void BM_AtemporalSerial(benchmark::State& state) {
  const SystemModel m = wide_model(static_cast<std::size_t>(state.range(0)), 4);
  const Observation obs{0, {}, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_atemporal_serial(m, obs, ExplanationCriterion::ConsistencyBased));
  }
}
void BM_AtemporalParallel(benchmark::State& state) {
  const SystemModel m = wide_model(static_cast<std::size_t>(state.range(0)), 4);
  const Observation obs{0, {}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(solve_atemporal(m, obs, ExplanationCriterion::ConsistencyBased));
}
BENCHMARK(BM_AtemporalSerial)->Arg(6)->Arg(8);
BENCHMARK(BM_AtemporalParallel)->Arg(6)->Arg(8);

std::vector<ModeAssignment> full_layer(const SystemModel& m, TimePoint t) {
  return solve_atemporal_serial(m, Observation{t, {}, {}}, ExplanationCriterion::ConsistencyBased);
}

void BM_StepTableSerial(benchmark::State& state) {
  const SystemModel m = wide_model(static_cast<std::size_t>(state.range(0)), 4);
  const auto a = full_layer(m, 0), b = full_layer(m, 3);
  for (auto _ : state) benchmark::DoNotOptimize(step_table_serial(m, a, b));
}
void BM_StepTableParallel(benchmark::State& state) {
  const SystemModel m = wide_model(static_cast<std::size_t>(state.range(0)), 4);
  const auto a = full_layer(m, 0), b = full_layer(m, 3);
  for (auto _ : state) benchmark::DoNotOptimize(step_table(m, a, b));
}
BENCHMARK(BM_StepTableSerial)->Arg(3)->Arg(4);
BENCHMARK(BM_StepTableParallel)->Arg(3)->Arg(4);

InitialDistributions uniform_initials(const SystemModel& m) {
  InitialDistributions out;
  for (const auto& c : m.components()) out.push_back(ModeDistribution::uniform(c.modes.size()));
  return out;
}

void BM_SampleSerial(benchmark::State& state) {
  const SystemModel m = wide_model(4, 5);
  const auto init = uniform_initials(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_trajectories_serial(m, init, 20, 0, static_cast<std::size_t>(state.range(0))));
  }
}
void BM_SampleParallel(benchmark::State& state) {
  const SystemModel m = wide_model(4, 5);
  const auto init = uniform_initials(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_trajectories(m, init, 20, 0, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_SampleSerial)->Arg(10000);
BENCHMARK(BM_SampleParallel)->Arg(10000);

}  // namespace
}  // namespace chronodiag

BENCHMARK_MAIN();
