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

#include "chronodiag/simulate.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "chronodiag/error.hpp"

namespace chronodiag {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t draw(std::span<const double> p, std::mt19937_64& rng) {
  const double u = uniform53(rng);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last_positive = i;
    cumulative += p[i];
    if (u < cumulative) return i;
  }
  // Rows summing to slightly less than 1.
  return last_positive;
}

void check_initials(const SystemModel& model, const InitialDistributions& initials) {
  if (initials.size() != model.component_count()) {
    throw Error(ErrorCode::MissingInitialDistribution, "initial distributions",
                "expected one distribution per component");
  }
  for (std::size_t c = 0; c < initials.size(); ++c) {
    if (initials[c].size() != model.component(c).modes.size()) {
      throw Error(ErrorCode::DimensionMismatch, "component " + model.component(c).id,
                  "initial distribution does not match the mode count");
    }
  }
}

}  // namespace

ModeAssignment SampledTrajectory::at(TimePoint t) const {
  ModeAssignment w;
  w.t = t;
  w.modes.reserve(modes.size());
  for (const auto& seq : modes) w.modes.push_back(seq.at(t));
  return w;
}

SampledTrajectory sample_trajectory(const SystemModel& model, const InitialDistributions& initials,
                                    std::uint64_t horizon, std::uint64_t seed) {
  check_initials(model, initials);
  auto rng = make_engine(seed);
  SampledTrajectory out;
  out.seed = seed;
  out.modes.resize(model.component_count());
  for (std::size_t c = 0; c < model.component_count(); ++c) {
    out.modes[c].reserve(horizon + 1);
    out.modes[c].push_back(draw(initials[c].probabilities(), rng));
  }
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    for (std::size_t c = 0; c < model.component_count(); ++c) {
      const std::size_t current = out.modes[c].back();
      out.modes[c].push_back(draw(model.component(c).matrix.row(current), rng));
    }
  }
  return out;
}

std::vector<SampledTrajectory> sample_trajectories_serial(const SystemModel& model,
                                                          const InitialDistributions& initials,
                                                          std::uint64_t horizon,
                                                          std::uint64_t first_seed,
                                                          std::size_t count) {
  std::vector<SampledTrajectory> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(sample_trajectory(model, initials, horizon, first_seed + i));
  }
  return out;
}

std::vector<SampledTrajectory> sample_trajectories(const SystemModel& model,
                                                   const InitialDistributions& initials,
                                                   std::uint64_t horizon, std::uint64_t first_seed,
                                                   std::size_t count) {
  check_initials(model, initials);
  std::vector<SampledTrajectory> out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        sample_trajectory(model, initials, horizon, first_seed + static_cast<std::uint64_t>(i));
  }
  return out;
}

EmpiricalMatrix::EmpiricalMatrix(std::size_t modes, std::uint64_t step)
    : n_(modes), step_(step), counts_(modes * modes, 0), visits_(modes, 0) {}

std::optional<double> EmpiricalMatrix::frequency(std::size_t from, std::size_t to) const {
  if (visits_[from] == 0) return std::nullopt;
  return static_cast<double>(count(from, to)) / static_cast<double>(visits_[from]);
}

void EmpiricalMatrix::add(std::size_t from, std::size_t to, std::uint64_t times) {
  counts_[from * n_ + to] += times;
  visits_[from] += times;
}

void EmpiricalMatrix::merge(const EmpiricalMatrix& other) {
  if (other.n_ != n_ || other.step_ != step_) {
    throw Error(ErrorCode::DimensionMismatch, "empirical matrix", "cannot merge different shapes");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  for (std::size_t i = 0; i < visits_.size(); ++i) visits_[i] += other.visits_[i];
}

EmpiricalMatrix empirical_transition_matrix(std::span<const SampledTrajectory> samples,
                                            std::size_t component, std::uint64_t n,
                                            const SystemModel& model) {
  const std::size_t k = model.component(component).modes.size();
  EmpiricalMatrix total(k, n);
  const auto count = static_cast<std::int64_t>(samples.size());
#pragma omp parallel
  {
    EmpiricalMatrix local(k, n);
#pragma omp for schedule(static) nowait
    for (std::int64_t s = 0; s < count; ++s) {
      const auto& seq = samples[static_cast<std::size_t>(s)].modes.at(component);
      for (std::size_t t = 0; t + n < seq.size(); ++t) local.add(seq[t], seq[t + n]);
    }
#pragma omp critical(chronodiag_empirical_merge)
    total.merge(local);
  }
  return total;
}

ObservationStream generate_observation_stream(const SampledTrajectory& trajectory,
                                              const SystemModel& model,
                                              std::span<const TimePoint> instants) {
  std::vector<Observation> entries;
  for (TimePoint t : instants) {
    if (t > trajectory.horizon() || trajectory.modes.empty()) {
      throw Error(ErrorCode::InstantOutOfRange, "t=" + std::to_string(t),
                  "instant beyond the trajectory horizon " + std::to_string(trajectory.horizon()));
    }
    const ModeAssignment w = trajectory.at(t);
    Observation o;
    o.t = t;
    o.present = predicted_manifestations(w.modes, model);
    for (AtomId a : o.present) {
      for (AtomId b : model.exclusive_with(a)) {
        if (!std::binary_search(o.present.begin(), o.present.end(), b)) o.absent.push_back(b);
      }
    }
    entries.push_back(std::move(o));
  }
  return make_stream(model, std::move(entries));
}

}  // namespace chronodiag
