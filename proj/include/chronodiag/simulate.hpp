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

#ifndef CHRONODIAG_SIMULATE_HPP_
#define CHRONODIAG_SIMULATE_HPP_

// Monte Carlo sampling of mode evolutions from the components' chains, used as
// an independent oracle for the analytic kernels and to synthesize
// observation streams.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chronodiag/atemporal.hpp"
#include "chronodiag/model.hpp"
#include "chronodiag/temporal.hpp"

namespace chronodiag {

// Recorded in simulation output. Each trajectory owns a std::mt19937_64
// seeded through std::seed_seq{low 32 bits, high 32 bits} of its seed;
// uniforms take the top 53 bits of a draw; a mode is picked by inverse CDF
// over the matrix row in mode order.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+seed_seq(lo32,hi32)+u53+inverse-cdf";

struct SampledTrajectory {
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> modes;  // [component][t], t = 0..horizon

  std::uint64_t horizon() const noexcept {
    return modes.empty() ? 0 : static_cast<std::uint64_t>(modes.front().size()) - 1;
  }
  ModeAssignment at(TimePoint t) const;
};

SampledTrajectory sample_trajectory(const SystemModel& model, const InitialDistributions& initials,
                                    std::uint64_t horizon, std::uint64_t seed);

// Trajectories for seeds first_seed .. first_seed + count - 1. Seeds are
// sampled in parallel; the result depends only on the seeds.
std::vector<SampledTrajectory> sample_trajectories(const SystemModel& model,
                                                   const InitialDistributions& initials,
                                                   std::uint64_t horizon, std::uint64_t first_seed,
                                                   std::size_t count);
std::vector<SampledTrajectory> sample_trajectories_serial(const SystemModel& model,
                                                          const InitialDistributions& initials,
                                                          std::uint64_t horizon,
                                                          std::uint64_t first_seed,
                                                          std::size_t count);

// Pair counts (mode at t -> mode at t+n) over every t of every trajectory.
class EmpiricalMatrix {
 public:
  EmpiricalMatrix(std::size_t modes, std::uint64_t step);

  std::size_t size() const noexcept { return n_; }
  std::uint64_t step() const noexcept { return step_; }
  std::uint64_t count(std::size_t from, std::size_t to) const { return counts_[from * n_ + to]; }
  std::uint64_t visits(std::size_t from) const { return visits_[from]; }
  // Row-normalized frequency, or nullopt for a row that was never visited.
  std::optional<double> frequency(std::size_t from, std::size_t to) const;

  void add(std::size_t from, std::size_t to, std::uint64_t times = 1);
  void merge(const EmpiricalMatrix& other);

 private:
  std::size_t n_;
  std::uint64_t step_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> visits_;
};

EmpiricalMatrix empirical_transition_matrix(std::span<const SampledTrajectory> samples,
                                            std::size_t component, std::uint64_t n,
                                            const SystemModel& model);

// Noise-free observations: present = predicted manifestations of the true
// assignment, absent = declared exclusive alternatives of those atoms that are
// not themselves predicted. Throws Error{InstantOutOfRange}.
ObservationStream generate_observation_stream(const SampledTrajectory& trajectory,
                                              const SystemModel& model,
                                              std::span<const TimePoint> instants);

}  // namespace chronodiag

#endif  // CHRONODIAG_SIMULATE_HPP_
