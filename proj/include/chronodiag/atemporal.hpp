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

#ifndef CHRONODIAG_ATEMPORAL_HPP_
#define CHRONODIAG_ATEMPORAL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chronodiag/model.hpp"

namespace chronodiag {

inline constexpr std::uint64_t kDefaultCandidateCap = 1'000'000;

// One mode per component (canonical component order) at time t.
struct ModeAssignment {
  TimePoint t = 0;
  std::vector<std::size_t> modes;

  friend bool operator==(const ModeAssignment&, const ModeAssignment&) = default;
};

// "{C:correct,P:occluded}"
std::string format_assignment(const SystemModel& model, const ModeAssignment& w);

enum class ExplanationCriterion { Abductive, ConsistencyBased };

// Heads of every rule whose body holds under `modes`, sorted.
std::vector<AtomId> predicted_manifestations(std::span<const std::size_t> modes,
                                             const SystemModel& model);

// ConsistencyBased: nothing predicted is observed absent, and nothing
// predicted is declared exclusive with an observed present atom.
// Abductive: additionally every present atom is predicted.
bool is_explanation(std::span<const std::size_t> modes, std::span<const AtomId> present,
                    std::span<const AtomId> absent, ExplanationCriterion criterion,
                    const SystemModel& model);

// Every total assignment explaining `obs`, in lexicographic order of the mode
// index vector. The enumeration is split across OpenMP threads and merged in
// index order. Throws Error{SearchSpaceTooLarge} if the product of mode counts
// exceeds `cap`.
std::vector<ModeAssignment> solve_atemporal(const SystemModel& model, const Observation& obs,
                                            ExplanationCriterion criterion,
                                            std::uint64_t cap = kDefaultCandidateCap);

// Single-threaded odometer enumeration with the same contract.
std::vector<ModeAssignment> solve_atemporal_serial(const SystemModel& model,
                                                   const Observation& obs,
                                                   ExplanationCriterion criterion,
                                                   std::uint64_t cap = kDefaultCandidateCap);

}  // namespace chronodiag

#endif  // CHRONODIAG_ATEMPORAL_HPP_
