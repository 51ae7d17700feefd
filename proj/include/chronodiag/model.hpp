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

#ifndef CHRONODIAG_MODEL_HPP_
#define CHRONODIAG_MODEL_HPP_

// The system under diagnosis: components with their mode chains, the
// atemporal Horn behavioral model and time-stamped observations.
//
// Declarations (`*Decl`) carry names exactly as read from a file. Validation
// turns them into the index-based SystemModel / ObservationStream used by the
// solvers. Components of a validated model are ordered by id; that order is
// the canonical component order everywhere else in the library.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chronodiag/stochastic.hpp"

namespace chronodiag {

using TimePoint = std::uint64_t;
using AtomId = std::size_t;

struct ComponentDecl {
  std::string id;
  std::vector<std::string> modes;
  std::string correct_mode;
  std::vector<std::vector<double>> matrix;
  std::optional<std::vector<double>> initial_distribution;
};

struct ModeAtomDecl {
  std::string component;
  std::string mode;
};

struct RuleDecl {
  std::vector<ModeAtomDecl> body;
  std::string head;
};

struct ModelDecl {
  std::vector<ComponentDecl> components;
  std::vector<RuleDecl> rules;
  std::vector<std::pair<std::string, std::string>> exclusive;
};

struct ComponentSpec {
  std::string id;
  std::vector<std::string> modes;
  std::size_t correct_mode = 0;
  TransitionMatrix matrix;
  std::optional<ModeDistribution> initial_distribution;

  std::optional<std::size_t> mode_index(std::string_view mode) const;
};

struct ModeAtom {
  std::size_t component = 0;
  std::size_t mode = 0;
  friend bool operator==(const ModeAtom&, const ModeAtom&) = default;
};

struct HornRule {
  std::vector<ModeAtom> body;  // sorted by component, one atom per component
  AtomId head = 0;
};

class SystemModel {
 public:
  const std::vector<ComponentSpec>& components() const noexcept { return components_; }
  const ComponentSpec& component(std::size_t c) const { return components_.at(c); }
  std::size_t component_count() const noexcept { return components_.size(); }
  std::optional<std::size_t> component_index(std::string_view id) const;

  const std::vector<HornRule>& rules() const noexcept { return rules_; }

  // Manifestation atoms, sorted by name; an AtomId indexes this list.
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  std::optional<AtomId> atom_id(std::string_view name) const;

  // Atoms declared mutually exclusive with `atom`, sorted.
  const std::vector<AtomId>& exclusive_with(AtomId atom) const { return exclusive_.at(atom); }
  const std::vector<std::pair<AtomId, AtomId>>& exclusive_pairs() const noexcept {
    return exclusive_pairs_;
  }

  // Size of the Cartesian product of all components' mode sets, saturating
  // at UINT64_MAX.
  std::uint64_t assignment_space() const noexcept;

 private:
  friend SystemModel validate_model(const ModelDecl&);

  std::vector<ComponentSpec> components_;
  std::vector<HornRule> rules_;
  std::vector<std::string> atoms_;
  std::vector<std::vector<AtomId>> exclusive_;
  std::vector<std::pair<AtomId, AtomId>> exclusive_pairs_;
};

// Throws Error{DuplicateComponent | UnknownComponent | UnknownModeAtom |
// MatrixInvalid | CorrectModeMissing | InvalidDistribution | InvalidRule |
// UnknownAtom} for the first violation found.
SystemModel validate_model(const ModelDecl& decl);

// Inverse of validate_model up to component order (always sorted by id).
ModelDecl to_decl(const SystemModel& model);

std::vector<FaultClass> classify_faults(const ComponentSpec& c);

struct ObservationDecl {
  TimePoint t = 0;
  std::vector<std::string> present;
  std::vector<std::string> absent;
};

struct Observation {
  TimePoint t = 0;
  std::vector<AtomId> present;  // sorted, unique
  std::vector<AtomId> absent;   // sorted, unique
  friend bool operator==(const Observation&, const Observation&) = default;
};

class ObservationStream {
 public:
  ObservationStream() = default;

  const std::vector<Observation>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  friend bool operator==(const ObservationStream&, const ObservationStream&) = default;

 private:
  friend ObservationStream validate_stream(const SystemModel&, const std::vector<ObservationDecl>&);
  friend ObservationStream make_stream(const SystemModel&, std::vector<Observation>);

  std::vector<Observation> entries_;
};

// Throws Error{UnsortedStream | ContradictoryObservation | UnknownAtom}.
ObservationStream validate_stream(const SystemModel& model,
                                  const std::vector<ObservationDecl>& entries);

// Builds a stream from already-resolved entries, checking the same
// invariants as validate_stream.
ObservationStream make_stream(const SystemModel& model, std::vector<Observation> entries);

std::vector<ObservationDecl> to_decl(const SystemModel& model, const ObservationStream& stream);

}  // namespace chronodiag

#endif  // CHRONODIAG_MODEL_HPP_
