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

#ifndef CHRONODIAG_TEMPORAL_HPP_
#define CHRONODIAG_TEMPORAL_HPP_

// Temporal diagnosis: per-instant candidates are chained into evolutions whose
// steps are weighted by the components' n-step transition probabilities,
// filtered by the plausibility threshold and ranked by joint probability.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chronodiag/atemporal.hpp"
#include "chronodiag/model.hpp"
#include "chronodiag/stochastic.hpp"

namespace chronodiag {

enum class ThresholdMode { Global, PerComponent };

struct EngineConfig {
  double sigma = 0.0;
  ThresholdMode threshold_mode = ThresholdMode::Global;
  ExplanationCriterion criterion = ExplanationCriterion::Abductive;
  bool revise = false;
  std::uint64_t candidate_cap = kDefaultCandidateCap;
};

// Throws Error{InvalidArgument} unless 0 <= sigma <= 1 and candidate_cap > 0.
void validate_config(const EngineConfig& config);

struct DiagnosticProblem {
  SystemModel model;
  ObservationStream observations;
  EngineConfig config;
};

// One distribution per component, canonical component order.
using InitialDistributions = std::vector<ModeDistribution>;

enum class InitialSource { Model, Induced, Uniform };

struct ResolvedInitials {
  InitialDistributions distributions;
  std::vector<InitialSource> sources;
};

// Throws Error{EmptyStream}.
std::vector<TimePoint> relevant_instants(const ObservationStream& obs);

// pi_c(0)[m] = total weight of the candidates assigning m to c; weights
// default to uniform. Throws Error{EmptyCandidateSet | WeightSumViolation}.
InitialDistributions induce_initial_distributions(
    const SystemModel& model, std::span<const ModeAssignment> candidates,
    std::optional<std::span<const double>> weights = std::nullopt);

// Per component: the model's own initial distribution if declared, otherwise
// induced uniformly from `candidates_at_zero` (when given and nonempty),
// otherwise uniform over the component's modes.
ResolvedInitials resolve_initials(const SystemModel& model,
                                  std::span<const ModeAssignment> candidates_at_zero = {});

// prod_c (pi_c(0) P_c^t)[m_c]. Throws Error{MissingInitialDistribution}.
double prior_probability(const ModeAssignment& w, const InitialDistributions& initials,
                         const SystemModel& model);

// Per-component n-step entries P_c^n[prev_c][next_c], n = next.t - prev.t.
// Throws Error{NonIncreasingInstants}.
std::vector<double> component_step_probabilities(const ModeAssignment& prev,
                                                 const ModeAssignment& next,
                                                 const SystemModel& model);

double conditional_probability(const ModeAssignment& prev, const ModeAssignment& next,
                               const SystemModel& model);

// Unrevised plausibility check of one step.
bool admissible_step(const ModeAssignment& prev, const ModeAssignment& next,
                     const SystemModel& model, const EngineConfig& config);

// P[W(t0)] followed by the recursion J_k = J_{k-1} * P[W(t_k) | W(t_{k-1})].
double joint_probability(std::span<const ModeAssignment> trajectory,
                         const InitialDistributions& initials, const SystemModel& model);

// Edge weights between two consecutive candidate layers. `factors` holds the
// per-component n-step entries, `products` their product, both row-major over
// (from, to) with `factors` further strided by component.
struct StepTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t components = 0;
  std::vector<double> factors;
  std::vector<double> products;

  double product(std::size_t from, std::size_t to) const { return products[from * cols + to]; }
  std::span<const double> factors_of(std::size_t from, std::size_t to) const {
    return {factors.data() + (from * cols + to) * components, components};
  }
};

// OpenMP kernel over all (from, to) pairs; step_table_serial is the
// reference loop.
StepTable step_table(const SystemModel& model, std::span<const ModeAssignment> from,
                     std::span<const ModeAssignment> to);
StepTable step_table_serial(const SystemModel& model, std::span<const ModeAssignment> from,
                            std::span<const ModeAssignment> to);

struct TemporalDiagnosis {
  std::vector<ModeAssignment> trajectory;
  double prior = 0.0;
  std::vector<double> step_conditionals;
  double joint_probability = 0.0;
  // Present only when revising.
  std::optional<double> revised_joint;
  std::vector<double> revised_step_conditionals;
};

struct TrellisEdge {
  std::size_t layer = 0;  // index of the destination layer (>= 1)
  std::size_t from = 0;
  std::size_t to = 0;
  double conditional = 0.0;
  std::vector<double> component_factors;
  std::optional<double> revised_conditional;
  std::vector<double> revised_component_factors;
  bool admissible = false;
};

struct LayerRevision {
  TimePoint t = 0;
  double normalization = 0.0;                  // F(t)
  std::vector<ModeDistribution> distributions;  // pi_c(t) before conditioning
  std::vector<std::vector<std::size_t>> admitted;
  std::vector<double> component_factors;  // f(c,t)
};

struct TemporalResult {
  std::vector<TimePoint> instants;
  ResolvedInitials initials;
  std::vector<std::vector<ModeAssignment>> candidates;
  std::vector<TrellisEdge> edges;
  std::vector<TemporalDiagnosis> diagnoses;  // ranked
  std::vector<LayerRevision> revision;       // one per layer when revising
};

// Solves the atemporal problem at every relevant instant, then runs
// evaluate_candidate_layers. Throws Error{NoCandidatesAtInstant} for an empty
// layer, Error{NoAdmissibleEvolution} when no path survives the threshold.
TemporalResult enumerate_temporal_diagnoses(const DiagnosticProblem& problem);

// The trellis stage on explicitly supplied candidate layers (one per relevant
// instant, instants strictly increasing). Diagnoses are sorted by descending
// joint probability, ties broken by the lexicographic order of the
// trajectories' mode vectors.
TemporalResult evaluate_candidate_layers(const SystemModel& model,
                                         std::vector<std::vector<ModeAssignment>> layers,
                                         const ResolvedInitials& initials,
                                         const EngineConfig& config);

// Ranking order used above.
bool ranks_before(const TemporalDiagnosis& a, const TemporalDiagnosis& b);

}  // namespace chronodiag

#endif  // CHRONODIAG_TEMPORAL_HPP_
