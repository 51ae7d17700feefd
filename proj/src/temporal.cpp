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

#include "chronodiag/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chronodiag/error.hpp"
#include "chronodiag/revision.hpp"

namespace chronodiag {
namespace {

std::string at(TimePoint t) { return "t=" + std::to_string(t); }

void check_step(const ModeAssignment& prev, const ModeAssignment& next) {
  if (next.t <= prev.t) {
    throw Error(ErrorCode::NonIncreasingInstants, at(next.t),
                "step from " + at(prev.t) + " does not move forward in time");
  }
}

std::vector<TransitionMatrix> step_powers(const SystemModel& model, std::uint64_t n) {
  std::vector<TransitionMatrix> powers;
  powers.reserve(model.component_count());
  for (const auto& c : model.components()) powers.push_back(matrix_power(c.matrix, n));
  return powers;
}

void fill_cell(std::span<const TransitionMatrix> powers, const ModeAssignment& a,
               const ModeAssignment& b, double* factors, double& product) {
  double p = 1.0;
  for (std::size_t c = 0; c < powers.size(); ++c) {
    factors[c] = powers[c](a.modes[c], b.modes[c]);
    p *= factors[c];
  }
  product = p;
}

StepTable empty_table(const SystemModel& model, std::span<const ModeAssignment> from,
                      std::span<const ModeAssignment> to) {
  StepTable t;
  t.rows = from.size();
  t.cols = to.size();
  t.components = model.component_count();
  t.factors.assign(t.rows * t.cols * t.components, 0.0);
  t.products.assign(t.rows * t.cols, 0.0);
  return t;
}

std::uint64_t layer_gap(std::span<const ModeAssignment> from, std::span<const ModeAssignment> to) {
  if (from.empty() || to.empty()) return 1;
  check_step(from.front(), to.front());
  return to.front().t - from.front().t;
}

void check_uniform_time(std::span<const ModeAssignment> layer) {
  for (const auto& w : layer) {
    if (w.t != layer.front().t) {
      throw Error(ErrorCode::InvalidArgument, at(w.t), "candidate layer mixes time points");
    }
  }
}

bool passes(const EngineConfig& config, double product, std::span<const double> factors) {
  if (config.threshold_mode == ThresholdMode::Global) return product >= config.sigma;
  return std::all_of(factors.begin(), factors.end(), [&](double f) { return f >= config.sigma; });
}

std::vector<std::vector<std::size_t>> admitted_modes(const SystemModel& model,
                                                     std::span<const ModeAssignment> layer) {
  std::vector<std::vector<std::size_t>> admitted(model.component_count());
  for (std::size_t c = 0; c < model.component_count(); ++c) {
    std::vector<bool> seen(model.component(c).modes.size(), false);
    for (const auto& w : layer) seen[w.modes[c]] = true;
    for (std::size_t m = 0; m < seen.size(); ++m) {
      if (seen[m]) admitted[c].push_back(m);
    }
  }
  return admitted;
}

struct Path {
  std::vector<std::size_t> nodes;  // candidate index per layer
  TemporalDiagnosis diagnosis;
  double weight = 0.0;  // revised joint when revising, raw joint otherwise
};

}  // namespace

void validate_config(const EngineConfig& config) {
  if (!(config.sigma >= 0.0 && config.sigma <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "sigma",
                "plausibility threshold " + std::to_string(config.sigma) + " is outside [0,1]");
  }
  if (config.candidate_cap == 0) {
    throw Error(ErrorCode::InvalidArgument, "cap", "candidate cap must be positive");
  }
}

std::vector<TimePoint> relevant_instants(const ObservationStream& obs) {
  if (obs.empty()) throw Error(ErrorCode::EmptyStream, "observations", "stream has no entries");
  std::vector<TimePoint> out;
  out.reserve(obs.size());
  for (const auto& e : obs.entries()) out.push_back(e.t);
  return out;
}

InitialDistributions induce_initial_distributions(const SystemModel& model,
                                                  std::span<const ModeAssignment> candidates,
                                                  std::optional<std::span<const double>> weights) {
  if (candidates.empty()) {
    throw Error(ErrorCode::EmptyCandidateSet, "candidates", "cannot induce from an empty candidate set");
  }
  std::vector<double> w;
  if (weights) {
    if (weights->size() != candidates.size()) {
      throw Error(ErrorCode::WeightSumViolation, "weights",
                  "expected one weight per candidate");
    }
    double sum = 0.0;
    for (double x : *weights) {
      if (!(x >= 0.0)) throw Error(ErrorCode::WeightSumViolation, "weights", "negative weight");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance) {
      throw Error(ErrorCode::WeightSumViolation, "weights",
                  "weights sum to " + std::to_string(sum) + ", expected 1");
    }
    w.assign(weights->begin(), weights->end());
  } else {
    w.assign(candidates.size(), 1.0 / static_cast<double>(candidates.size()));
  }
  InitialDistributions out;
  for (std::size_t c = 0; c < model.component_count(); ++c) {
    std::vector<double> p(model.component(c).modes.size(), 0.0);
    for (std::size_t i = 0; i < candidates.size(); ++i) p[candidates[i].modes[c]] += w[i];
    // Clamp round-off so that a certain mode is exactly 1.
    for (double& x : p) x = std::min(x, 1.0);
    out.emplace_back(std::move(p));
  }
  return out;
}

ResolvedInitials resolve_initials(const SystemModel& model,
                                  std::span<const ModeAssignment> candidates_at_zero) {
  ResolvedInitials r;
  std::optional<InitialDistributions> induced;
  if (!candidates_at_zero.empty()) induced = induce_initial_distributions(model, candidates_at_zero);
  for (std::size_t c = 0; c < model.component_count(); ++c) {
    const auto& spec = model.component(c);
    if (spec.initial_distribution) {
      r.distributions.push_back(*spec.initial_distribution);
      r.sources.push_back(InitialSource::Model);
    } else if (induced) {
      r.distributions.push_back((*induced)[c]);
      r.sources.push_back(InitialSource::Induced);
    } else {
      r.distributions.push_back(ModeDistribution::uniform(spec.modes.size()));
      r.sources.push_back(InitialSource::Uniform);
    }
  }
  return r;
}

double prior_probability(const ModeAssignment& w, const InitialDistributions& initials,
                         const SystemModel& model) {
  if (initials.size() != model.component_count()) {
    throw Error(ErrorCode::MissingInitialDistribution, "initial distributions",
                "expected " + std::to_string(model.component_count()) + " distributions, got " +
                    std::to_string(initials.size()));
  }
  double p = 1.0;
  for (std::size_t c = 0; c < model.component_count(); ++c) {
    const ModeDistribution pi = propagate_distribution(initials[c], model.component(c).matrix, w.t);
    p *= pi[w.modes[c]];
  }
  return p;
}

std::vector<double> component_step_probabilities(const ModeAssignment& prev,
                                                 const ModeAssignment& next,
                                                 const SystemModel& model) {
  check_step(prev, next);
  const auto powers = step_powers(model, next.t - prev.t);
  std::vector<double> factors(model.component_count());
  double product = 0.0;
  fill_cell(powers, prev, next, factors.data(), product);
  return factors;
}

double conditional_probability(const ModeAssignment& prev, const ModeAssignment& next,
                               const SystemModel& model) {
  double p = 1.0;
  for (double f : component_step_probabilities(prev, next, model)) p *= f;
  return p;
}

bool admissible_step(const ModeAssignment& prev, const ModeAssignment& next,
                     const SystemModel& model, const EngineConfig& config) {
  const auto factors = component_step_probabilities(prev, next, model);
  double product = 1.0;
  for (double f : factors) product *= f;
  return passes(config, product, factors);
}

double joint_probability(std::span<const ModeAssignment> trajectory,
                         const InitialDistributions& initials, const SystemModel& model) {
  if (trajectory.empty()) return 1.0;
  double joint = prior_probability(trajectory.front(), initials, model);
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    joint *= conditional_probability(trajectory[k - 1], trajectory[k], model);
  }
  return joint;
}

StepTable step_table_serial(const SystemModel& model, std::span<const ModeAssignment> from,
                            std::span<const ModeAssignment> to) {
  StepTable t = empty_table(model, from, to);
  const auto powers = step_powers(model, layer_gap(from, to));
  for (std::size_t i = 0; i < t.rows; ++i) {
    for (std::size_t j = 0; j < t.cols; ++j) {
      check_step(from[i], to[j]);
      const std::size_t cell = i * t.cols + j;
      fill_cell(powers, from[i], to[j], t.factors.data() + cell * t.components, t.products[cell]);
    }
  }
  return t;
}

StepTable step_table(const SystemModel& model, std::span<const ModeAssignment> from,
                     std::span<const ModeAssignment> to) {
  StepTable t = empty_table(model, from, to);
  check_uniform_time(from);
  check_uniform_time(to);
  const auto powers = step_powers(model, layer_gap(from, to));
  const auto cells = static_cast<std::int64_t>(t.rows * t.cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < cells; ++k) {
    const auto cell = static_cast<std::size_t>(k);
    fill_cell(powers, from[cell / t.cols], to[cell % t.cols],
              t.factors.data() + cell * t.components, t.products[cell]);
  }
  return t;
}

bool ranks_before(const TemporalDiagnosis& a, const TemporalDiagnosis& b) {
  if (a.joint_probability != b.joint_probability) return a.joint_probability > b.joint_probability;
  return std::lexicographical_compare(
      a.trajectory.begin(), a.trajectory.end(), b.trajectory.begin(), b.trajectory.end(),
      [](const ModeAssignment& x, const ModeAssignment& y) {
        if (x.t != y.t) return x.t < y.t;
        return x.modes < y.modes;
      });
}

TemporalResult evaluate_candidate_layers(const SystemModel& model,
                                         std::vector<std::vector<ModeAssignment>> layers,
                                         const ResolvedInitials& initials,
                                         const EngineConfig& config) {
  validate_config(config);
  if (layers.empty()) throw Error(ErrorCode::EmptyStream, "candidates", "no relevant instants");
  TemporalResult result;
  for (const auto& layer : layers) {
    if (layer.empty()) {
      throw Error(ErrorCode::EmptyCandidateSet, "candidates", "a candidate layer is empty");
    }
    const TimePoint t = layer.front().t;
    for (const auto& w : layer) {
      if (w.t != t) {
        throw Error(ErrorCode::InvalidArgument, at(w.t), "candidate layer mixes time points");
      }
      if (w.modes.size() != model.component_count()) {
        throw Error(ErrorCode::InvalidArgument, at(w.t), "assignment is not total over the components");
      }
      for (std::size_t c = 0; c < w.modes.size(); ++c) {
        if (w.modes[c] >= model.component(c).modes.size()) {
          throw Error(ErrorCode::UnknownModeAtom, at(w.t), "mode index out of range for " + model.component(c).id);
        }
      }
    }
    if (!result.instants.empty() && t <= result.instants.back()) {
      throw Error(ErrorCode::NonIncreasingInstants, at(t), "candidate layers must move forward in time");
    }
    result.instants.push_back(t);
  }
  result.initials = initials;
  const std::size_t ncomp = model.component_count();
  if (initials.distributions.size() != ncomp) {
    throw Error(ErrorCode::MissingInitialDistribution, "initial distributions",
                "expected one distribution per component");
  }

  // Layer 0: priors.
  std::vector<ModeDistribution> pi(ncomp);
  for (std::size_t c = 0; c < ncomp; ++c) {
    pi[c] = propagate_distribution(initials.distributions[c], model.component(c).matrix,
                                   result.instants.front());
  }
  std::vector<Path> paths;
  const auto& first = layers.front();
  if (first.size() > config.candidate_cap) {
    throw Error(ErrorCode::SearchSpaceTooLarge, at(first.front().t), "too many candidates");
  }
  for (std::size_t i = 0; i < first.size(); ++i) {
    double prior = 1.0;
    for (std::size_t c = 0; c < ncomp; ++c) prior *= pi[c][first[i].modes[c]];
    Path p;
    p.nodes = {i};
    p.diagnosis.trajectory = {first[i]};
    p.diagnosis.prior = prior;
    p.diagnosis.joint_probability = prior;
    p.weight = prior;
    paths.push_back(std::move(p));
  }

  std::vector<ModeDistribution> posterior;
  if (config.revise) {
    LayerRevision rev;
    rev.t = result.instants.front();
    std::vector<double> priors;
    for (const auto& p : paths) priors.push_back(p.weight);
    rev.normalization = normalization_factor(priors);
    rev.distributions = pi;
    rev.admitted = admitted_modes(model, first);
    for (std::size_t c = 0; c < ncomp; ++c) {
      rev.component_factors.push_back(component_mass_factor(pi[c], rev.admitted[c]));
      posterior.push_back(posterior_component_distribution(pi[c], rev.admitted[c]));
    }
    for (auto& p : paths) {
      p.weight *= rev.normalization;
      p.diagnosis.revised_joint = p.weight;
    }
    result.revision.push_back(std::move(rev));
  }

  for (std::size_t k = 1; k < layers.size(); ++k) {
    const auto& prev = layers[k - 1];
    const auto& next = layers[k];
    const StepTable table = step_table(model, prev, next);
    const std::uint64_t gap = result.instants[k] - result.instants[k - 1];

    double global_factor = 1.0;
    std::vector<double> component_factor(ncomp, 1.0);
    if (config.revise) {
      LayerRevision rev;
      rev.t = result.instants[k];
      std::vector<double> extended;
      extended.reserve(paths.size() * next.size());
      for (const auto& p : paths) {
        for (std::size_t j = 0; j < next.size(); ++j) {
          extended.push_back(p.weight * table.product(p.nodes.back(), j));
        }
      }
      rev.normalization = normalization_factor(extended);
      rev.admitted = admitted_modes(model, next);
      for (std::size_t c = 0; c < ncomp; ++c) {
        rev.distributions.push_back(
            propagate_distribution(posterior[c], model.component(c).matrix, gap));
        rev.component_factors.push_back(
            component_mass_factor(rev.distributions[c], rev.admitted[c]));
        posterior[c] = posterior_component_distribution(rev.distributions[c], rev.admitted[c]);
      }
      global_factor = rev.normalization;
      component_factor = rev.component_factors;
      result.revision.push_back(std::move(rev));
    }

    std::vector<char> admissible(table.rows * table.cols, 0);
    for (std::size_t i = 0; i < table.rows; ++i) {
      for (std::size_t j = 0; j < table.cols; ++j) {
        TrellisEdge e;
        e.layer = k;
        e.from = i;
        e.to = j;
        e.conditional = table.product(i, j);
        const auto f = table.factors_of(i, j);
        e.component_factors.assign(f.begin(), f.end());
        if (config.revise) {
          e.revised_conditional = revise_transition(e.conditional, global_factor).value();
          for (std::size_t c = 0; c < ncomp; ++c) {
            e.revised_component_factors.push_back(revise_transition(f[c], component_factor[c]).value());
          }
          e.admissible = passes(config, *e.revised_conditional, e.revised_component_factors);
        } else {
          e.admissible = passes(config, e.conditional, e.component_factors);
        }
        admissible[i * table.cols + j] = e.admissible ? 1 : 0;
        result.edges.push_back(std::move(e));
      }
    }

    std::vector<Path> extended;
    for (const auto& p : paths) {
      const std::size_t i = p.nodes.back();
      for (std::size_t j = 0; j < next.size(); ++j) {
        if (!admissible[i * table.cols + j]) continue;
        if (extended.size() >= config.candidate_cap) {
          throw Error(ErrorCode::SearchSpaceTooLarge, at(result.instants[k]),
                      "number of temporal diagnoses exceeds the cap of " +
                          std::to_string(config.candidate_cap));
        }
        Path q = p;
        const double cond = table.product(i, j);
        q.nodes.push_back(j);
        q.diagnosis.trajectory.push_back(next[j]);
        q.diagnosis.step_conditionals.push_back(cond);
        q.diagnosis.joint_probability *= cond;
        q.weight *= cond;
        if (config.revise) {
          q.weight *= global_factor;
          q.diagnosis.revised_step_conditionals.push_back(cond * global_factor);
          q.diagnosis.revised_joint = q.weight;
        }
        extended.push_back(std::move(q));
      }
    }
    if (extended.empty()) {
      throw Error(ErrorCode::NoAdmissibleEvolution, at(result.instants[k]),
                  "no evolution survives the plausibility threshold " + std::to_string(config.sigma));
    }
    paths = std::move(extended);
  }

  result.candidates = std::move(layers);
  result.diagnoses.reserve(paths.size());
  for (auto& p : paths) result.diagnoses.push_back(std::move(p.diagnosis));
  std::sort(result.diagnoses.begin(), result.diagnoses.end(), ranks_before);
  return result;
}

TemporalResult enumerate_temporal_diagnoses(const DiagnosticProblem& problem) {
  validate_config(problem.config);
  const auto instants = relevant_instants(problem.observations);
  std::vector<std::vector<ModeAssignment>> layers;
  layers.reserve(instants.size());
  for (const auto& obs : problem.observations.entries()) {
    auto candidates = solve_atemporal(problem.model, obs, problem.config.criterion,
                                      problem.config.candidate_cap);
    if (candidates.empty()) {
      throw Error(ErrorCode::NoCandidatesAtInstant, at(obs.t),
                  "no mode assignment explains the observations");
    }
    layers.push_back(std::move(candidates));
  }
  const ResolvedInitials initials =
      instants.front() == 0 ? resolve_initials(problem.model, layers.front())
                            : resolve_initials(problem.model);
  return evaluate_candidate_layers(problem.model, std::move(layers), initials, problem.config);
}

}  // namespace chronodiag
