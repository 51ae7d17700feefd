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

#ifndef CHRONODIAG_REVISION_HPP_
#define CHRONODIAG_REVISION_HPP_

// Multiplicative renormalization of the stochastic predictions against the
// hypotheses admitted by the logical model at an instant. Revised values are
// scores: a revised conditional can exceed 1.

#include <cstddef>
#include <span>
#include <vector>

#include "chronodiag/stochastic.hpp"

namespace chronodiag {

class RevisedScore {
 public:
  // Throws Error{InvalidArgument} for negative or NaN values.
  explicit RevisedScore(double value);
  double value() const noexcept { return value_; }
  friend auto operator<=>(const RevisedScore&, const RevisedScore&) = default;

 private:
  double value_;
};

// F(t) = 1 / sum(joints). Throws Error{AllZeroJoints}.
double normalization_factor(std::span<const double> joints);

struct GlobalRevision {
  double factor = 0.0;
  std::vector<RevisedScore> joints;
  std::vector<RevisedScore> conditionals;
};

// Scales every joint and conditional at one instant by F(t) computed from
// `joints`.
GlobalRevision revise_global(std::span<const double> joints, std::span<const double> conditionals);

// f(c,t) = 1 / sum of pi_t over the admitted modes. Throws
// Error{ZeroAdmittedMass} if nothing is admitted or the admitted mass is 0.
double component_mass_factor(const ModeDistribution& pi_t, std::span<const std::size_t> admitted);

// rp = p * f.
RevisedScore revise_transition(double p, double factor);

// pi_t restricted to the admitted modes and rescaled to sum to 1.
ModeDistribution posterior_component_distribution(const ModeDistribution& pi_t,
                                                  std::span<const std::size_t> admitted);

}  // namespace chronodiag

#endif  // CHRONODIAG_REVISION_HPP_
