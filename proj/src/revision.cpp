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

#include "chronodiag/revision.hpp"

#include <cmath>
#include <string>

#include "chronodiag/error.hpp"

namespace chronodiag {

RevisedScore::RevisedScore(double value) : value_(value) {
  if (!(value >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "revised score",
                "score must be nonnegative, got " + std::to_string(value));
  }
}

double normalization_factor(std::span<const double> joints) {
  double sum = 0.0;
  for (double j : joints) sum += j;
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::AllZeroJoints, "joints",
                "every candidate evolution has probability 0; revision is undefined");
  }
  return 1.0 / sum;
}

GlobalRevision revise_global(std::span<const double> joints, std::span<const double> conditionals) {
  GlobalRevision out;
  out.factor = normalization_factor(joints);
  out.joints.reserve(joints.size());
  out.conditionals.reserve(conditionals.size());
  for (double j : joints) out.joints.emplace_back(j * out.factor);
  for (double c : conditionals) out.conditionals.emplace_back(c * out.factor);
  return out;
}

double component_mass_factor(const ModeDistribution& pi_t, std::span<const std::size_t> admitted) {
  double mass = 0.0;
  for (std::size_t m : admitted) {
    if (m >= pi_t.size()) {
      throw Error(ErrorCode::DimensionMismatch, "admitted mode " + std::to_string(m),
                  "mode index outside the distribution");
    }
    mass += pi_t[m];
  }
  if (!(mass > 0.0)) {
    throw Error(ErrorCode::ZeroAdmittedMass, "admitted modes",
                "the admitted modes carry no predicted probability");
  }
  return 1.0 / mass;
}

RevisedScore revise_transition(double p, double factor) { return RevisedScore(p * factor); }

ModeDistribution posterior_component_distribution(const ModeDistribution& pi_t,
                                                  std::span<const std::size_t> admitted) {
  const double f = component_mass_factor(pi_t, admitted);
  std::vector<double> p(pi_t.size(), 0.0);
  for (std::size_t m : admitted) p[m] = pi_t[m] * f;
  return ModeDistribution(ModeDistribution::Unchecked{}, std::move(p));
}

}  // namespace chronodiag
