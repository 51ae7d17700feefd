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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "chronodiag/error.hpp"
#include "chronodiag/temporal.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace chronodiag {
namespace {

namespace pump = testing::pump;
namespace container = testing::container;
using testing::at;
using testing::Rational;

constexpr double kExact = 1e-12;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

std::vector<double> values(const std::vector<RevisedScore>& v) {
  std::vector<double> out;
  for (const auto& s : v) out.push_back(s.value());
  return out;
}

TEST(RevisedScore, RejectsNegativeAndNan) {
  EXPECT_EQ(RevisedScore(15.0 / 7).value(), 15.0 / 7);
  EXPECT_EQ(code_of([] { RevisedScore(-0.1); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { RevisedScore(std::nan("")); }), ErrorCode::InvalidArgument);
  EXPECT_LT(RevisedScore(0.5), RevisedScore(2.0));
}

TEST(NormalizationFactor, Examples) {
  const std::vector<double> joints{0.0, 3.0 / 25, 3.0 / 10};
  EXPECT_NEAR(normalization_factor(joints), 50.0 / 21, kExact);
  const std::vector<double> single{0.04};
  EXPECT_NEAR(normalization_factor(single), 25.0, kExact);
  const std::vector<double> zeros{0.0, 0.0};
  EXPECT_EQ(code_of([&] { normalization_factor(zeros); }), ErrorCode::AllZeroJoints);
  EXPECT_EQ(code_of([&] { normalization_factor({}); }), ErrorCode::AllZeroJoints);
}

TEST(ReviseGlobal, FirstExampleAtSecondInstant) {
  const std::vector<double> joints{0.0, 3.0 / 25, 3.0 / 10};
  const std::vector<double> conds{0.0, 9.0 / 25, 9.0 / 10};
  const auto r = revise_global(joints, conds);
  EXPECT_NEAR(r.factor, 50.0 / 21, kExact);
  const auto rc = values(r.conditionals);
  const auto rj = values(r.joints);
  const std::vector<double> want_c{0.0, 6.0 / 7, 15.0 / 7};
  const std::vector<double> want_j{0.0, 2.0 / 7, 5.0 / 7};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(rc[i], want_c[i], kExact);
    EXPECT_NEAR(rj[i], want_j[i], kExact);
  }
  EXPECT_GT(rc[2], 1.0);
}

TEST(ReviseGlobal, SingleCandidateBecomesOne) {
  const std::vector<double> joints{0.018};
  const std::vector<double> conds{0.018};
  const auto r = revise_global(joints, conds);
  EXPECT_NEAR(r.joints[0].value(), 1.0, kExact);
}

TEST(ComponentMassFactor, Examples) {
  // pi_C(1) from a correct container and pi_P(1) from the induced uniform
  // prior over {occluded, partially occluded, correct}.
  const auto c1 = testing::rational_row_times({0, 0, 1}, testing::container_matrix());
  const Rational third(1, 3);
  const auto p1 = testing::rational_row_times({0, third, 0, third, third}, testing::pump_matrix());
  ASSERT_EQ(p1[pump::occluded], Rational(7, 15));
  ASSERT_EQ(c1[container::correct], Rational(9, 10));

  const ModeDistribution pi_c({0.0, 0.1, 0.9});
  const std::vector<std::size_t> correct{container::correct};
  EXPECT_NEAR(component_mass_factor(pi_c, correct), 10.0 / 9, kExact);

  std::vector<double> p1d;
  for (const auto& r : p1) p1d.push_back(r.value());
  const ModeDistribution pi_p(p1d);
  const std::vector<std::size_t> occluded{pump::occluded};
  EXPECT_NEAR(component_mass_factor(pi_p, occluded), 15.0 / 7, kExact);

  const std::vector<std::size_t> every{0, 1, 2, 3, 4};
  EXPECT_NEAR(component_mass_factor(pi_p, every), 1.0, kExact);
}

TEST(ComponentMassFactor, Errors) {
  const ModeDistribution pi({0.0, 0.1, 0.9});
  const std::vector<std::size_t> zero_mass{container::punctured};
  EXPECT_EQ(code_of([&] { component_mass_factor(pi, zero_mass); }), ErrorCode::ZeroAdmittedMass);
  EXPECT_EQ(code_of([&] { component_mass_factor(pi, {}); }), ErrorCode::ZeroAdmittedMass);
  const std::vector<std::size_t> out_of_range{7};
  EXPECT_EQ(code_of([&] { component_mass_factor(pi, out_of_range); }), ErrorCode::DimensionMismatch);
}

TEST(ReviseTransition, Examples) {
  EXPECT_NEAR(revise_transition(2.0 / 5, 15.0 / 7).value(), 6.0 / 7, kExact);
  EXPECT_NEAR(revise_transition(9.0 / 10, 10.0 / 9).value(), 1.0, kExact);
  EXPECT_EQ(revise_transition(0.3, 1.0).value(), 0.3);
}

TEST(PosteriorDistribution, Examples) {
  const ModeDistribution pi({0.2, 0.3, 0.5});
  const std::vector<std::size_t> two{1, 2};
  const auto post = posterior_component_distribution(pi, two);
  EXPECT_EQ(post[0], 0.0);
  EXPECT_NEAR(post[1], 0.375, kExact);
  EXPECT_NEAR(post[2], 0.625, kExact);
  const std::vector<std::size_t> all{0, 1, 2};
  EXPECT_EQ(posterior_component_distribution(pi, all), pi);
}

TEST(ReviseEngine, FirstExampleEndToEnd) {
  const SystemModel m = testing::hydraulic_model();
  const std::vector<ModeAssignment> w0{at(0, pump::correct, container::correct),
                                       at(0, pump::partially_occluded, container::correct),
                                       at(0, pump::occluded, container::correct)};
  const std::vector<ModeAssignment> w1{at(1, pump::occluded, container::correct)};
  EngineConfig config;
  config.revise = true;
  const auto r = evaluate_candidate_layers(m, {w0, w1}, resolve_initials(m, w0), config);
  ASSERT_EQ(r.revision.size(), 2u);
  EXPECT_NEAR(r.revision[0].normalization, 1.0, kExact);
  EXPECT_NEAR(r.revision[1].normalization, 50.0 / 21, kExact);
  EXPECT_NEAR(r.revision[1].component_factors[testing::kC], 10.0 / 9, kExact);
  EXPECT_NEAR(r.revision[1].component_factors[testing::kP], 15.0 / 7, kExact);
  const std::vector<double> pi_p{1.0 / 150, 7.0 / 15, 1.0 / 75, 16.0 / 75, 3.0 / 10};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(r.revision[1].distributions[testing::kP][i], pi_p[i], kExact);
  }

  ASSERT_EQ(r.diagnoses.size(), 3u);
  EXPECT_NEAR(*r.diagnoses[0].revised_joint, 5.0 / 7, kExact);
  EXPECT_NEAR(r.diagnoses[0].revised_step_conditionals[0], 15.0 / 7, kExact);
  EXPECT_NEAR(*r.diagnoses[1].revised_joint, 2.0 / 7, kExact);
  EXPECT_NEAR(r.diagnoses[1].revised_step_conditionals[0], 6.0 / 7, kExact);
  EXPECT_EQ(*r.diagnoses[2].revised_joint, 0.0);

  for (const auto& e : r.edges) {
    if (r.candidates[0][e.from] == w0[1]) {
      EXPECT_NEAR(e.revised_component_factors[testing::kP], 6.0 / 7, kExact);
      EXPECT_NEAR(e.revised_component_factors[testing::kC], 1.0, kExact);
    }
  }
}

TEST(ReviseEngine, ThresholdAppliesToRevisedValues) {
  // Raw conditional 9/500 at sigma 0.5 is rejected; revised against the lone
  // broken hypothesis its conditional becomes 1.
  const SystemModel m = testing::hydraulic_model();
  const std::vector<ModeAssignment> w0{at(0, pump::correct, container::correct)};
  const std::vector<ModeAssignment> w1{at(1, pump::broken, container::correct)};
  EngineConfig config;
  config.sigma = 0.5;
  EXPECT_THROW(evaluate_candidate_layers(m, {w0, w1}, resolve_initials(m, w0), config), Error);
  config.revise = true;
  const auto r = evaluate_candidate_layers(m, {w0, w1}, resolve_initials(m, w0), config);
  ASSERT_EQ(r.diagnoses.size(), 1u);
  EXPECT_NEAR(r.diagnoses[0].revised_step_conditionals[0], 1.0, kExact);
  EXPECT_NEAR(*r.diagnoses[0].revised_joint, 1.0, kExact);
}

// ---- properties ----------------------------------------------------------

std::vector<double> random_joints(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> n(1, 12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> j(n(rng));
  for (auto& x : j) x = u(rng) < 0.2 ? 0.0 : u(rng) * u(rng);
  if (std::all_of(j.begin(), j.end(), [](double x) { return x == 0.0; })) j[0] = 0.01;
  return j;
}

TEST(RevisionProperty, RevisedJointsSumToOne) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto j = random_joints(rng);
    const auto r = revise_global(j, j);
    const auto rj = values(r.joints);
    ASSERT_NEAR(std::accumulate(rj.begin(), rj.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(RevisionProperty, PreservesRankingAndZeros) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto j = random_joints(rng);
    const auto rj = values(revise_global(j, j).joints);
    for (std::size_t a = 0; a < j.size(); ++a) {
      ASSERT_EQ(j[a] == 0.0, rj[a] == 0.0);
      for (std::size_t b = 0; b < j.size(); ++b) {
        if (j[a] < j[b]) ASSERT_LT(rj[a], rj[b]);
      }
    }
  }
}

TEST(RevisionProperty, Idempotent) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto j = random_joints(rng);
    const auto once = values(revise_global(j, j).joints);
    const auto twice = revise_global(once, once);
    ASSERT_NEAR(twice.factor, 1.0, 1e-12);
    const auto tj = values(twice.joints);
    for (std::size_t i = 0; i < j.size(); ++i) ASSERT_NEAR(tj[i], once[i], 1e-12);
  }
}

TEST(RevisionProperty, MassFactorIsReciprocalOfAdmittedMass) {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::vector<double> p(n);
    for (auto& x : p) x = u(rng) + 1e-3;
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= s;
    const ModeDistribution pi(p);
    std::vector<std::size_t> admitted;
    for (std::size_t i = 0; i < n; ++i) {
      if (u(rng) < 0.5) admitted.push_back(i);
    }
    if (admitted.empty()) admitted.push_back(n - 1);
    double mass = 0.0;
    for (auto i : admitted) mass += p[i];
    ASSERT_NEAR(component_mass_factor(pi, admitted), 1.0 / mass, 1e-9);
    const auto post = posterior_component_distribution(pi, admitted);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += post[i];
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(RevisionProperty, EngineRevisionIsAPositiveRescaling) {
  std::mt19937_64 rng(97);
  std::size_t checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const SystemModel m = validate_model(testing::random_model(rng, 3, 4, 4));
    std::vector<std::vector<ModeAssignment>> layers;
    TimePoint t = std::uniform_int_distribution<TimePoint>(0, 2)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t l = 0; l < k; ++l) {
      if (l > 0) t += std::uniform_int_distribution<TimePoint>(1, 3)(rng);
      std::set<std::vector<std::size_t>> chosen;
      for (int i = 0; i < 6; ++i) {
        std::vector<std::size_t> modes;
        for (const auto& c : m.components()) {
          modes.push_back(std::uniform_int_distribution<std::size_t>(0, c.modes.size() - 1)(rng));
        }
        chosen.insert(modes);
      }
      std::vector<ModeAssignment> layer;
      for (const auto& modes : chosen) layer.push_back({t, modes});
      layers.push_back(std::move(layer));
    }
    const ResolvedInitials init = layers[0][0].t == 0 ? resolve_initials(m, layers[0]) : resolve_initials(m);
    EngineConfig config;
    config.revise = true;
    TemporalResult r;
    try {
      r = evaluate_candidate_layers(m, layers, init, config);
    } catch (const Error& e) {
      ASSERT_TRUE(e.code() == ErrorCode::AllZeroJoints || e.code() == ErrorCode::ZeroAdmittedMass) << e.what();
      continue;
    }
    ++checked;
    double total = 0.0;
    double ratio = 0.0;
    for (const auto& d : r.diagnoses) {
      total += *d.revised_joint;
      if (d.joint_probability > 0.0) {
        const double q = *d.revised_joint / d.joint_probability;
        if (ratio == 0.0) ratio = q;
        ASSERT_NEAR(q, ratio, 1e-9 * ratio);
      } else {
        ASSERT_EQ(*d.revised_joint, 0.0);
      }
    }
    ASSERT_NEAR(total, 1.0, 1e-9);
    if (r.diagnoses.size() == 1) ASSERT_NEAR(*r.diagnoses[0].revised_joint, 1.0, 1e-9);
  }
  EXPECT_GT(checked, 500u);
}

}  // namespace
}  // namespace chronodiag
