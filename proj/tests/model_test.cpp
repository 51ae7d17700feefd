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

#include "chronodiag/model.hpp"

#include <gtest/gtest.h>

#include <random>

#include "chronodiag/error.hpp"
#include "chronodiag/io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace chronodiag {
namespace {

using testing::hydraulic_decl;

Error error_of(const ModelDecl& d) {
  try {
    validate_model(d);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "model unexpectedly validated";
  return Error(ErrorCode::InvalidArgument, "", "");
}

TEST(ValidateModel, AcceptsHydraulicFixture) {
  const SystemModel m = validate_model(hydraulic_decl());
  ASSERT_EQ(m.component_count(), 2u);
  EXPECT_EQ(m.component(testing::kC).id, "C");
  EXPECT_EQ(m.component(testing::kP).id, "P");
  EXPECT_EQ(m.component(testing::kP).modes.size(), 5u);
  EXPECT_EQ(m.component(testing::kP).correct_mode, testing::pump::correct);
  EXPECT_EQ(m.rules().size(), 8u);
  EXPECT_EQ(m.atoms().size(), 6u);
  EXPECT_EQ(m.assignment_space(), 15u);
  const AtomId flow = *m.atom_id("flow_out(P)");
  EXPECT_EQ(m.exclusive_with(flow), std::vector<AtomId>{*m.atom_id("no_flow_out(P)")});
}

TEST(ValidateModel, UnknownModeAtom) {
  ModelDecl d = hydraulic_decl();
  d.rules.push_back({{{"C", "melted"}}, "steam"});
  const Error e = error_of(d);
  EXPECT_EQ(e.code(), ErrorCode::UnknownModeAtom);
  EXPECT_NE(e.element().find("melted"), std::string::npos);
}

TEST(ValidateModel, DuplicateComponent) {
  ModelDecl d = hydraulic_decl();
  d.components[1].id = "P";
  const Error e = error_of(d);
  EXPECT_EQ(e.code(), ErrorCode::DuplicateComponent);
  EXPECT_EQ(e.element(), "component P");
}

TEST(ValidateModel, OtherViolations) {
  {
    ModelDecl d = hydraulic_decl();
    d.components[0].correct_mode = "nominal";
    EXPECT_EQ(error_of(d).code(), ErrorCode::CorrectModeMissing);
  }
  {
    ModelDecl d = hydraulic_decl();
    d.components[1].matrix[1] = {0.5, 0.6, 0.0};
    const Error e = error_of(d);
    EXPECT_EQ(e.code(), ErrorCode::MatrixInvalid);
    EXPECT_NE(std::string(e.what()).find("RowSumViolation"), std::string::npos);
  }
  {
    ModelDecl d = hydraulic_decl();
    d.components[1].initial_distribution = std::vector<double>{0.5, 0.6, 0.0};
    EXPECT_EQ(error_of(d).code(), ErrorCode::InvalidDistribution);
  }
  {
    ModelDecl d = hydraulic_decl();
    d.rules.push_back({{{"P", "correct"}, {"P", "broken"}}, "odd"});
    EXPECT_EQ(error_of(d).code(), ErrorCode::InvalidRule);
  }
  {
    ModelDecl d = hydraulic_decl();
    d.rules.push_back({{}, "odd"});
    EXPECT_EQ(error_of(d).code(), ErrorCode::InvalidRule);
  }
  {
    ModelDecl d = hydraulic_decl();
    d.exclusive.emplace_back("flow_out(P)", "smoke");
    EXPECT_EQ(error_of(d).code(), ErrorCode::UnknownAtom);
  }
  {
    ModelDecl d = hydraulic_decl();
    d.rules.push_back({{{"Q", "correct"}}, "odd"});
    EXPECT_EQ(error_of(d).code(), ErrorCode::UnknownModeAtom);
  }
}

TEST(ValidateModel, RoundTripThroughJson) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const SystemModel m = validate_model(testing::random_model(rng));
    const std::string text = model_to_json(to_decl(m)).dump();
    const SystemModel again = validate_model(model_from_json(Json::parse(text)));
    const ModelDecl a = to_decl(m), b = to_decl(again);
    ASSERT_EQ(model_to_json(a), model_to_json(b));
    for (std::size_t c = 0; c < m.component_count(); ++c) {
      ASSERT_EQ(m.component(c).matrix, again.component(c).matrix);
    }
  }
}

TEST(ValidateStream, AcceptsAndResolves) {
  const SystemModel m = testing::hydraulic_model();
  const auto s = validate_stream(m, {{0, {"flow_out(P)"}, {"no_flow_out(P)"}}, {4, {"water_loss(C)"}, {}}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.entries()[1].t, 4u);
  EXPECT_EQ(s.entries()[1].present, std::vector<AtomId>{*m.atom_id("water_loss(C)")});
}

TEST(ValidateStream, Violations) {
  const SystemModel m = testing::hydraulic_model();
  auto code = [&](const std::vector<ObservationDecl>& e) {
    try {
      validate_stream(m, e);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code({{2, {}, {}}, {2, {}, {}}}), ErrorCode::UnsortedStream);
  EXPECT_EQ(code({{3, {}, {}}, {1, {}, {}}}), ErrorCode::UnsortedStream);
  EXPECT_EQ(code({{0, {"water_loss(C)"}, {"water_loss(C)"}}}), ErrorCode::ContradictoryObservation);
  EXPECT_EQ(code({{0, {"smoke"}, {}}}), ErrorCode::UnknownAtom);
}

}  // namespace
}  // namespace chronodiag
