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

#ifndef CHRONODIAG_TESTS_FIXTURES_HPP_
#define CHRONODIAG_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "chronodiag/atemporal.hpp"
#include "chronodiag/io.hpp"
#include "chronodiag/model.hpp"

namespace chronodiag::testing {

inline std::string data_path(const std::string& name) {
  return std::string(CHRONODIAG_TEST_DATA_DIR) + "/" + name;
}

inline ModelDecl hydraulic_decl() { return model_from_json(read_json_file(data_path("hydraulic.json"))); }
inline SystemModel hydraulic_model() { return validate_model(hydraulic_decl()); }

// Canonical component order is by id: C (index 0) then P (index 1).
inline constexpr std::size_t kC = 0;
inline constexpr std::size_t kP = 1;

namespace pump {
inline constexpr std::size_t broken = 0, occluded = 1, leaking = 2, partially_occluded = 3, correct = 4;
}
namespace container {
inline constexpr std::size_t punctured = 0, leaking = 1, correct = 2;
}

inline ModeAssignment at(TimePoint t, std::size_t p_mode, std::size_t c_mode) {
  return ModeAssignment{t, {c_mode, p_mode}};
}

inline Observation observe(const SystemModel& m, TimePoint t, const std::vector<std::string>& present,
                           const std::vector<std::string>& absent = {}) {
  Observation o;
  o.t = t;
  for (const auto& a : present) o.present.push_back(*m.atom_id(a));
  for (const auto& a : absent) o.absent.push_back(*m.atom_id(a));
  std::sort(o.present.begin(), o.present.end());
  std::sort(o.absent.begin(), o.absent.end());
  return o;
}

}  // namespace chronodiag::testing

#endif  // CHRONODIAG_TESTS_FIXTURES_HPP_
