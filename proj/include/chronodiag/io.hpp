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

#ifndef CHRONODIAG_IO_HPP_
#define CHRONODIAG_IO_HPP_

// JSON file formats.
//
//   model:        {"components": [{"id", "modes", "correct_mode", "matrix",
//                                  "initial_distribution"?}],
//                  "rules": [{"body": [{"component", "mode"}], "head"}],
//                  "exclusive": [[atom, atom]]}
//   observations: [{"t", "present": [atom], "absent": [atom]}]
//   trajectories: {"trajectories": [[{"t", "assignment": {component: mode}}]]}
//
// Probabilities are JSON numbers or strings holding a decimal or an exact
// fraction "a/b".

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "chronodiag/atemporal.hpp"
#include "chronodiag/model.hpp"

namespace chronodiag {

using Json = nlohmann::ordered_json;

// Throws Error{ParseError} naming `where`.
double parse_probability(const Json& value, const std::string& where);

ModelDecl model_from_json(const Json& j);
Json model_to_json(const ModelDecl& decl);

std::vector<ObservationDecl> observations_from_json(const Json& j);
Json observations_to_json(const std::vector<ObservationDecl>& entries);

ModeAssignment assignment_from_json(const SystemModel& model, const Json& j, TimePoint t,
                                    const std::string& where);
Json assignment_to_json(const SystemModel& model, const ModeAssignment& w);

std::vector<std::vector<ModeAssignment>> trajectories_from_json(const SystemModel& model,
                                                                const Json& j);

// Reads and parses a JSON file. Throws Error{ParseError}.
Json read_json_file(const std::filesystem::path& path);

SystemModel load_model(const std::filesystem::path& path);
ObservationStream load_observations(const SystemModel& model, const std::filesystem::path& path);

}  // namespace chronodiag

#endif  // CHRONODIAG_IO_HPP_
