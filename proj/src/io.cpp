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

#include "chronodiag/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "chronodiag/error.hpp"

namespace chronodiag {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw Error(ErrorCode::ParseError, where, message);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> as_strings(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_string(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::uint64_t as_time(const Json& v, const std::string& where) {
  const bool nonnegative =
      v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
  if (!nonnegative) {
    fail(where, "expected a nonnegative integer time point");
  }
  return v.get<std::uint64_t>();
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::vector<double> probability_row(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of probabilities");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(parse_probability(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

double parse_probability(const Json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) fail(where, "expected a number or a fraction string");
  const std::string s = value.get<std::string>();
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const auto num = parse_int(std::string_view(s).substr(0, slash));
    const auto den = parse_int(std::string_view(s).substr(slash + 1));
    if (!num || !den) fail(where, "malformed fraction '" + s + "'");
    if (*den <= 0) fail(where, "fraction '" + s + "' has a nonpositive denominator");
    // Both parts are exact integers, so the quotient is correctly rounded.
    return static_cast<double>(*num) / static_cast<double>(*den);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(where, "malformed probability '" + s + "'");
  }
  return v;
}

ModelDecl model_from_json(const Json& j) {
  ModelDecl decl;
  const Json& comps = member(j, "components", "model");
  if (!comps.is_array()) fail("components", "expected an array");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string where = "components[" + std::to_string(i) + "]";
    const Json& c = comps[i];
    ComponentDecl d;
    d.id = as_string(member(c, "id", where), where + ".id");
    d.modes = as_strings(member(c, "modes", where), where + ".modes");
    d.correct_mode = as_string(member(c, "correct_mode", where), where + ".correct_mode");
    const Json& m = member(c, "matrix", where);
    if (!m.is_array()) fail(where + ".matrix", "expected an array of rows");
    for (std::size_t r = 0; r < m.size(); ++r) {
      d.matrix.push_back(probability_row(m[r], where + ".matrix[" + std::to_string(r) + "]"));
    }
    if (const auto it = c.find("initial_distribution"); it != c.end() && !it->is_null()) {
      d.initial_distribution = probability_row(*it, where + ".initial_distribution");
    }
    decl.components.push_back(std::move(d));
  }
  if (const auto it = j.find("rules"); it != j.end()) {
    if (!it->is_array()) fail("rules", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "rules[" + std::to_string(i) + "]";
      const Json& r = (*it)[i];
      RuleDecl rd;
      const Json& body = member(r, "body", where);
      if (!body.is_array()) fail(where + ".body", "expected an array of mode atoms");
      for (std::size_t b = 0; b < body.size(); ++b) {
        const std::string bw = where + ".body[" + std::to_string(b) + "]";
        rd.body.push_back({as_string(member(body[b], "component", bw), bw + ".component"),
                           as_string(member(body[b], "mode", bw), bw + ".mode")});
      }
      rd.head = as_string(member(r, "head", where), where + ".head");
      decl.rules.push_back(std::move(rd));
    }
  }
  if (const auto it = j.find("exclusive"); it != j.end()) {
    if (!it->is_array()) fail("exclusive", "expected an array of atom pairs");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "exclusive[" + std::to_string(i) + "]";
      const auto pair = as_strings((*it)[i], where);
      if (pair.size() != 2) fail(where, "expected exactly two atoms");
      decl.exclusive.emplace_back(pair[0], pair[1]);
    }
  }
  return decl;
}

Json model_to_json(const ModelDecl& decl) {
  Json comps = Json::array();
  for (const auto& c : decl.components) {
    Json jc;
    jc["id"] = c.id;
    jc["modes"] = c.modes;
    jc["correct_mode"] = c.correct_mode;
    jc["matrix"] = c.matrix;
    if (c.initial_distribution) jc["initial_distribution"] = *c.initial_distribution;
    comps.push_back(std::move(jc));
  }
  Json rules = Json::array();
  for (const auto& r : decl.rules) {
    Json body = Json::array();
    for (const auto& a : r.body) body.push_back({{"component", a.component}, {"mode", a.mode}});
    rules.push_back({{"body", std::move(body)}, {"head", r.head}});
  }
  Json exclusive = Json::array();
  for (const auto& [a, b] : decl.exclusive) exclusive.push_back({a, b});
  Json j;
  j["components"] = std::move(comps);
  j["rules"] = std::move(rules);
  j["exclusive"] = std::move(exclusive);
  return j;
}

std::vector<ObservationDecl> observations_from_json(const Json& j) {
  if (!j.is_array()) fail("observations", "expected an array of entries");
  std::vector<ObservationDecl> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "observations[" + std::to_string(i) + "]";
    ObservationDecl d;
    d.t = as_time(member(j[i], "t", where), where + ".t");
    if (const auto it = j[i].find("present"); it != j[i].end()) d.present = as_strings(*it, where + ".present");
    if (const auto it = j[i].find("absent"); it != j[i].end()) d.absent = as_strings(*it, where + ".absent");
    out.push_back(std::move(d));
  }
  return out;
}

Json observations_to_json(const std::vector<ObservationDecl>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) {
    Json j;
    j["t"] = e.t;
    j["present"] = e.present;
    j["absent"] = e.absent;
    out.push_back(std::move(j));
  }
  return out;
}

ModeAssignment assignment_from_json(const SystemModel& model, const Json& j, TimePoint t,
                                    const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object mapping component ids to modes");
  ModeAssignment w{t, std::vector<std::size_t>(model.component_count(), 0)};
  std::vector<bool> seen(model.component_count(), false);
  for (const auto& [key, value] : j.items()) {
    const auto c = model.component_index(key);
    if (!c) throw Error(ErrorCode::UnknownComponent, where + "." + key, "component is not declared");
    const std::string mode = as_string(value, where + "." + key);
    const auto m = model.component(*c).mode_index(mode);
    if (!m) {
      throw Error(ErrorCode::UnknownModeAtom, where + "." + key,
                  "mode '" + mode + "' is not declared for component '" + key + "'");
    }
    w.modes[*c] = *m;
    seen[*c] = true;
  }
  for (std::size_t c = 0; c < seen.size(); ++c) {
    if (!seen[c]) fail(where, "assignment does not cover component '" + model.component(c).id + "'");
  }
  return w;
}

Json assignment_to_json(const SystemModel& model, const ModeAssignment& w) {
  Json j = Json::object();
  for (std::size_t c = 0; c < w.modes.size(); ++c) {
    j[model.component(c).id] = model.component(c).modes[w.modes[c]];
  }
  return j;
}

std::vector<std::vector<ModeAssignment>> trajectories_from_json(const SystemModel& model,
                                                                const Json& j) {
  const Json& list = member(j, "trajectories", "trajectories file");
  if (!list.is_array()) fail("trajectories", "expected an array of trajectories");
  std::vector<std::vector<ModeAssignment>> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "trajectories[" + std::to_string(i) + "]";
    if (!list[i].is_array() || list[i].empty()) fail(where, "expected a nonempty array of steps");
    std::vector<ModeAssignment> traj;
    for (std::size_t k = 0; k < list[i].size(); ++k) {
      const std::string sw = where + "[" + std::to_string(k) + "]";
      const TimePoint t = as_time(member(list[i][k], "t", sw), sw + ".t");
      traj.push_back(assignment_from_json(model, member(list[i][k], "assignment", sw), t,
                                          sw + ".assignment"));
    }
    out.push_back(std::move(traj));
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path.string(), e.what());
  }
}

SystemModel load_model(const std::filesystem::path& path) {
  return validate_model(model_from_json(read_json_file(path)));
}

ObservationStream load_observations(const SystemModel& model, const std::filesystem::path& path) {
  return validate_stream(model, observations_from_json(read_json_file(path)));
}

}  // namespace chronodiag
