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

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "chronodiag/error.hpp"

namespace chronodiag {
namespace {

std::string component_element(std::string_view id) { return "component " + std::string(id); }

std::string rule_element(std::size_t r) { return "rule " + std::to_string(r); }

void sort_unique(std::vector<AtomId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

ComponentSpec validate_component(const ComponentDecl& d) {
  const std::string where = component_element(d.id);
  if (d.modes.empty()) throw Error(ErrorCode::InvalidArgument, where, "component declares no modes");
  std::set<std::string> seen;
  for (const auto& m : d.modes) {
    if (!seen.insert(m).second) {
      throw Error(ErrorCode::InvalidArgument, where + " mode " + m, "mode declared twice");
    }
  }
  ComponentSpec c;
  c.id = d.id;
  c.modes = d.modes;
  const auto correct = std::find(d.modes.begin(), d.modes.end(), d.correct_mode);
  if (correct == d.modes.end()) {
    throw Error(ErrorCode::CorrectModeMissing, where,
                "correct mode '" + d.correct_mode + "' is not one of the declared modes");
  }
  c.correct_mode = static_cast<std::size_t>(correct - d.modes.begin());
  if (d.matrix.size() != d.modes.size()) {
    throw Error(ErrorCode::MatrixInvalid, where + " matrix",
                "matrix has " + std::to_string(d.matrix.size()) + " rows for " +
                    std::to_string(d.modes.size()) + " modes");
  }
  try {
    c.matrix = validate_matrix(d.matrix);
  } catch (const Error& e) {
    throw Error(ErrorCode::MatrixInvalid, where + " " + e.element(), e.what());
  }
  if (d.initial_distribution) {
    if (d.initial_distribution->size() != d.modes.size()) {
      throw Error(ErrorCode::InvalidDistribution, where + " initial_distribution",
                  "distribution has " + std::to_string(d.initial_distribution->size()) +
                      " entries for " + std::to_string(d.modes.size()) + " modes");
    }
    try {
      c.initial_distribution = ModeDistribution(*d.initial_distribution);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidDistribution, where + " initial_distribution", e.what());
    }
  }
  return c;
}

}  // namespace

std::optional<std::size_t> ComponentSpec::mode_index(std::string_view mode) const {
  const auto it = std::find(modes.begin(), modes.end(), mode);
  if (it == modes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - modes.begin());
}

std::vector<FaultClass> classify_faults(const ComponentSpec& c) {
  return classify_faults(c.matrix, c.correct_mode);
}

std::optional<std::size_t> SystemModel::component_index(std::string_view id) const {
  const auto it = std::lower_bound(components_.begin(), components_.end(), id,
                                   [](const ComponentSpec& c, std::string_view v) { return c.id < v; });
  if (it == components_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - components_.begin());
}

std::optional<AtomId> SystemModel::atom_id(std::string_view name) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end() || *it != name) return std::nullopt;
  return static_cast<AtomId>(it - atoms_.begin());
}

std::uint64_t SystemModel::assignment_space() const noexcept {
  std::uint64_t total = 1;
  for (const auto& c : components_) {
    const std::uint64_t k = c.modes.size();
    if (total > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= k;
  }
  return total;
}

SystemModel validate_model(const ModelDecl& decl) {
  SystemModel model;
  std::set<std::string> ids;
  for (const auto& d : decl.components) {
    if (!ids.insert(d.id).second) {
      throw Error(ErrorCode::DuplicateComponent, component_element(d.id),
                  "component id declared more than once");
    }
    model.components_.push_back(validate_component(d));
  }
  std::sort(model.components_.begin(), model.components_.end(),
            [](const ComponentSpec& a, const ComponentSpec& b) { return a.id < b.id; });

  std::set<std::string> heads;
  for (std::size_t r = 0; r < decl.rules.size(); ++r) {
    if (decl.rules[r].head.empty()) {
      throw Error(ErrorCode::InvalidRule, rule_element(r), "rule head is empty");
    }
    heads.insert(decl.rules[r].head);
  }
  model.atoms_.assign(heads.begin(), heads.end());

  for (std::size_t r = 0; r < decl.rules.size(); ++r) {
    const RuleDecl& rd = decl.rules[r];
    if (rd.body.empty()) throw Error(ErrorCode::InvalidRule, rule_element(r), "rule body is empty");
    HornRule rule;
    for (const auto& atom : rd.body) {
      const auto c = model.component_index(atom.component);
      if (!c) {
        throw Error(ErrorCode::UnknownModeAtom,
                    rule_element(r) + " atom " + atom.mode + "(" + atom.component + ")",
                    "component '" + atom.component + "' is not declared");
      }
      const auto m = model.components_[*c].mode_index(atom.mode);
      if (!m) {
        throw Error(ErrorCode::UnknownModeAtom,
                    rule_element(r) + " atom " + atom.mode + "(" + atom.component + ")",
                    "mode '" + atom.mode + "' is not declared for component '" + atom.component + "'");
      }
      rule.body.push_back({*c, *m});
    }
    std::sort(rule.body.begin(), rule.body.end(),
              [](const ModeAtom& a, const ModeAtom& b) { return a.component < b.component; });
    for (std::size_t i = 1; i < rule.body.size(); ++i) {
      if (rule.body[i].component == rule.body[i - 1].component) {
        throw Error(ErrorCode::InvalidRule, rule_element(r),
                    "component '" + model.components_[rule.body[i].component].id +
                        "' appears twice in the body");
      }
    }
    rule.head = *model.atom_id(rd.head);
    model.rules_.push_back(std::move(rule));
  }

  model.exclusive_.assign(model.atoms_.size(), {});
  for (std::size_t i = 0; i < decl.exclusive.size(); ++i) {
    const auto& [a, b] = decl.exclusive[i];
    const auto ia = model.atom_id(a);
    const auto ib = model.atom_id(b);
    const std::string where = "exclusive pair " + std::to_string(i);
    if (!ia) throw Error(ErrorCode::UnknownAtom, where, "'" + a + "' is not the head of any rule");
    if (!ib) throw Error(ErrorCode::UnknownAtom, where, "'" + b + "' is not the head of any rule");
    if (*ia == *ib) throw Error(ErrorCode::InvalidRule, where, "atom cannot exclude itself");
    model.exclusive_[*ia].push_back(*ib);
    model.exclusive_[*ib].push_back(*ia);
    model.exclusive_pairs_.emplace_back(*ia, *ib);
  }
  for (auto& v : model.exclusive_) sort_unique(v);
  return model;
}

ModelDecl to_decl(const SystemModel& model) {
  ModelDecl decl;
  for (const auto& c : model.components()) {
    ComponentDecl d;
    d.id = c.id;
    d.modes = c.modes;
    d.correct_mode = c.modes[c.correct_mode];
    d.matrix = c.matrix.to_rows();
    if (c.initial_distribution) {
      const auto p = c.initial_distribution->probabilities();
      d.initial_distribution = std::vector<double>(p.begin(), p.end());
    }
    decl.components.push_back(std::move(d));
  }
  for (const auto& r : model.rules()) {
    RuleDecl rd;
    for (const auto& a : r.body) {
      const auto& c = model.component(a.component);
      rd.body.push_back({c.id, c.modes[a.mode]});
    }
    rd.head = model.atoms()[r.head];
    decl.rules.push_back(std::move(rd));
  }
  for (const auto& [a, b] : model.exclusive_pairs()) {
    decl.exclusive.emplace_back(model.atoms()[a], model.atoms()[b]);
  }
  return decl;
}

namespace {

void check_entries(const SystemModel& model, const std::vector<Observation>& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Observation& o = entries[i];
    const std::string where = "observation t=" + std::to_string(o.t);
    if (i > 0 && o.t <= entries[i - 1].t) {
      throw Error(ErrorCode::UnsortedStream, where,
                  "time points must be strictly increasing (previous t=" +
                      std::to_string(entries[i - 1].t) + ")");
    }
    std::vector<AtomId> both;
    std::set_intersection(o.present.begin(), o.present.end(), o.absent.begin(), o.absent.end(),
                          std::back_inserter(both));
    if (!both.empty()) {
      throw Error(ErrorCode::ContradictoryObservation, where,
                  "atom '" + model.atoms()[both.front()] + "' is both present and absent");
    }
  }
}

std::vector<AtomId> resolve_atoms(const SystemModel& model, const std::vector<std::string>& names,
                                  const std::string& where) {
  std::vector<AtomId> ids;
  for (const auto& n : names) {
    const auto id = model.atom_id(n);
    if (!id) throw Error(ErrorCode::UnknownAtom, where, "'" + n + "' is not the head of any rule");
    ids.push_back(*id);
  }
  sort_unique(ids);
  return ids;
}

}  // namespace

ObservationStream validate_stream(const SystemModel& model,
                                  const std::vector<ObservationDecl>& entries) {
  std::vector<Observation> resolved;
  resolved.reserve(entries.size());
  for (const auto& e : entries) {
    const std::string where = "observation t=" + std::to_string(e.t);
    resolved.push_back({e.t, resolve_atoms(model, e.present, where),
                        resolve_atoms(model, e.absent, where)});
  }
  check_entries(model, resolved);
  ObservationStream s;
  s.entries_ = std::move(resolved);
  return s;
}

ObservationStream make_stream(const SystemModel& model, std::vector<Observation> entries) {
  for (auto& e : entries) {
    for (AtomId a : e.present) {
      if (a >= model.atoms().size()) throw Error(ErrorCode::UnknownAtom, "observation", "atom id out of range");
    }
    for (AtomId a : e.absent) {
      if (a >= model.atoms().size()) throw Error(ErrorCode::UnknownAtom, "observation", "atom id out of range");
    }
    sort_unique(e.present);
    sort_unique(e.absent);
  }
  check_entries(model, entries);
  ObservationStream s;
  s.entries_ = std::move(entries);
  return s;
}

std::vector<ObservationDecl> to_decl(const SystemModel& model, const ObservationStream& stream) {
  std::vector<ObservationDecl> out;
  for (const auto& e : stream.entries()) {
    ObservationDecl d;
    d.t = e.t;
    for (AtomId a : e.present) d.present.push_back(model.atoms()[a]);
    for (AtomId a : e.absent) d.absent.push_back(model.atoms()[a]);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace chronodiag
