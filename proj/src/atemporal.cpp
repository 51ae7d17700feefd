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

#include "chronodiag/atemporal.hpp"

#include <algorithm>

#include "chronodiag/error.hpp"

namespace chronodiag {
namespace {

bool rule_fires(const HornRule& rule, std::span<const std::size_t> modes) {
  return std::all_of(rule.body.begin(), rule.body.end(),
                     [&](const ModeAtom& a) { return modes[a.component] == a.mode; });
}

// Same test as is_explanation, against a dense predicted-atom mask.
bool explains(const std::vector<char>& predicted, std::span<const AtomId> present,
              std::span<const AtomId> absent, ExplanationCriterion criterion,
              const SystemModel& model) {
  for (AtomId a : absent) {
    if (predicted[a]) return false;
  }
  for (AtomId a : present) {
    if (criterion == ExplanationCriterion::Abductive && !predicted[a]) return false;
    for (AtomId b : model.exclusive_with(a)) {
      if (predicted[b]) return false;
    }
  }
  return true;
}

void fill_mask(const SystemModel& model, std::span<const std::size_t> modes,
               std::vector<char>& mask) {
  std::fill(mask.begin(), mask.end(), 0);
  for (const auto& r : model.rules()) {
    if (rule_fires(r, modes)) mask[r.head] = 1;
  }
}

void check_cap(const SystemModel& model, std::uint64_t cap) {
  const std::uint64_t space = model.assignment_space();
  if (space > cap) {
    throw Error(ErrorCode::SearchSpaceTooLarge, "model",
                "assignment space " + std::to_string(space) + " exceeds the cap of " +
                    std::to_string(cap));
  }
}

}  // namespace

std::string format_assignment(const SystemModel& model, const ModeAssignment& w) {
  std::string s = "{";
  for (std::size_t c = 0; c < w.modes.size(); ++c) {
    if (c) s += ',';
    s += model.component(c).id;
    s += ':';
    s += model.component(c).modes[w.modes[c]];
  }
  s += '}';
  return s;
}

std::vector<AtomId> predicted_manifestations(std::span<const std::size_t> modes,
                                             const SystemModel& model) {
  std::vector<AtomId> out;
  for (const auto& r : model.rules()) {
    if (rule_fires(r, modes)) out.push_back(r.head);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_explanation(std::span<const std::size_t> modes, std::span<const AtomId> present,
                    std::span<const AtomId> absent, ExplanationCriterion criterion,
                    const SystemModel& model) {
  std::vector<char> mask(model.atoms().size(), 0);
  fill_mask(model, modes, mask);
  return explains(mask, present, absent, criterion, model);
}

std::vector<ModeAssignment> solve_atemporal_serial(const SystemModel& model,
                                                   const Observation& obs,
                                                   ExplanationCriterion criterion,
                                                   std::uint64_t cap) {
  check_cap(model, cap);
  const std::size_t n = model.component_count();
  std::vector<ModeAssignment> out;
  std::vector<std::size_t> modes(n, 0);
  std::vector<char> mask(model.atoms().size(), 0);
  while (true) {
    fill_mask(model, modes, mask);
    if (explains(mask, obs.present, obs.absent, criterion, model)) out.push_back({obs.t, modes});
    // Odometer with the last component varying fastest.
    std::size_t c = n;
    while (c > 0) {
      --c;
      if (++modes[c] < model.component(c).modes.size()) break;
      modes[c] = 0;
      if (c == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<ModeAssignment> solve_atemporal(const SystemModel& model, const Observation& obs,
                                            ExplanationCriterion criterion, std::uint64_t cap) {
  check_cap(model, cap);
  const std::size_t n = model.component_count();
  const auto space = static_cast<std::int64_t>(model.assignment_space());
  std::vector<char> hit(static_cast<std::size_t>(space), 0);

#pragma omp parallel
  {
    std::vector<std::size_t> modes(n, 0);
    std::vector<char> mask(model.atoms().size(), 0);
#pragma omp for schedule(static)
    for (std::int64_t flat = 0; flat < space; ++flat) {
      auto rest = static_cast<std::uint64_t>(flat);
      for (std::size_t c = n; c-- > 0;) {
        const std::size_t k = model.component(c).modes.size();
        modes[c] = static_cast<std::size_t>(rest % k);
        rest /= k;
      }
      fill_mask(model, modes, mask);
      hit[static_cast<std::size_t>(flat)] =
          explains(mask, obs.present, obs.absent, criterion, model) ? 1 : 0;
    }
  }

  std::vector<ModeAssignment> out;
  for (std::int64_t flat = 0; flat < space; ++flat) {
    if (!hit[static_cast<std::size_t>(flat)]) continue;
    ModeAssignment w{obs.t, std::vector<std::size_t>(n, 0)};
    auto rest = static_cast<std::uint64_t>(flat);
    for (std::size_t c = n; c-- > 0;) {
      const std::size_t k = model.component(c).modes.size();
      w.modes[c] = static_cast<std::size_t>(rest % k);
      rest /= k;
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace chronodiag
