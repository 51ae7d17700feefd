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

#ifndef CHRONODIAG_TESTS_ORACLES_HPP_
#define CHRONODIAG_TESTS_ORACLES_HPP_

// Test-only oracles. Nothing here calls into the library's numeric kernels:
// exact rational arithmetic, naive repeated multiplication, Warshall closure
// and name-based brute-force rule evaluation.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chronodiag/model.hpp"

namespace chronodiag::testing {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix rational_product(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] = c[i][j] + a[i][k] * b[k][j];
  return c;
}

inline std::vector<Rational> rational_row_times(const std::vector<Rational>& v, const RationalMatrix& m) {
  std::vector<Rational> out(v.size(), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = out[j] + v[i] * m[i][j];
  return out;
}

// Chains of the water pump P and the container C, mode order
// as declared in tests/data/hydraulic.json.
inline RationalMatrix pump_matrix() {
  return {{1, 0, 0, 0, 0},
          {0, 1, 0, 0, 0},
          {Rational(1, 5), 0, Rational(4, 5), 0, 0},
          {0, Rational(2, 5), 0, Rational(3, 5), 0},
          {Rational(1, 50), 0, Rational(1, 25), Rational(1, 25), Rational(9, 10)}};
}

inline RationalMatrix container_matrix() {
  return {{1, 0, 0}, {Rational(3, 10), Rational(7, 10), 0}, {0, Rational(1, 10), Rational(9, 10)}};
}

inline std::vector<std::vector<double>> to_double(const RationalMatrix& m) {
  std::vector<std::vector<double>> out;
  for (const auto& r : m) {
    std::vector<double> row;
    for (const auto& x : r) row.push_back(x.value());
    out.push_back(row);
  }
  return out;
}

using DenseMatrix = std::vector<std::vector<double>>;

inline DenseMatrix naive_product(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.size();
  DenseMatrix c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// P^n by n-1 successive multiplications.
inline DenseMatrix naive_power(const DenseMatrix& m, std::uint64_t n) {
  const std::size_t k = m.size();
  DenseMatrix r(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) r[i][i] = 1.0;
  for (std::uint64_t s = 0; s < n; ++s) r = naive_product(r, m);
  return r;
}

// Random row-stochastic matrix with roughly `zero_fraction` of entries forced
// to 0 (every row keeps at least one positive entry).
inline DenseMatrix random_stochastic(std::mt19937_64& rng, std::size_t n, double zero_fraction = 0.4) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  DenseMatrix m(n, std::vector<double>(n, 0.0));
  for (auto& row : m) {
    double sum = 0.0;
    for (auto& x : row) {
      x = u(rng) < zero_fraction ? 0.0 : u(rng);
      sum += x;
    }
    if (sum == 0.0) {
      row[pick(rng)] = 1.0;
      sum = 1.0;
    }
    for (auto& x : row) x /= sum;
    // Pin the sum to exactly representable 1 by absorbing round-off.
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] > 0.0) last = j;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j != last) acc += row[j];
    }
    row[last] = std::max(0.0, 1.0 - acc);
  }
  return m;
}

// reach[i][j]: j reachable from i in one or more positive steps (Warshall).
inline std::vector<std::vector<bool>> transitive_closure(const DenseMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = m[i][j] > 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

struct ClosureClassification {
  std::vector<int> label;  // 0 absorbing, 1 ergodic non-absorbing, 2 transient
  std::set<std::set<std::size_t>> ergodic_sets;
};

// A mode is ergodic iff every mode it reaches reaches it back.
inline ClosureClassification classify_by_closure(const DenseMatrix& m) {
  const std::size_t n = m.size();
  const auto r = transitive_closure(m);
  ClosureClassification out;
  out.label.assign(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    bool closed = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (r[i][j] && !r[j][i]) closed = false;
    }
    // A mode with no positive self-return is still its own class.
    if (!closed) continue;
    std::set<std::size_t> cls{i};
    for (std::size_t j = 0; j < n; ++j) {
      if (r[i][j] && r[j][i]) cls.insert(j);
    }
    out.ergodic_sets.insert(cls);
    out.label[i] = (cls.size() == 1 && m[i][i] == 1.0) ? 0 : 1;
  }
  return out;
}

// Name-level brute force over a ModelDecl: every assignment (component order
// as in the decl sorted by id) with its predicted atom names.
struct BruteAssignment {
  std::map<std::string, std::string> modes;  // component id -> mode name
  std::set<std::string> predicted;
};

inline std::vector<BruteAssignment> brute_force_assignments(const ModelDecl& decl) {
  std::vector<const ComponentDecl*> comps;
  for (const auto& c : decl.components) comps.push_back(&c);
  std::sort(comps.begin(), comps.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::vector<BruteAssignment> out;
  std::vector<std::size_t> idx(comps.size(), 0);
  while (true) {
    BruteAssignment a;
    for (std::size_t c = 0; c < comps.size(); ++c) a.modes[comps[c]->id] = comps[c]->modes[idx[c]];
    for (const auto& r : decl.rules) {
      bool fires = true;
      for (const auto& atom : r.body) fires = fires && a.modes.at(atom.component) == atom.mode;
      if (fires) a.predicted.insert(r.head);
    }
    out.push_back(std::move(a));
    std::size_t c = comps.size();
    bool done = true;
    while (c > 0) {
      --c;
      if (++idx[c] < comps[c]->modes.size()) {
        done = false;
        break;
      }
      idx[c] = 0;
    }
    if (done) return out;
  }
}

inline bool brute_explains(const BruteAssignment& a, const ModelDecl& decl,
                           const std::set<std::string>& present, const std::set<std::string>& absent,
                           bool abductive) {
  for (const auto& x : absent) {
    if (a.predicted.count(x)) return false;
  }
  for (const auto& x : present) {
    if (abductive && !a.predicted.count(x)) return false;
  }
  for (const auto& [u, v] : decl.exclusive) {
    if (present.count(u) && a.predicted.count(v)) return false;
    if (present.count(v) && a.predicted.count(u)) return false;
  }
  return true;
}

// Random small model: <= 3 components, <= 4 modes, <= 10 rules over atoms
// a0..a5, a couple of exclusive pairs.
inline ModelDecl random_model(std::mt19937_64& rng, std::size_t max_components = 3,
                              std::size_t max_modes = 4, std::size_t max_rules = 10) {
  std::uniform_int_distribution<std::size_t> ncomp(1, max_components);
  std::uniform_int_distribution<std::size_t> nmode(1, max_modes);
  std::uniform_int_distribution<std::size_t> nrule(0, max_rules);
  std::uniform_int_distribution<int> atom(0, 5);
  std::bernoulli_distribution coin(0.5);
  ModelDecl d;
  const std::size_t k = ncomp(rng);
  for (std::size_t c = 0; c < k; ++c) {
    ComponentDecl cd;
    cd.id = "c" + std::to_string(c);
    const std::size_t m = nmode(rng);
    for (std::size_t i = 0; i < m; ++i) cd.modes.push_back("m" + std::to_string(i));
    cd.correct_mode = cd.modes.back();
    cd.matrix = random_stochastic(rng, m);
    d.components.push_back(std::move(cd));
  }
  std::set<std::string> heads;
  const std::size_t r = nrule(rng);
  for (std::size_t i = 0; i < r; ++i) {
    RuleDecl rd;
    for (const auto& c : d.components) {
      if (rd.body.empty() || coin(rng)) {
        std::uniform_int_distribution<std::size_t> pm(0, c.modes.size() - 1);
        rd.body.push_back({c.id, c.modes[pm(rng)]});
        if (coin(rng)) break;
      }
    }
    rd.head = "a" + std::to_string(atom(rng));
    heads.insert(rd.head);
    d.rules.push_back(std::move(rd));
  }
  std::vector<std::string> hv(heads.begin(), heads.end());
  if (hv.size() >= 2 && coin(rng)) d.exclusive.emplace_back(hv[0], hv[1]);
  if (hv.size() >= 3 && coin(rng)) d.exclusive.emplace_back(hv[1], hv[2]);
  return d;
}

}  // namespace chronodiag::testing

#endif  // CHRONODIAG_TESTS_ORACLES_HPP_
