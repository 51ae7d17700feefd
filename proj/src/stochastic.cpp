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

#include "chronodiag/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "chronodiag/error.hpp"

namespace chronodiag {
namespace {

// Below this dimension the OpenMP team start-up dominates a product.
constexpr std::size_t kParallelMultiplyMinSize = 64;

std::string row_name(std::size_t i) { return "matrix row " + std::to_string(i); }

}  // namespace

TransitionMatrix TransitionMatrix::identity(std::size_t n) {
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
  return TransitionMatrix(n, std::move(data));
}

std::vector<std::vector<double>> TransitionMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
  return rows;
}

TransitionMatrix validate_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorCode::NotSquare, "matrix", "matrix has no rows");
  std::vector<double> data;
  data.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::NotSquare, row_name(i),
                  "row has " + std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(n));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = rows[i][j];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::EntryOutOfRange, row_name(i),
                    "entry " + std::to_string(j) + " = " + std::to_string(v) +
                        " is outside [0,1]");
      }
      sum += v;
      data.push_back(v);
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance) {
      throw Error(ErrorCode::RowSumViolation, row_name(i),
                  "row sums to " + std::to_string(sum) + ", expected 1");
    }
  }
  return TransitionMatrix(n, std::move(data));
}

TransitionMatrix multiply_serial(const TransitionMatrix& a, const TransitionMatrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "matrix", "cannot multiply matrices of different size");
  }
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b(k, j);
    }
  }
  return TransitionMatrix(n, std::move(c));
}

TransitionMatrix multiply(const TransitionMatrix& a, const TransitionMatrix& b) {
  const std::size_t n = a.size();
  if (n < kParallelMultiplyMinSize) return multiply_serial(a, b);
  if (b.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "matrix", "cannot multiply matrices of different size");
  }
  std::vector<double> c(n * n, 0.0);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    double* out = c.data() + static_cast<std::size_t>(i) * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(static_cast<std::size_t>(i), k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[j] += aik * b(k, j);
    }
  }
  return TransitionMatrix(n, std::move(c));
}

TransitionMatrix matrix_power(const TransitionMatrix& m, std::uint64_t n) {
  TransitionMatrix result = TransitionMatrix::identity(m.size());
  TransitionMatrix base = m;
  bool result_is_identity = true;
  while (n > 0) {
    if (n & 1u) {
      result = result_is_identity ? base : multiply(result, base);
      result_is_identity = false;
    }
    n >>= 1u;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

ModeDistribution::ModeDistribution(std::vector<double> probabilities)
    : p_(std::move(probabilities)) {
  if (p_.empty()) throw Error(ErrorCode::InvalidDistribution, "distribution", "distribution is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(p_[i] >= 0.0 && p_[i] <= 1.0)) {
      throw Error(ErrorCode::InvalidDistribution, "distribution entry " + std::to_string(i),
                  "probability " + std::to_string(p_[i]) + " is outside [0,1]");
    }
    sum += p_[i];
  }
  if (std::abs(sum - 1.0) > kStochasticTolerance) {
    throw Error(ErrorCode::InvalidDistribution, "distribution",
                "probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
}

ModeDistribution ModeDistribution::point(std::size_t size, std::size_t mode) {
  std::vector<double> p(size, 0.0);
  p.at(mode) = 1.0;
  return ModeDistribution(Unchecked{}, std::move(p));
}

ModeDistribution ModeDistribution::uniform(std::size_t size) {
  if (size == 0) throw Error(ErrorCode::InvalidDistribution, "distribution", "distribution is empty");
  return ModeDistribution(Unchecked{}, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

ModeDistribution propagate_distribution(const ModeDistribution& pi0, const TransitionMatrix& m,
                                        std::uint64_t n) {
  if (pi0.size() != m.size()) {
    throw Error(ErrorCode::DimensionMismatch, "distribution",
                "distribution has " + std::to_string(pi0.size()) + " modes, matrix has " +
                    std::to_string(m.size()));
  }
  if (n == 0) return pi0;
  const TransitionMatrix pn = matrix_power(m, n);
  const std::size_t k = m.size();
  std::vector<double> out(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const double w = pi0[i];
    if (w == 0.0) continue;
    for (std::size_t j = 0; j < k; ++j) out[j] += w * pn(i, j);
  }
  return ModeDistribution(ModeDistribution::Unchecked{}, std::move(out));
}

double sojourn_pmf(double p_self, std::uint64_t t) {
  if (!(p_self >= 0.0 && p_self <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "p_self", "self-transition probability outside [0,1]");
  }
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "t", "sojourn time starts at 1");
  if (std::abs(p_self - 1.0) <= kAbsorbingTolerance) {
    throw Error(ErrorCode::AbsorbingSojourn, "p_self", "absorbing mode is never left");
  }
  return std::pow(p_self, static_cast<double>(t - 1)) * (1.0 - p_self);
}

double sojourn_survival(double p_self, std::uint64_t t) {
  return std::pow(p_self, static_cast<double>(t));
}

StateClassification classify_states(const TransitionMatrix& m) {
  const std::size_t n = m.size();
  // Tarjan's algorithm; dimensions are per-component mode counts, so the
  // recursion depth stays small.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> sccs;
  int counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (m(v, w) <= 0.0) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> scc;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = static_cast<int>(sccs.size());
        scc.push_back(w);
      } while (w != v);
      std::sort(scc.begin(), scc.end());
      sccs.push_back(std::move(scc));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }

  std::vector<bool> closed(sccs.size(), true);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) {
      if (m(v, w) > 0.0 && comp[v] != comp[w]) closed[static_cast<std::size_t>(comp[v])] = false;
    }
  }

  StateClassification out;
  out.labels.assign(n, StateLabel::Transient);
  std::vector<std::size_t> order(sccs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return sccs[a].front() < sccs[b].front(); });
  for (std::size_t c : order) {
    const auto& scc = sccs[c];
    if (!closed[c]) {
      out.transient_sets.push_back(scc);
      continue;
    }
    out.ergodic_sets.push_back(scc);
    for (std::size_t v : scc) {
      const bool absorbing = scc.size() == 1 && std::abs(m(v, v) - 1.0) <= kAbsorbingTolerance;
      out.labels[v] = absorbing ? StateLabel::Absorbing : StateLabel::ErgodicNonAbsorbing;
    }
  }
  return out;
}

bool reachable(const TransitionMatrix& m, std::size_t from, std::size_t to) {
  const std::size_t n = m.size();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> frontier{from};
  while (!frontier.empty()) {
    const std::size_t v = frontier.back();
    frontier.pop_back();
    for (std::size_t w = 0; w < n; ++w) {
      if (m(v, w) <= 0.0 || seen[w]) continue;
      if (w == to) return true;
      seen[w] = true;
      frontier.push_back(w);
    }
  }
  return false;
}

std::vector<FaultClass> classify_faults(const TransitionMatrix& m, std::size_t correct_mode) {
  if (correct_mode >= m.size()) {
    throw Error(ErrorCode::NoCorrectMode, "correct_mode", "component has no designated correct mode");
  }
  const StateClassification states = classify_states(m);
  std::vector<FaultClass> out;
  for (std::size_t mode = 0; mode < m.size(); ++mode) {
    if (mode == correct_mode) continue;
    FaultClass f;
    f.mode = mode;
    f.label = states.labels[mode];
    f.permanent = f.label == StateLabel::Absorbing;
    f.transient = f.label == StateLabel::Transient;
    f.reversible = reachable(m, mode, correct_mode);
    out.push_back(f);
  }
  return out;
}

}  // namespace chronodiag
