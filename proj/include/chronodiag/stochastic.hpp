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

#ifndef CHRONODIAG_STOCHASTIC_HPP_
#define CHRONODIAG_STOCHASTIC_HPP_

// Discrete-time Markov chain kernel for a single component: row-stochastic
// matrices, their powers, distribution propagation, geometric sojourn times
// and the structural classification of states and fault modes.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace chronodiag {

inline constexpr double kStochasticTolerance = 1e-9;
inline constexpr double kAbsorbingTolerance = 1e-12;

// Square row-stochastic matrix stored row-major. Instances built through
// validate_matrix() satisfy: every entry in [0,1], every row sums to 1 within
// kStochasticTolerance.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;

  static TransitionMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t from, std::size_t to) const noexcept {
    return data_[from * n_ + to];
  }
  std::span<const double> row(std::size_t from) const noexcept {
    return {data_.data() + from * n_, n_};
  }
  std::span<const double> data() const noexcept { return data_; }

  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  friend TransitionMatrix validate_matrix(const std::vector<std::vector<double>>&);
  friend TransitionMatrix multiply(const TransitionMatrix&, const TransitionMatrix&);
  friend TransitionMatrix multiply_serial(const TransitionMatrix&, const TransitionMatrix&);

  TransitionMatrix(std::size_t n, std::vector<double> data)
      : n_(n), data_(std::move(data)) {}

  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Throws Error{NotSquare | EntryOutOfRange | RowSumViolation}.
TransitionMatrix validate_matrix(const std::vector<std::vector<double>>& rows);

// Matrix product. The OpenMP kernel only forks for matrices large enough to
// amortize the team start-up; multiply_serial is the reference loop.
TransitionMatrix multiply(const TransitionMatrix& a, const TransitionMatrix& b);
TransitionMatrix multiply_serial(const TransitionMatrix& a, const TransitionMatrix& b);

// P^n by exponentiation by squaring; P^0 is the identity.
TransitionMatrix matrix_power(const TransitionMatrix& m, std::uint64_t n);

// Probability vector over a component's ordered modes.
class ModeDistribution {
 public:
  ModeDistribution() = default;

  // Throws Error{InvalidDistribution} unless entries are in [0,1] and sum to
  // 1 within kStochasticTolerance.
  explicit ModeDistribution(std::vector<double> probabilities);

  static ModeDistribution point(std::size_t size, std::size_t mode);
  static ModeDistribution uniform(std::size_t size);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t mode) const noexcept { return p_[mode]; }
  std::span<const double> probabilities() const noexcept { return p_; }

  friend bool operator==(const ModeDistribution&, const ModeDistribution&) = default;

 private:
  struct Unchecked {};
  ModeDistribution(Unchecked, std::vector<double> p) : p_(std::move(p)) {}
  friend ModeDistribution propagate_distribution(const ModeDistribution&,
                                                 const TransitionMatrix&, std::uint64_t);
  friend ModeDistribution posterior_component_distribution(const ModeDistribution&,
                                                           std::span<const std::size_t>);

  std::vector<double> p_;
};

// pi0 * P^n. Throws Error{DimensionMismatch}.
ModeDistribution propagate_distribution(const ModeDistribution& pi0,
                                        const TransitionMatrix& m, std::uint64_t n);

// P(S = t) = p^(t-1) (1 - p) for the geometric sojourn time in a mode whose
// self-transition probability is p. Throws Error{AbsorbingSojourn} for p = 1
// and Error{InvalidArgument} for t = 0 or p outside [0,1].
double sojourn_pmf(double p_self, std::uint64_t t);

// P(S > t) = p^t.
double sojourn_survival(double p_self, std::uint64_t t);

enum class StateLabel { Absorbing, ErgodicNonAbsorbing, Transient };

struct StateClassification {
  std::vector<StateLabel> labels;  // indexed by mode
  // Closed communicating classes, then the remaining (leavable) classes. Each
  // set is sorted ascending; sets are ordered by their smallest member.
  std::vector<std::vector<std::size_t>> ergodic_sets;
  std::vector<std::vector<std::size_t>> transient_sets;
};

// Strongly connected components of the positive-entry digraph; a component
// with no outgoing edge is an ergodic set.
StateClassification classify_states(const TransitionMatrix& m);

// Whether `to` can be reached from `from` by a path of one or more positive
// transitions.
bool reachable(const TransitionMatrix& m, std::size_t from, std::size_t to);

struct FaultClass {
  std::size_t mode = 0;
  StateLabel label = StateLabel::Transient;
  bool permanent = false;
  bool transient = false;
  bool reversible = false;
  bool irreversible() const noexcept { return !reversible; }
};

// One entry per fault mode (every mode except `correct_mode`), in mode order.
// Throws Error{NoCorrectMode} if correct_mode is out of range.
std::vector<FaultClass> classify_faults(const TransitionMatrix& m, std::size_t correct_mode);

}  // namespace chronodiag

#endif  // CHRONODIAG_STOCHASTIC_HPP_
