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

#ifndef CHRONODIAG_ERROR_HPP_
#define CHRONODIAG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace chronodiag {

enum class ErrorCode {
  // Matrices and distributions.
  NotSquare,
  RowSumViolation,
  EntryOutOfRange,
  DimensionMismatch,
  InvalidDistribution,
  AbsorbingSojourn,
  NoCorrectMode,
  // Model and observation validation.
  DuplicateComponent,
  UnknownComponent,
  UnknownModeAtom,
  MatrixInvalid,
  CorrectModeMissing,
  InvalidRule,
  UnknownAtom,
  UnsortedStream,
  ContradictoryObservation,
  // Solving.
  SearchSpaceTooLarge,
  EmptyStream,
  EmptyCandidateSet,
  WeightSumViolation,
  MissingInitialDistribution,
  NonIncreasingInstants,
  NoCandidatesAtInstant,
  NoAdmissibleEvolution,
  AllZeroJoints,
  ZeroAdmittedMass,
  InstantOutOfRange,
  // Ingestion.
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as this exception. `element` names the
// offending piece of input ("component P", "matrix row 2", "t=5") so that the
// CLI can report file, element and violated rule together.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string element, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& element() const noexcept { return element_; }

 private:
  ErrorCode code_;
  std::string element_;
};

}  // namespace chronodiag

#endif  // CHRONODIAG_ERROR_HPP_
