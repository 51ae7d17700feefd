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

#include "chronodiag/error.hpp"

namespace chronodiag {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::RowSumViolation: return "RowSumViolation";
    case ErrorCode::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::AbsorbingSojourn: return "AbsorbingSojourn";
    case ErrorCode::NoCorrectMode: return "NoCorrectMode";
    case ErrorCode::DuplicateComponent: return "DuplicateComponent";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::UnknownModeAtom: return "UnknownModeAtom";
    case ErrorCode::MatrixInvalid: return "MatrixInvalid";
    case ErrorCode::CorrectModeMissing: return "CorrectModeMissing";
    case ErrorCode::InvalidRule: return "InvalidRule";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::UnsortedStream: return "UnsortedStream";
    case ErrorCode::ContradictoryObservation: return "ContradictoryObservation";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::EmptyStream: return "EmptyStream";
    case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::WeightSumViolation: return "WeightSumViolation";
    case ErrorCode::MissingInitialDistribution: return "MissingInitialDistribution";
    case ErrorCode::NonIncreasingInstants: return "NonIncreasingInstants";
    case ErrorCode::NoCandidatesAtInstant: return "NoCandidatesAtInstant";
    case ErrorCode::NoAdmissibleEvolution: return "NoAdmissibleEvolution";
    case ErrorCode::AllZeroJoints: return "AllZeroJoints";
    case ErrorCode::ZeroAdmittedMass: return "ZeroAdmittedMass";
    case ErrorCode::InstantOutOfRange: return "InstantOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string element, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      element_(std::move(element)) {}

}  // namespace chronodiag
