// Copyright 2026 The qmonty Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmonty {

/// Machine-readable failure categories. The names returned by code_name()
/// are part of the CLI and HTTP error contract.
enum class ErrorCode {
  ExpNotConverged,
  DegenerateSample,
  BadCustomState,
  GammaOutOfRange,
  NonUnitaryStrategy,
  IncoherentBranchOnly,
  NonUnitaryResolution,
  DegenerateFinalState,
  InvalidSpec,
  InvalidMixture,
  UnknownSession,
  RoundConflict,
};

inline std::string_view code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ExpNotConverged: return "ExpNotConverged";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::BadCustomState: return "BadCustomState";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::NonUnitaryStrategy: return "NonUnitaryStrategy";
    case ErrorCode::IncoherentBranchOnly: return "IncoherentBranchOnly";
    case ErrorCode::NonUnitaryResolution: return "NonUnitaryResolution";
    case ErrorCode::DegenerateFinalState: return "DegenerateFinalState";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidMixture: return "InvalidMixture";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::RoundConflict: return "RoundConflict";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qmonty
