// Copyright 2026 The traceineq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace traceineq {

// Reason codes carried by NumericError. Campaign runners tally skipped
// evaluations by the token string (errc_token), so tokens are stable API.
enum class Errc {
  kNonHermitian,
  kEigenFailure,
  kNegativeSpectrum,
  kDimMismatch,
  kImagResidual,
  kNonpositiveTrace,
  kSingularMixture,
  kSingularSum,
  kSingularState,
  kContractionViolation,
  kDomainViolation,
  kNonpositiveInput,
  kUnknownInequality,
  kInvalidConfig,
};

const char* errc_token(Errc code) noexcept;

class NumericError : public std::runtime_error {
 public:
  NumericError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw NumericError(code, what);
}

}  // namespace traceineq
