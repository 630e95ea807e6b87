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

#include <utility>

#include "traceineq/ensembles.hpp"
#include "traceineq/errors.hpp"
#include "traceineq/matcore.hpp"

namespace testsupport {

// Sentinel distinct from every real error code.
inline constexpr traceineq::Errc kNoError = static_cast<traceineq::Errc>(-1);

// Runs f and reports which NumericError code it raised (kNoError if none).
template <typename F>
traceineq::Errc thrown_code(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const traceineq::NumericError& e) {
    return e.code();
  }
  return kNoError;
}

inline traceineq::matcore::Matrix random_hermitian(std::uint64_t seed,
                                                   int dim) {
  traceineq::ensembles::SampleRng rng(seed);
  return traceineq::matcore::hermitize(
      traceineq::ensembles::ginibre(rng, dim));
}

inline traceineq::matcore::Matrix diag2(double a, double b) {
  traceineq::matcore::Matrix m = traceineq::matcore::Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline double frob_diff(const traceineq::matcore::Matrix& x,
                        const traceineq::matcore::Matrix& y) {
  return (x - y).norm();
}

}  // namespace testsupport
