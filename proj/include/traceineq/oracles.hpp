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

#include <span>
#include <vector>

namespace traceineq::oracles {

// Closed forms for commuting inputs, written directly on the shared-basis
// spectra. They never touch eigensolvers or matrix products, which keeps
// them an independent cross-check of the matrix pipeline.
//
// Modes where a or b vanishes contribute their limit value 0.

// Per-mode sum of (a+b)^(s-1) * a * b * (log a - log b)^2.
double trace_margin_commuting(std::span<const double> a,
                              std::span<const double> b, double s);

// Min over modes of a * b * (log a - log b)^2 / (a + b).
double operator_margin_s0_commuting(std::span<const double> a,
                                    std::span<const double> b);

// Min over modes of a * b * (log a - log b)^2. Both open-question sandwich
// orders reduce to this same expression when the pair commutes.
double question_margin_commuting(std::span<const double> a,
                                 std::span<const double> b);

// -sum over modes of a * b * (log a - log b)^2.
double entropy_product_m1_commuting(std::span<const double> a,
                                    std::span<const double> b);

// -sum over modes of a * b * (log a - log b)^2 / (a + b).
double entropy_product_m2_commuting(std::span<const double> a,
                                    std::span<const double> b);

// -log( sum_n ( sum_i w_i * spectra[i][n]^(1/(1+s)) )^(1+s) ) for states
// diagonal in one common basis.
double auxiliary_e_commuting(std::span<const double> weights,
                             const std::vector<std::vector<double>>& spectra,
                             double s);

}  // namespace traceineq::oracles
