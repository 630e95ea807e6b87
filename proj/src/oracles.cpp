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

#include "traceineq/oracles.hpp"

#include <cmath>
#include <limits>

namespace traceineq::oracles {

namespace {

double log_gap_squared(double a, double b) {
  double d = std::log(a) - std::log(b);
  return d * d;
}

}  // namespace

double trace_margin_commuting(std::span<const double> a,
                              std::span<const double> b, double s) {
  double sum = 0.0;
  for (size_t n = 0; n < a.size(); ++n) {
    if (a[n] <= 0.0 || b[n] <= 0.0) continue;
    sum += std::pow(a[n] + b[n], s - 1.0) * a[n] * b[n] *
           log_gap_squared(a[n], b[n]);
  }
  return sum;
}

double operator_margin_s0_commuting(std::span<const double> a,
                                    std::span<const double> b) {
  double lo = std::numeric_limits<double>::infinity();
  for (size_t n = 0; n < a.size(); ++n) {
    double v = (a[n] <= 0.0 || b[n] <= 0.0)
                   ? 0.0
                   : a[n] * b[n] * log_gap_squared(a[n], b[n]) /
                         (a[n] + b[n]);
    lo = std::min(lo, v);
  }
  return lo;
}

double question_margin_commuting(std::span<const double> a,
                                 std::span<const double> b) {
  double lo = std::numeric_limits<double>::infinity();
  for (size_t n = 0; n < a.size(); ++n) {
    double v = (a[n] <= 0.0 || b[n] <= 0.0)
                   ? 0.0
                   : a[n] * b[n] * log_gap_squared(a[n], b[n]);
    lo = std::min(lo, v);
  }
  return lo;
}

double entropy_product_m1_commuting(std::span<const double> a,
                                    std::span<const double> b) {
  double sum = 0.0;
  for (size_t n = 0; n < a.size(); ++n) {
    if (a[n] <= 0.0 || b[n] <= 0.0) continue;
    sum += a[n] * b[n] * log_gap_squared(a[n], b[n]);
  }
  return -sum;
}

double entropy_product_m2_commuting(std::span<const double> a,
                                    std::span<const double> b) {
  double sum = 0.0;
  for (size_t n = 0; n < a.size(); ++n) {
    if (a[n] <= 0.0 || b[n] <= 0.0) continue;
    sum += a[n] * b[n] * log_gap_squared(a[n], b[n]) / (a[n] + b[n]);
  }
  return -sum;
}

double auxiliary_e_commuting(std::span<const double> weights,
                             const std::vector<std::vector<double>>& spectra,
                             double s) {
  double tr = 0.0;
  size_t dim = spectra.empty() ? 0 : spectra.front().size();
  for (size_t n = 0; n < dim; ++n) {
    double mix = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
      mix += weights[i] * std::pow(spectra[i][n], 1.0 / (1.0 + s));
    }
    tr += std::pow(mix, 1.0 + s);
  }
  return -std::log(tr);
}

}  // namespace traceineq::oracles
