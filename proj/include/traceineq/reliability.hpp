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

#include <vector>

#include "traceineq/ensembles.hpp"

namespace traceineq::reliability {

// Weighted power mixtures A(s) must keep their smallest eigenvalue above
// this gate wherever an inverse power of A(s) is taken.
inline constexpr double kMixtureGateTol = 1e-10;
// Default second-difference step for concavity profiles.
inline constexpr double kDefaultStep = 1e-2;

// A(s) = sum_i w_i S_i^(1/(1+s)); s in [0, 1] (kDomainViolation outside).
matcore::HermitianMatrix mixture_power(const ensembles::Ensemble& ens,
                                       double s);

// E(s) = -log tr[A(s)^(1+s)]. Throws kNonpositiveTrace if the trace
// degenerates.
double auxiliary_e(const ensembles::Ensemble& ens, double s);

struct ConditionMargin {
  double margin = 0.0;
  double imag_residual = 0.0;
};

// tr[A(s)^s X(s)] - tr[A(s)^(s-1) H(s)^2] with
//   X(s) = sum_i w_i T_i (log T_i)^2,  H(s) = -sum_i w_i T_i log T_i,
//   T_i = S_i^(1/(1+s)).
// Nonnegative for every s iff the ensemble satisfies the sufficient
// concavity condition. Gates A(s) at kMixtureGateTol (kSingularMixture).
ConditionMargin sufficient_condition_margin(const ensembles::Ensemble& ens,
                                            double s);

struct AuxiliaryProfile {
  std::vector<double> s_grid;
  std::vector<double> e_values;
  std::vector<double> second_differences;
  double step = kDefaultStep;
};

// Central second differences (E(s+h) - 2E(s) + E(s-h)) / h^2 with h shrunk
// to min(step, s, 1-s) at near-edge interior points; the exact endpoints
// s = 0 and s = 1 use the one-sided three-point stencil with h = step.
// Every E evaluation runs the A(s) invertibility gate.
AuxiliaryProfile concavity_profile(const ensembles::Ensemble& ens,
                                   std::vector<double> s_grid,
                                   double step = kDefaultStep);

}  // namespace traceineq::reliability
