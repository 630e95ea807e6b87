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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "traceineq/inequalities.hpp"

namespace traceineq::search {

// Signed-margin buckets. Fifteen edges split the line into sixteen ranges;
// bucket k holds margins m with edge[k-1] <= m < edge[k] (open ends at the
// extremes), so a margin of exactly 0 lands in the first nonnegative bucket.
inline constexpr int kHistogramBuckets = 16;
std::span<const double> histogram_edges();
int histogram_bucket(double margin);

struct CampaignConfig {
  std::string inequality_id;
  // Matrix dimension; sequence length for scalar-triple inequalities.
  int dim = 2;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  // Required nonempty for s-parametric inequalities, must stay empty for
  // s-free ones; every value in [0, 1].
  std::vector<double> s_values;
  int refine_steps = 0;
  double refine_step_size = 0.05;
  double near_violation_threshold = 1e-6;
  // A margin below -tolerance * (1 + scale) counts as a violation; the scale
  // factor keeps the rule meaningful for badly conditioned draws.
  double tolerance = 1e-9;
  double min_eigenvalue = 1e-6;
  bool keep_records = true;
  // Overrides the family default (e.g. commuting draws for a pair
  // inequality). Families with a single valid sampler reject others.
  std::optional<ensembles::SamplerKind> sampler_override;
};

// Throws kUnknownInequality for an unknown tag, kInvalidConfig for
// out-of-range fields or an s_values/family mismatch.
void validate(const CampaignConfig& cfg);

struct EvalRecord {
  std::uint64_t index = 0;
  std::optional<double> s;
  // Unset when the evaluation was skipped.
  std::optional<double> margin;
  std::optional<double> imag_residual;
  // "ok" or "skipped:<ERROR_TOKEN>".
  std::string status;
};

struct RefineResult {
  double margin = 0.0;
  int accepted_steps = 0;
  std::string witness;  // serialized final input
  std::optional<double> s;
};

struct CampaignResult {
  // samples x |s_values| (or samples when s-free), skipped included.
  std::uint64_t evaluated = 0;
  std::uint64_t violations = 0;
  std::uint64_t near_violations = 0;
  // +infinity until the first successful evaluation.
  double min_margin = 0.0;
  std::optional<std::uint64_t> argmin_index;
  std::optional<double> argmin_s;
  std::string argmin_witness;  // empty when nothing evaluated
  std::array<std::uint64_t, kHistogramBuckets> histogram{};
  // Reason token -> count, sorted by token.
  std::vector<std::pair<std::string, std::uint64_t>> skipped;
  std::vector<EvalRecord> records;  // empty unless keep_records
  std::optional<RefineResult> refined;
};

// Deterministic redraw of sample `index`: the engine seed depends only on
// (cfg.seed, index), never on worker count or scheduling.
inequalities::InequalityInput draw_input(const inequalities::InequalityInfo& info,
                                         const CampaignConfig& cfg,
                                         std::uint64_t index);

// Projections used after refinement perturbations. Both are idempotent on
// already-valid inputs up to decomposition rounding.
ensembles::PositiveContraction project_contraction(const matcore::Matrix& m,
                                                   double min_eigenvalue);
ensembles::DensityMatrix project_density(const matcore::Matrix& m,
                                         double min_eigenvalue);

// Strict-descent local search: perturb, project, keep iff the margin
// strictly decreases. Evaluations that fail numerically reject the step.
// The returned margin never exceeds the margin of `start`.
RefineResult refine(const inequalities::InequalityInfo& info,
                    const inequalities::InequalityInput& start,
                    std::optional<double> s, int steps, double step_size,
                    double min_eigenvalue, std::uint64_t seed);

// Runs the full campaign: per-index draws, per-s margins, scale-aware
// violation and near-violation counts, bucket histogram, per-reason skip
// tallies, and (when refine_steps > 0) refinement of the argmin witness
// seeded at mix_seed(seed, samples). Worker partitions are contiguous index
// ranges merged in order, so any worker count yields identical results.
CampaignResult run_campaign(const CampaignConfig& cfg, int workers = 1);

}  // namespace traceineq::search
