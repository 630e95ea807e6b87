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

#include "traceineq/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace traceineq::search {

namespace {

using ensembles::CommutingPair;
using ensembles::DensityMatrix;
using ensembles::Ensemble;
using ensembles::PositiveContraction;
using ensembles::SampleRng;
using ensembles::SamplerKind;
using inequalities::ContractionPairInput;
using inequalities::Evaluation;
using inequalities::InequalityInfo;
using inequalities::InequalityInput;
using inequalities::InputFamily;
using inequalities::TripleInput;
using matcore::HermitianMatrix;
using matcore::Matrix;
using matcore::RealVector;

constexpr double kEdges[kHistogramBuckets - 1] = {
    -1.0,   -1e-2,  -1e-4, -1e-6, -1e-8, -1e-10, -1e-12, 0.0,
    1e-12, 1e-10, 1e-8,  1e-6,  1e-4,  1e-2,   1.0,
};

SamplerKind resolved_sampler(const InequalityInfo& info,
                             const CampaignConfig& cfg) {
  SamplerKind fallback = SamplerKind::kGinibreDensity;
  switch (info.family) {
    case InputFamily::kContractionPair:
      fallback = SamplerKind::kSpectralContraction;
      break;
    case InputFamily::kCommutingPair:
      fallback = SamplerKind::kCommutingPair;
      break;
    case InputFamily::kEnsemble:
      fallback = SamplerKind::kGinibreDensity;
      break;
    case InputFamily::kScalarTriple:
      // Scalar triples use a dedicated bounded sampler; no matrix kind
      // applies, so any override is rejected in validate().
      break;
  }
  return cfg.sampler_override.value_or(fallback);
}

bool sampler_allowed(InputFamily family, SamplerKind kind) {
  switch (family) {
    case InputFamily::kContractionPair:
      return kind == SamplerKind::kSpectralContraction ||
             kind == SamplerKind::kCommutingPair ||
             kind == SamplerKind::kGinibreDensity;
    case InputFamily::kCommutingPair:
      return kind == SamplerKind::kCommutingPair;
    case InputFamily::kEnsemble:
      return kind == SamplerKind::kGinibreDensity;
    case InputFamily::kScalarTriple:
      return false;
  }
  return false;
}

// Scales b so that both boundary conditions hold, with the scale drawn close
// to its largest admissible value. Draws near the boundary are where the
// mixed-sign behaviour of the margin lives; interior draws almost never
// produce negative margins at any s.
TripleInput draw_triple(SampleRng& rng, int n) {
  TripleInput out;
  out.t.resize(n);
  out.a.resize(n);
  out.b.resize(n);
  for (int i = 0; i < n; ++i) out.t[i] = rng.uniform(0.1, 3.0);
  for (int i = 0; i < n; ++i) out.a[i] = rng.uniform(0.1, 2.0);
  for (int i = 0; i < n; ++i) out.b[i] = rng.uniform(0.1, 2.0);
  double ta = 0.0, braw = 0.0, asum = 0.0, bovert = 0.0;
  for (int i = 0; i < n; ++i) {
    ta += out.t[i] * out.a[i];
    braw += out.b[i];
    asum += out.a[i];
    bovert += out.b[i] / out.t[i];
  }
  double beta = std::min(ta / braw, asum / bovert) * rng.uniform(0.9, 1.0);
  for (int i = 0; i < n; ++i) out.b[i] *= beta;
  return out;
}

struct WorkerPartial {
  std::uint64_t violations = 0;
  std::uint64_t near_violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::optional<std::uint64_t> argmin_index;
  std::optional<double> argmin_s;
  std::string argmin_witness;
  std::array<std::uint64_t, kHistogramBuckets> histogram{};
  std::map<std::string, std::uint64_t> skipped;
  std::vector<EvalRecord> records;
};

void run_range(const InequalityInfo& info, const CampaignConfig& cfg,
               std::uint64_t begin, std::uint64_t end, WorkerPartial& out) {
  // One nullopt entry stands in for the whole grid of an s-free inequality.
  std::vector<std::optional<double>> s_points;
  if (info.needs_s) {
    s_points.assign(cfg.s_values.begin(), cfg.s_values.end());
  } else {
    s_points.push_back(std::nullopt);
  }

  for (std::uint64_t index = begin; index < end; ++index) {
    std::optional<InequalityInput> input;
    std::string draw_failure;
    try {
      input = draw_input(info, cfg, index);
    } catch (const NumericError& e) {
      draw_failure = errc_token(e.code());
    }

    for (const auto& s : s_points) {
      EvalRecord rec;
      rec.index = index;
      rec.s = s;
      if (!input.has_value()) {
        rec.status = "skipped:" + draw_failure;
        ++out.skipped[draw_failure];
      } else {
        try {
          Evaluation ev = inequalities::evaluate(info, *input, s);
          rec.margin = ev.margin;
          rec.imag_residual = ev.imag_residual;
          rec.status = "ok";
          ++out.histogram[histogram_bucket(ev.margin)];
          if (ev.margin < -cfg.tolerance * (1.0 + ev.scale)) {
            ++out.violations;
          } else if (ev.margin <
                     cfg.near_violation_threshold * (1.0 + ev.scale)) {
            ++out.near_violations;
          }
          if (ev.margin < out.min_margin) {
            out.min_margin = ev.margin;
            out.argmin_index = index;
            out.argmin_s = s;
            out.argmin_witness = inequalities::serialize_input(*input);
          }
        } catch (const NumericError& e) {
          std::string token = errc_token(e.code());
          rec.status = "skipped:" + token;
          ++out.skipped[token];
        }
      }
      if (cfg.keep_records) out.records.push_back(std::move(rec));
    }
  }
}

Matrix perturbed(SampleRng& rng, const Matrix& m, double step) {
  return m + step * matcore::hermitize(ensembles::ginibre(
                        rng, static_cast<int>(m.rows())));
}

InequalityInput perturb_and_project(SampleRng& rng,
                                    const InequalityInput& current,
                                    double step, double min_eigenvalue) {
  if (const auto* pair = std::get_if<ContractionPairInput>(&current)) {
    PositiveContraction a = project_contraction(
        perturbed(rng, pair->a.matrix().entries(), step), min_eigenvalue);
    PositiveContraction b = project_contraction(
        perturbed(rng, pair->b.matrix().entries(), step), min_eigenvalue);
    return ContractionPairInput{std::move(a), std::move(b)};
  }
  if (const auto* ens = std::get_if<Ensemble>(&current)) {
    std::vector<DensityMatrix> states;
    states.reserve(ens->states().size());
    for (const auto& s : ens->states()) {
      states.push_back(project_density(
          perturbed(rng, s.matrix().entries(), step), min_eigenvalue));
    }
    return Ensemble(ens->weights(), std::move(states));
  }
  const auto& triple = std::get<TripleInput>(current);
  TripleInput next = triple;
  // Multiplicative log-normal noise keeps every entry positive; b is then
  // rescaled so both boundary conditions keep holding.
  for (double& x : next.t) x *= std::exp(step * rng.normal());
  for (double& x : next.a) x *= std::exp(step * rng.normal());
  for (double& x : next.b) x *= std::exp(step * rng.normal());
  double ta = 0.0, bsum = 0.0, asum = 0.0, bovert = 0.0;
  for (size_t i = 0; i < next.t.size(); ++i) {
    ta += next.t[i] * next.a[i];
    bsum += next.b[i];
    asum += next.a[i];
    bovert += next.b[i] / next.t[i];
  }
  double scale = std::min({1.0, ta / bsum, asum / bovert});
  for (double& x : next.b) x *= scale;
  return next;
}

}  // namespace

std::span<const double> histogram_edges() {
  return std::span<const double>(kEdges, kHistogramBuckets - 1);
}

int histogram_bucket(double margin) {
  if (std::isnan(margin)) return kHistogramBuckets - 1;
  const double* end = kEdges + (kHistogramBuckets - 1);
  return static_cast<int>(std::upper_bound(kEdges, end, margin) - kEdges);
}

void validate(const CampaignConfig& cfg) {
  const auto* info = inequalities::find_inequality(cfg.inequality_id);
  if (info == nullptr) {
    raise(Errc::kUnknownInequality,
          "campaign: unknown inequality " + cfg.inequality_id);
  }
  int min_dim = info->family == InputFamily::kScalarTriple ? 2 : 1;
  if (cfg.dim < min_dim || cfg.dim > 512) {
    raise(Errc::kInvalidConfig, "campaign: dim out of range");
  }
  if (info->needs_s) {
    if (cfg.s_values.empty()) {
      raise(Errc::kInvalidConfig,
            "campaign: " + cfg.inequality_id + " needs s values");
    }
    for (double s : cfg.s_values) {
      if (!(s >= 0.0 && s <= 1.0)) {
        raise(Errc::kInvalidConfig, "campaign: s values must lie in [0, 1]");
      }
    }
  } else if (!cfg.s_values.empty()) {
    raise(Errc::kInvalidConfig,
          "campaign: " + cfg.inequality_id + " takes no s values");
  }
  if (cfg.refine_steps < 0 || !(cfg.refine_step_size > 0.0) ||
      !std::isfinite(cfg.refine_step_size)) {
    raise(Errc::kInvalidConfig, "campaign: bad refinement parameters");
  }
  if (!(cfg.tolerance >= 0.0) || !std::isfinite(cfg.tolerance) ||
      !std::isfinite(cfg.near_violation_threshold)) {
    raise(Errc::kInvalidConfig, "campaign: bad tolerance parameters");
  }
  if (!(cfg.min_eigenvalue >= 0.0 && cfg.min_eigenvalue <= 1.0)) {
    raise(Errc::kInvalidConfig, "campaign: min_eigenvalue outside [0, 1]");
  }
  if (cfg.sampler_override.has_value() &&
      !sampler_allowed(info->family, *cfg.sampler_override)) {
    raise(Errc::kInvalidConfig,
          "campaign: sampler override not valid for this input family");
  }
}

InequalityInput draw_input(const InequalityInfo& info,
                           const CampaignConfig& cfg, std::uint64_t index) {
  SampleRng rng(ensembles::mix_seed(cfg.seed, index));
  if (info.family == InputFamily::kScalarTriple) {
    return draw_triple(rng, cfg.dim);
  }
  SamplerKind kind = resolved_sampler(info, cfg);
  switch (info.family) {
    case InputFamily::kContractionPair: {
      if (kind == SamplerKind::kCommutingPair) {
        CommutingPair pair =
            ensembles::commuting_pair_from(rng, cfg.dim, cfg.min_eigenvalue);
        return ContractionPairInput{std::move(pair.a), std::move(pair.b)};
      }
      if (kind == SamplerKind::kGinibreDensity) {
        DensityMatrix a =
            ensembles::density_from(rng, cfg.dim, cfg.min_eigenvalue);
        DensityMatrix b =
            ensembles::density_from(rng, cfg.dim, cfg.min_eigenvalue);
        // Unit-trace states are automatically contractions.
        return ContractionPairInput{PositiveContraction(a.matrix()),
                                    PositiveContraction(b.matrix())};
      }
      PositiveContraction a =
          ensembles::contraction_from(rng, cfg.dim, cfg.min_eigenvalue);
      PositiveContraction b =
          ensembles::contraction_from(rng, cfg.dim, cfg.min_eigenvalue);
      return ContractionPairInput{std::move(a), std::move(b)};
    }
    case InputFamily::kCommutingPair: {
      CommutingPair pair =
          ensembles::commuting_pair_from(rng, cfg.dim, cfg.min_eigenvalue);
      return ContractionPairInput{std::move(pair.a), std::move(pair.b)};
    }
    case InputFamily::kEnsemble: {
      int size = static_cast<int>(2 + index % 3);
      return ensembles::ensemble_from(rng, cfg.dim, size,
                                      cfg.min_eigenvalue);
    }
    case InputFamily::kScalarTriple:
      break;  // handled above
  }
  raise(Errc::kInvalidConfig, "draw_input: unhandled input family");
}

PositiveContraction project_contraction(const Matrix& m,
                                        double min_eigenvalue) {
  auto d = matcore::spectral_decompose(
      HermitianMatrix::from_symmetrized(matcore::hermitize(m)));
  RealVector clipped = d.eigenvalues.cwiseMax(min_eigenvalue).cwiseMin(1.0);
  Matrix rebuilt = d.eigenvectors *
                   clipped.cast<matcore::Complex>().asDiagonal() *
                   d.eigenvectors.adjoint();
  return PositiveContraction(HermitianMatrix::from_symmetrized(rebuilt));
}

DensityMatrix project_density(const Matrix& m, double min_eigenvalue) {
  auto d = matcore::spectral_decompose(
      HermitianMatrix::from_symmetrized(matcore::hermitize(m)));
  RealVector clipped = d.eigenvalues.cwiseMax(min_eigenvalue);
  double total = clipped.sum();
  if (!(total > 0.0)) {
    raise(Errc::kNonpositiveTrace, "project_density: nonpositive trace");
  }
  clipped /= total;
  Matrix rebuilt = d.eigenvectors *
                   clipped.cast<matcore::Complex>().asDiagonal() *
                   d.eigenvectors.adjoint();
  return DensityMatrix(HermitianMatrix::from_symmetrized(rebuilt));
}

RefineResult refine(const InequalityInfo& info, const InequalityInput& start,
                    std::optional<double> s, int steps, double step_size,
                    double min_eigenvalue, std::uint64_t seed) {
  RefineResult out;
  out.s = s;
  out.margin = inequalities::evaluate(info, start, s).margin;
  InequalityInput current = start;
  SampleRng rng(seed);
  for (int step = 0; step < steps; ++step) {
    InequalityInput candidate =
        perturb_and_project(rng, current, step_size, min_eigenvalue);
    try {
      double margin = inequalities::evaluate(info, candidate, s).margin;
      if (margin < out.margin) {
        out.margin = margin;
        current = std::move(candidate);
        ++out.accepted_steps;
      }
    } catch (const NumericError&) {
      // A projected candidate can still trip a gate; treat as not improving.
    }
  }
  out.witness = inequalities::serialize_input(current);
  return out;
}

CampaignResult run_campaign(const CampaignConfig& cfg, int workers) {
  validate(cfg);
  if (workers < 1) {
    raise(Errc::kInvalidConfig, "campaign: workers must be >= 1");
  }
  const InequalityInfo& info = *inequalities::find_inequality(cfg.inequality_id);

  std::uint64_t per_index =
      info.needs_s ? static_cast<std::uint64_t>(cfg.s_values.size()) : 1;

  CampaignResult result;
  result.evaluated = cfg.samples * per_index;
  result.min_margin = std::numeric_limits<double>::infinity();

  std::uint64_t nworkers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers),
                              std::max<std::uint64_t>(cfg.samples, 1));
  std::uint64_t chunk = (cfg.samples + nworkers - 1) / nworkers;
  std::vector<WorkerPartial> partials(nworkers);

  if (nworkers == 1) {
    run_range(info, cfg, 0, cfg.samples, partials[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(nworkers);
    for (std::uint64_t w = 0; w < nworkers; ++w) {
      std::uint64_t begin = w * chunk;
      std::uint64_t end = std::min(begin + chunk, cfg.samples);
      threads.emplace_back([&info, &cfg, begin, end, &partials, w] {
        run_range(info, cfg, begin, end, partials[w]);
      });
    }
    for (auto& t : threads) t.join();
  }

  // Pure fold in worker order; indexes are disjoint ascending ranges, so
  // (margin, index) lexicographic comparison reproduces the sequential
  // argmin no matter how many workers ran.
  std::map<std::string, std::uint64_t> skipped;
  for (auto& part : partials) {
    result.violations += part.violations;
    result.near_violations += part.near_violations;
    for (int b = 0; b < kHistogramBuckets; ++b) {
      result.histogram[b] += part.histogram[b];
    }
    for (const auto& [token, count] : part.skipped) skipped[token] += count;
    if (part.argmin_index.has_value() &&
        (part.min_margin < result.min_margin ||
         (part.min_margin == result.min_margin &&
          (!result.argmin_index.has_value() ||
           *part.argmin_index < *result.argmin_index)))) {
      result.min_margin = part.min_margin;
      result.argmin_index = part.argmin_index;
      result.argmin_s = part.argmin_s;
      result.argmin_witness = std::move(part.argmin_witness);
    }
    if (cfg.keep_records) {
      result.records.insert(result.records.end(),
                            std::make_move_iterator(part.records.begin()),
                            std::make_move_iterator(part.records.end()));
    }
  }
  result.skipped.assign(skipped.begin(), skipped.end());

  if (cfg.refine_steps > 0 && result.argmin_index.has_value()) {
    InequalityInput start = inequalities::parse_input(result.argmin_witness);
    result.refined = refine(info, start, result.argmin_s, cfg.refine_steps,
                            cfg.refine_step_size, cfg.min_eigenvalue,
                            ensembles::mix_seed(cfg.seed, cfg.samples));
  }
  return result;
}

}  // namespace traceineq::search
