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

#include "traceineq/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace traceineq::ensembles {

namespace {

constexpr double kSpectrumTol = 1e-12;

void require_min_eig_range(double min_eigenvalue, const char* what) {
  if (!(min_eigenvalue >= 0.0 && min_eigenvalue <= 1.0)) {
    raise(Errc::kInvalidConfig,
          std::string(what) + ": min_eigenvalue must lie in [0, 1]");
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + index * 0x9E3779B97F4A7C15ull);
}

double SampleRng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SampleRng::uniform(double lo, double hi) {
  return lo + uniform01() * (hi - lo);
}

double SampleRng::normal() {
  // Box-Muller, cosine branch. u1 shifted into (0, 1] so the log is finite.
  double u1 = 1.0 - uniform01();
  double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double SampleRng::exponential() { return -std::log1p(-uniform01()); }

matcore::Complex SampleRng::complex_normal() {
  double re = normal();
  double im = normal();
  return matcore::Complex(re, im);
}

DensityMatrix::DensityMatrix(const matcore::HermitianMatrix& m) : m_(m) {
  auto d = matcore::spectral_decompose(m_);
  if (d.eigenvalues[0] < -kSpectrumTol) {
    raise(Errc::kNegativeSpectrum,
          "DensityMatrix: eigenvalue " + std::to_string(d.eigenvalues[0]));
  }
  double tr = m_.entries().trace().real();
  if (std::abs(tr - 1.0) > kSpectrumTol) {
    raise(Errc::kInvalidConfig,
          "DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
}

PositiveContraction::PositiveContraction(const matcore::HermitianMatrix& m)
    : m_(m) {
  auto d = matcore::spectral_decompose(m_);
  if (d.eigenvalues[0] < -kSpectrumTol) {
    raise(Errc::kNegativeSpectrum,
          "PositiveContraction: eigenvalue " +
              std::to_string(d.eigenvalues[0]));
  }
  double top = d.eigenvalues[d.dim() - 1];
  if (top > 1.0 + kSpectrumTol) {
    raise(Errc::kContractionViolation,
          "PositiveContraction: eigenvalue " + std::to_string(top) + " > 1");
  }
}

Ensemble::Ensemble(std::vector<double> weights,
                   std::vector<DensityMatrix> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (states_.empty() || weights_.size() != states_.size()) {
    raise(Errc::kDimMismatch, "Ensemble: weights/states count mismatch");
  }
  int dim = states_.front().dim();
  for (const auto& s : states_) {
    if (s.dim() != dim) {
      raise(Errc::kDimMismatch, "Ensemble: states differ in dimension");
    }
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      raise(Errc::kInvalidConfig, "Ensemble: negative weight");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSpectrumTol) {
    raise(Errc::kInvalidConfig,
          "Ensemble: weights sum to " + std::to_string(sum));
  }
}

void validate(const SamplerConfig& cfg) {
  if (cfg.dim < 1) {
    raise(Errc::kInvalidConfig, "SamplerConfig: dim must be >= 1");
  }
  if (cfg.count < 1) {
    raise(Errc::kInvalidConfig, "SamplerConfig: count must be >= 1");
  }
  require_min_eig_range(cfg.min_eigenvalue, "SamplerConfig");
}

std::vector<double> normalize_weights(std::vector<double> w) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      raise(Errc::kNonpositiveInput, "normalize_weights: negative entry");
    }
    sum += x;
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    raise(Errc::kNonpositiveInput, "normalize_weights: nonpositive sum");
  }
  for (double& x : w) x /= sum;
  return w;
}

matcore::Matrix ginibre(SampleRng& rng, int dim) {
  matcore::Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      g(r, c) = rng.complex_normal();
    }
  }
  return g;
}

matcore::Matrix haar_unitary(SampleRng& rng, int dim) {
  matcore::Matrix g = ginibre(rng, dim);
  Eigen::HouseholderQR<matcore::Matrix> qr(g);
  matcore::Matrix q = qr.householderQ();
  matcore::Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    matcore::Complex d = r(i, i);
    double mag = std::abs(d);
    q.col(i) *= (mag == 0.0) ? matcore::Complex(1.0, 0.0) : d / mag;
  }
  return q;
}

DensityMatrix density_from(SampleRng& rng, int dim, double min_eigenvalue) {
  require_min_eig_range(min_eigenvalue, "density_from");
  matcore::Matrix g = ginibre(rng, dim);
  matcore::Matrix p = g * g.adjoint();
  double tr = p.trace().real();
  if (!(tr > 0.0)) {
    raise(Errc::kNonpositiveTrace, "density_from: degenerate draw");
  }
  auto h = matcore::HermitianMatrix::from_symmetrized(p / tr);
  auto d = matcore::spectral_decompose(h);
  matcore::RealVector lam = d.eigenvalues;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    lam[i] = std::max(lam[i], min_eigenvalue);
  }
  lam /= lam.sum();
  matcore::Matrix rebuilt = d.eigenvectors *
                            lam.cast<matcore::Complex>().asDiagonal() *
                            d.eigenvectors.adjoint();
  return DensityMatrix(matcore::HermitianMatrix::from_symmetrized(rebuilt));
}

PositiveContraction contraction_from(SampleRng& rng, int dim,
                                     double min_eigenvalue) {
  require_min_eig_range(min_eigenvalue, "contraction_from");
  matcore::Matrix u = haar_unitary(rng, dim);
  matcore::RealVector lam(dim);
  for (int i = 0; i < dim; ++i) {
    lam[i] = rng.uniform(min_eigenvalue, 1.0);
  }
  matcore::Matrix m =
      u * lam.cast<matcore::Complex>().asDiagonal() * u.adjoint();
  return PositiveContraction(matcore::HermitianMatrix::from_symmetrized(m));
}

std::vector<double> weights_from(SampleRng& rng, int count) {
  if (count < 1) {
    raise(Errc::kInvalidConfig, "weights_from: count must be >= 1");
  }
  std::vector<double> w(static_cast<size_t>(count));
  double sum = 0.0;
  do {
    sum = 0.0;
    for (double& x : w) {
      x = rng.exponential();
      sum += x;
    }
  } while (!(sum > 0.0));
  return normalize_weights(std::move(w));
}

CommutingPair commuting_pair_from(SampleRng& rng, int dim,
                                  double min_eigenvalue) {
  require_min_eig_range(min_eigenvalue, "commuting_pair_from");
  matcore::Matrix u = haar_unitary(rng, dim);
  matcore::RealVector da(dim), db(dim);
  for (int i = 0; i < dim; ++i) da[i] = rng.uniform(min_eigenvalue, 1.0);
  for (int i = 0; i < dim; ++i) db[i] = rng.uniform(min_eigenvalue, 1.0);
  auto build = [&](const matcore::RealVector& lam) {
    matcore::Matrix m =
        u * lam.cast<matcore::Complex>().asDiagonal() * u.adjoint();
    return PositiveContraction(matcore::HermitianMatrix::from_symmetrized(m));
  };
  return CommutingPair{build(da), build(db), da, db};
}

Ensemble ensemble_from(SampleRng& rng, int dim, int size,
                       double min_eigenvalue) {
  std::vector<double> w = weights_from(rng, size);
  std::vector<DensityMatrix> states;
  states.reserve(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) {
    states.push_back(density_from(rng, dim, min_eigenvalue));
  }
  return Ensemble(std::move(w), std::move(states));
}

namespace {

SampleRng engine_for(const SamplerConfig& cfg, SamplerKind expected,
                     std::uint64_t index, const char* what) {
  validate(cfg);
  if (cfg.kind != expected) {
    raise(Errc::kInvalidConfig,
          std::string(what) + ": sampler kind does not match");
  }
  return SampleRng(mix_seed(cfg.seed, index));
}

}  // namespace

DensityMatrix sample_density(const SamplerConfig& cfg, std::uint64_t index) {
  SampleRng rng =
      engine_for(cfg, SamplerKind::kGinibreDensity, index, "sample_density");
  return density_from(rng, cfg.dim, cfg.min_eigenvalue);
}

PositiveContraction sample_contraction(const SamplerConfig& cfg,
                                       std::uint64_t index) {
  SampleRng rng = engine_for(cfg, SamplerKind::kSpectralContraction, index,
                             "sample_contraction");
  return contraction_from(rng, cfg.dim, cfg.min_eigenvalue);
}

std::vector<double> sample_probability(const SamplerConfig& cfg, int count,
                                       std::uint64_t index) {
  SampleRng rng = engine_for(cfg, SamplerKind::kDirichletWeights, index,
                             "sample_probability");
  return weights_from(rng, count);
}

CommutingPair sample_commuting_pair(const SamplerConfig& cfg,
                                    std::uint64_t index) {
  SampleRng rng = engine_for(cfg, SamplerKind::kCommutingPair, index,
                             "sample_commuting_pair");
  return commuting_pair_from(rng, cfg.dim, cfg.min_eigenvalue);
}

}  // namespace traceineq::ensembles
