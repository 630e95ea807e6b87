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

#include <cstdint>
#include <random>
#include <vector>

#include "traceineq/matcore.hpp"

namespace traceineq::ensembles {

// splitmix64 finalizer (public-domain mixing function).
std::uint64_t splitmix64(std::uint64_t x);

// Element `index` of the splitmix64 stream seeded at `seed`. Every sample
// index derives its own engine from this, so results do not depend on how
// indices are split across workers.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// Deterministic draws on top of mt19937_64. Box-Muller and 53-bit uniforms
// are spelled out here (instead of std distributions) because the standard
// leaves distribution algorithms implementation-defined and reports must be
// byte-identical across toolchains.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  double uniform01();  // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);
  double normal();  // standard normal, two uniforms per call
  double exponential();
  matcore::Complex complex_normal();  // real part drawn first

 private:
  std::mt19937_64 engine_;
};

class DensityMatrix {
 public:
  // Validates: Hermitian wrapper, eigenvalues >= -1e-12 (kNegativeSpectrum),
  // trace within 1e-12 of 1 (kInvalidConfig).
  explicit DensityMatrix(const matcore::HermitianMatrix& m);

  const matcore::HermitianMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  matcore::HermitianMatrix m_;
};

class PositiveContraction {
 public:
  // Validates eigenvalues within [-1e-12, 1 + 1e-12]; throws
  // kNegativeSpectrum below, kContractionViolation above.
  explicit PositiveContraction(const matcore::HermitianMatrix& m);

  const matcore::HermitianMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  matcore::HermitianMatrix m_;
};

// Weighted family of density matrices on a common dimension.
class Ensemble {
 public:
  // weights: entries >= 0, sum within 1e-12 of 1 (kInvalidConfig);
  // states: nonempty, matching count and dimension (kDimMismatch).
  Ensemble(std::vector<double> weights, std::vector<DensityMatrix> states);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<DensityMatrix>& states() const { return states_; }
  int dim() const { return states_.front().dim(); }
  int size() const { return static_cast<int>(states_.size()); }

 private:
  std::vector<double> weights_;
  std::vector<DensityMatrix> states_;
};

enum class SamplerKind {
  kGinibreDensity,
  kSpectralContraction,
  kCommutingPair,
  kDirichletWeights,
};

struct SamplerConfig {
  std::uint64_t seed = 0;
  int dim = 2;
  int count = 1;
  SamplerKind kind = SamplerKind::kGinibreDensity;
  double min_eigenvalue = 1e-6;  // in [0, 1]
};

// Throws kInvalidConfig on out-of-range fields.
void validate(const SamplerConfig& cfg);

// w / sum(w); requires a positive finite sum (kNonpositiveInput). Equal
// entries normalize to exactly 1/n each.
std::vector<double> normalize_weights(std::vector<double> w);

// Engine-level primitives (row-major fill order, documented draw order).
matcore::Matrix ginibre(SampleRng& rng, int dim);
// QR of a Ginibre draw with the R-diagonal phase correction, which makes the
// distribution exactly Haar.
matcore::Matrix haar_unitary(SampleRng& rng, int dim);

// Ginibre G -> GG^H / tr, eigenvalues clipped below min_eigenvalue, then
// renormalized to unit trace.
DensityMatrix density_from(SampleRng& rng, int dim, double min_eigenvalue);
// Haar basis with eigenvalues uniform on [min_eigenvalue, 1].
PositiveContraction contraction_from(SampleRng& rng, int dim,
                                     double min_eigenvalue);
// Flat Dirichlet via normalized exponentials.
std::vector<double> weights_from(SampleRng& rng, int count);

struct CommutingPair {
  PositiveContraction a;
  PositiveContraction b;
  // Spectra in the shared eigenbasis, aligned per basis column. Scalar
  // oracles consume these without touching the matrix pipeline.
  matcore::RealVector diag_a;
  matcore::RealVector diag_b;
};

// One Haar basis, two independent uniform spectra (a drawn fully, then b).
CommutingPair commuting_pair_from(SampleRng& rng, int dim,
                                  double min_eigenvalue);

// Weights drawn first, then states in order.
Ensemble ensemble_from(SampleRng& rng, int dim, int size,
                       double min_eigenvalue);

// Config-level samplers: seed the engine with mix_seed(cfg.seed, index) and
// require the matching cfg.kind (kInvalidConfig otherwise).
DensityMatrix sample_density(const SamplerConfig& cfg, std::uint64_t index);
PositiveContraction sample_contraction(const SamplerConfig& cfg,
                                       std::uint64_t index);
std::vector<double> sample_probability(const SamplerConfig& cfg, int count,
                                       std::uint64_t index);
CommutingPair sample_commuting_pair(const SamplerConfig& cfg,
                                    std::uint64_t index);

}  // namespace traceineq::ensembles
