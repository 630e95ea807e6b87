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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "support.hpp"
#include "traceineq/ensembles.hpp"

namespace en = traceineq::ensembles;
namespace mc = traceineq::matcore;
using traceineq::Errc;
using testsupport::thrown_code;

TEST_CASE("mix_seed decorrelates adjacent indices") {
  std::uint64_t a = en::mix_seed(42, 0);
  std::uint64_t b = en::mix_seed(42, 1);
  CHECK(a != b);
  CHECK(en::mix_seed(42, 0) == a);  // pure function
  CHECK(en::mix_seed(43, 0) != a);
}

TEST_CASE("sample_density is deterministic and well formed") {
  en::SamplerConfig cfg;
  cfg.seed = 7;
  cfg.dim = 3;
  cfg.kind = en::SamplerKind::kGinibreDensity;

  en::DensityMatrix d1 = en::sample_density(cfg, 5);
  en::DensityMatrix d2 = en::sample_density(cfg, 5);
  CHECK((d1.matrix().entries() - d2.matrix().entries()).norm() == 0.0);

  CHECK(std::abs(d1.matrix().entries().trace().real() - 1.0) <= 1e-12);
  CHECK(std::abs(d1.matrix().entries().trace().imag()) <= 1e-14);

  en::DensityMatrix other = en::sample_density(cfg, 6);
  CHECK((d1.matrix().entries() - other.matrix().entries()).norm() > 0.0);
}

TEST_CASE("dimension one density is the scalar 1") {
  en::SamplerConfig cfg;
  cfg.seed = 11;
  cfg.dim = 1;
  en::DensityMatrix d = en::sample_density(cfg, 0);
  CHECK(d.dim() == 1);
  CHECK(d.matrix().entries()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.matrix().entries()(0, 0).imag() == 0.0);
}

TEST_CASE("sample_contraction respects the eigenvalue window") {
  en::SamplerConfig cfg;
  cfg.seed = 3;
  cfg.dim = 4;
  cfg.kind = en::SamplerKind::kSpectralContraction;
  cfg.min_eigenvalue = 0.2;

  for (std::uint64_t i = 0; i < 32; ++i) {
    en::PositiveContraction c = en::sample_contraction(cfg, i);
    mc::RealVector eig = mc::spectral_decompose(c.matrix()).eigenvalues;
    CHECK(eig.minCoeff() >= cfg.min_eigenvalue - 1e-12);
    CHECK(eig.maxCoeff() <= 1.0 + 1e-12);
    mc::HermitianMatrix id(mc::Matrix::Identity(4, 4));
    CHECK(mc::loewner_margin(c.matrix(), id) >= -1e-12);
  }
}

TEST_CASE("min_eigenvalue = 1 pins the contraction at identity") {
  en::SamplerConfig cfg;
  cfg.seed = 9;
  cfg.dim = 3;
  cfg.kind = en::SamplerKind::kSpectralContraction;
  cfg.min_eigenvalue = 1.0;
  en::PositiveContraction c = en::sample_contraction(cfg, 0);
  CHECK((c.matrix().entries() - mc::Matrix::Identity(3, 3)).norm() <= 1e-10);
}

TEST_CASE("probability samples form a distribution") {
  en::SamplerConfig cfg;
  cfg.seed = 4;
  cfg.kind = en::SamplerKind::kDirichletWeights;

  std::vector<double> one = en::sample_probability(cfg, 1, 0);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 1.0);

  std::vector<double> w = en::sample_probability(cfg, 5, 1);
  REQUIRE(w.size() == 5);
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  CHECK(std::abs(sum - 1.0) <= 1e-12);
  for (double x : w) CHECK(x > 0.0);
}

TEST_CASE("normalize_weights hits exact rationals on equal input") {
  std::vector<double> w = en::normalize_weights({2.0, 2.0, 2.0, 2.0});
  for (double x : w) CHECK(x == 0.25);
  CHECK(thrown_code([] { en::normalize_weights({0.0, 0.0}); }) ==
        Errc::kNonpositiveInput);
  CHECK(thrown_code([] { en::normalize_weights({1.0, -2.0}); }) ==
        Errc::kNonpositiveInput);
}

TEST_CASE("haar_unitary is unitary") {
  en::SampleRng rng(15);
  mc::Matrix u = en::haar_unitary(rng, 5);
  CHECK((u.adjoint() * u - mc::Matrix::Identity(5, 5)).norm() <= 1e-12);
}

TEST_CASE("commuting pairs share an eigenbasis") {
  en::SamplerConfig cfg;
  cfg.seed = 21;
  cfg.dim = 4;
  cfg.kind = en::SamplerKind::kCommutingPair;
  cfg.min_eigenvalue = 1e-3;

  for (std::uint64_t i = 0; i < 16; ++i) {
    en::CommutingPair p = en::sample_commuting_pair(cfg, i);
    const mc::Matrix& a = p.a.matrix().entries();
    const mc::Matrix& b = p.b.matrix().entries();
    CHECK((a * b - b * a).norm() <= 1e-10);
    // The recorded spectra are the actual eigenvalues.
    mc::RealVector ea = mc::spectral_decompose(p.a.matrix()).eigenvalues;
    std::vector<double> da(p.diag_a.begin(), p.diag_a.end());
    std::sort(da.begin(), da.end());
    for (int k = 0; k < 4; ++k) {
      CHECK(ea(k) == doctest::Approx(da[static_cast<std::size_t>(k)])
                         .epsilon(1e-10));
    }
    CHECK(p.diag_a.minCoeff() >= cfg.min_eigenvalue - 1e-12);
    CHECK(p.diag_b.minCoeff() >= cfg.min_eigenvalue - 1e-12);
  }
}

TEST_CASE("equal spectra give equal commuting matrices") {
  en::SampleRng rng(33);
  mc::Matrix u = en::haar_unitary(rng, 3);
  mc::RealVector d(3);
  d << 0.2, 0.5, 0.9;
  mc::Matrix m = u * d.cast<mc::Complex>().asDiagonal() * u.adjoint();
  mc::HermitianMatrix h1 = mc::HermitianMatrix::from_symmetrized(m);
  mc::HermitianMatrix h2 = mc::HermitianMatrix::from_symmetrized(m);
  CHECK((h1.entries() - h2.entries()).norm() == 0.0);
}

TEST_CASE("ensemble_from draws weights first and validates") {
  en::SampleRng rng(8);
  en::Ensemble ens = en::ensemble_from(rng, 3, 4, 1e-6);
  CHECK(ens.size() == 4);
  CHECK(ens.dim() == 3);
  double sum = std::accumulate(ens.weights().begin(), ens.weights().end(), 0.0);
  CHECK(std::abs(sum - 1.0) <= 1e-12);
  for (const en::DensityMatrix& s : ens.states()) {
    CHECK(std::abs(s.matrix().entries().trace().real() - 1.0) <= 1e-12);
  }
}

TEST_CASE("typed ensemble constructors reject malformed input") {
  en::SampleRng rng(2);
  en::DensityMatrix d2 = en::density_from(rng, 2, 1e-6);
  en::DensityMatrix d3 = en::density_from(rng, 3, 1e-6);

  CHECK(thrown_code([&] {
          en::Ensemble bad({0.5, 0.5}, {d2, d3});  // dimension mismatch
        }) == Errc::kDimMismatch);
  CHECK(thrown_code([&] {
          en::Ensemble bad({0.5, 0.25}, {d2, d2});  // weights sum to 0.75
        }) == Errc::kInvalidConfig);
  CHECK(thrown_code([&] {
          en::Ensemble bad({1.5, -0.5}, {d2, d2});  // negative weight
        }) == Errc::kInvalidConfig);
  CHECK(thrown_code([&] {
          en::Ensemble bad({}, {});  // empty
        }) == Errc::kDimMismatch);

  mc::Matrix half = mc::Matrix::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(en::DensityMatrix{mc::HermitianMatrix(half)});
  mc::Matrix twice = mc::Matrix::Identity(2, 2) * 2.0;
  CHECK(thrown_code([&] {
          en::DensityMatrix bad{mc::HermitianMatrix(twice)};
        }) == Errc::kInvalidConfig);
  CHECK(thrown_code([&] {
          en::PositiveContraction bad{mc::HermitianMatrix(twice)};
        }) == Errc::kContractionViolation);
  mc::Matrix neg = -half;
  CHECK(thrown_code([&] {
          en::PositiveContraction bad{mc::HermitianMatrix(neg)};
        }) == Errc::kNegativeSpectrum);
}

TEST_CASE("sampler config kind and ranges are enforced") {
  en::SamplerConfig cfg;
  cfg.seed = 1;
  cfg.dim = 3;
  cfg.kind = en::SamplerKind::kGinibreDensity;
  CHECK(thrown_code([&] { en::sample_contraction(cfg, 0); }) ==
        Errc::kInvalidConfig);
  CHECK(thrown_code([&] { en::sample_commuting_pair(cfg, 0); }) ==
        Errc::kInvalidConfig);

  en::SamplerConfig bad = cfg;
  bad.dim = 0;
  CHECK(thrown_code([&] { en::validate(bad); }) == Errc::kInvalidConfig);
  bad = cfg;
  bad.min_eigenvalue = -0.1;
  CHECK(thrown_code([&] { en::validate(bad); }) == Errc::kInvalidConfig);
  bad = cfg;
  bad.min_eigenvalue = 1.5;
  CHECK(thrown_code([&] { en::validate(bad); }) == Errc::kInvalidConfig);
  bad = cfg;
  bad.count = 0;
  CHECK(thrown_code([&] { en::validate(bad); }) == Errc::kInvalidConfig);
}

TEST_CASE("bulk draws satisfy the type invariants") {
  en::SamplerConfig dens;
  dens.seed = 1234;
  dens.dim = 3;
  dens.kind = en::SamplerKind::kGinibreDensity;
  dens.min_eigenvalue = 1e-6;

  en::SamplerConfig contr = dens;
  contr.kind = en::SamplerKind::kSpectralContraction;

  for (std::uint64_t i = 0; i < 1000; ++i) {
    en::DensityMatrix d = en::sample_density(dens, i);
    CHECK(std::abs(d.matrix().entries().trace().real() - 1.0) <= 1e-12);
    en::PositiveContraction c = en::sample_contraction(contr, i);
    CHECK(c.dim() == 3);
  }
}
