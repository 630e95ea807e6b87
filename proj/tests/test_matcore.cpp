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
#include <complex>

#include <doctest.h>

#include "support.hpp"
#include "traceineq/matcore.hpp"

namespace mc = traceineq::matcore;
using traceineq::Errc;
using testsupport::thrown_code;

namespace {

const std::complex<double> kI(0.0, 1.0);

mc::HermitianMatrix random_psd(std::uint64_t seed, int dim) {
  mc::Matrix g = testsupport::random_hermitian(seed, dim);
  return mc::HermitianMatrix::from_symmetrized(g * g.adjoint() +
                                               mc::Matrix::Identity(dim, dim) *
                                                   1e-3);
}

}  // namespace

TEST_CASE("hermitize symmetrizes and is bitwise idempotent") {
  mc::Matrix m(2, 2);
  m << 1.0, 2.0 + kI, 3.0 - 2.0 * kI, 4.0;
  mc::Matrix h = mc::hermitize(m);
  CHECK((h - h.adjoint()).norm() == 0.0);
  mc::Matrix hh = mc::hermitize(h);
  for (int c = 0; c < 2; ++c) {
    for (int r = 0; r < 2; ++r) {
      CHECK(hh(r, c).real() == h(r, c).real());
      CHECK(hh(r, c).imag() == h(r, c).imag());
    }
  }
}

TEST_CASE("typed wrappers validate their inputs") {
  mc::Matrix rect = mc::Matrix::Zero(2, 3);
  CHECK(thrown_code([&] { mc::SquareMatrix s(rect); }) == Errc::kDimMismatch);

  mc::Matrix skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  CHECK(thrown_code([&] { mc::HermitianMatrix h(skew); }) ==
        Errc::kNonHermitian);

  mc::Matrix empty(0, 0);
  CHECK(thrown_code([&] { mc::HermitianMatrix h(empty); }) ==
        Errc::kDimMismatch);

  // from_symmetrized accepts anything square and symmetrizes it.
  mc::HermitianMatrix fixed = mc::HermitianMatrix::from_symmetrized(skew);
  CHECK(fixed.entries().norm() == 0.0);
}

TEST_CASE("spectral decomposition of fixed matrices") {
  mc::HermitianMatrix id(mc::Matrix::Identity(3, 3));
  mc::SpectralDecomposition d = mc::spectral_decompose(id);
  REQUIRE(d.dim() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(d.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-12));
  }

  mc::Matrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  mc::SpectralDecomposition dx = mc::spectral_decompose(mc::HermitianMatrix(x));
  CHECK(dx.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(dx.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decomposition reconstructs the input") {
  mc::HermitianMatrix h(testsupport::random_hermitian(41, 5));
  mc::SpectralDecomposition d = mc::spectral_decompose(h);
  mc::Matrix rebuilt = d.eigenvectors *
                       d.eigenvalues.cast<mc::Complex>().asDiagonal() *
                       d.eigenvectors.adjoint();
  CHECK((rebuilt - h.entries()).norm() <=
        1e-10 * (1.0 + h.entries().norm()));
  // Eigenvalues come out ascending.
  for (int i = 1; i < d.dim(); ++i) {
    CHECK(d.eigenvalues(i) >= d.eigenvalues(i - 1));
  }
}

TEST_CASE("decomposition is deterministic on identical bits") {
  mc::HermitianMatrix h(testsupport::random_hermitian(99, 4));
  mc::SpectralDecomposition d1 = mc::spectral_decompose(h);
  mc::SpectralDecomposition d2 = mc::spectral_decompose(h);
  CHECK((d1.eigenvalues - d2.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
  CHECK((d1.eigenvectors - d2.eigenvectors).norm() == 0.0);
}

TEST_CASE("log of a diagonal matrix hits the scalar values") {
  mc::HermitianMatrix h(testsupport::diag2(1.0, std::exp(-1.0)));
  mc::HermitianMatrix out = mc::apply_spectral(h, mc::SpectralFunction::log());
  CHECK(std::abs(out.entries()(0, 0).real() - 0.0) <= 1e-12);
  CHECK(std::abs(out.entries()(1, 1).real() - (-1.0)) <= 1e-12);
  CHECK(std::abs(out.entries()(0, 1)) <= 1e-12);
}

TEST_CASE("power(1) returns the input, negative spectrum included") {
  mc::Matrix m = testsupport::random_hermitian(7, 4);  // indefinite
  mc::HermitianMatrix h(m);
  mc::HermitianMatrix out =
      mc::apply_spectral(h, mc::SpectralFunction::power(1.0));
  CHECK((out.entries() - h.entries()).norm() <= 1e-12 * (1.0 + m.norm()));
}

TEST_CASE("neg_x_log_x sends 0 to 0 and 1/2 to (1/2)log 2") {
  mc::HermitianMatrix h(testsupport::diag2(0.5, 0.0));
  mc::HermitianMatrix out =
      mc::apply_spectral(h, mc::SpectralFunction::neg_x_log_x());
  CHECK(std::abs(out.entries()(0, 0).real() - 0.5 * std::log(2.0)) <= 1e-12);
  CHECK(std::abs(out.entries()(1, 1).real()) <= 1e-12);
}

TEST_CASE("x_log_squared treats the [-floor, 0] band as exact zero") {
  mc::HermitianMatrix h(testsupport::diag2(2.0, -1e-13));
  mc::HermitianMatrix out =
      mc::apply_spectral(h, mc::SpectralFunction::x_log_squared());
  CHECK(out.entries()(1, 1).real() == 0.0);
  CHECK(std::abs(out.entries()(0, 0).real() -
                 2.0 * std::log(2.0) * std::log(2.0)) <= 1e-12);
}

TEST_CASE("log clips eigenvalues below the floor up to the floor") {
  mc::HermitianMatrix h(testsupport::diag2(1.0, 0.0));
  mc::HermitianMatrix out = mc::apply_spectral(h, mc::SpectralFunction::log());
  CHECK(out.entries()(1, 1).real() ==
        doctest::Approx(std::log(1e-12)).epsilon(1e-12));
}

TEST_CASE("domain policy raises on genuinely negative spectra") {
  mc::HermitianMatrix neg(testsupport::diag2(1.0, -0.5));
  CHECK(thrown_code([&] {
          mc::apply_spectral(neg, mc::SpectralFunction::log());
        }) == Errc::kNegativeSpectrum);
  CHECK(thrown_code([&] {
          mc::apply_spectral(neg, mc::SpectralFunction::power(0.5));
        }) == Errc::kNegativeSpectrum);
  CHECK(thrown_code([&] {
          mc::apply_spectral(neg, mc::SpectralFunction::neg_x_log_x());
        }) == Errc::kNegativeSpectrum);
}

TEST_CASE("integer powers and square accept indefinite matrices") {
  mc::HermitianMatrix h(testsupport::diag2(-2.0, 3.0));
  mc::HermitianMatrix sq =
      mc::apply_spectral(h, mc::SpectralFunction::power(2.0));
  CHECK(std::abs(sq.entries()(0, 0).real() - 4.0) <= 1e-12);
  CHECK(std::abs(sq.entries()(1, 1).real() - 9.0) <= 1e-12);

  mc::HermitianMatrix sq2 = mc::apply_spectral(h, mc::SpectralFunction::square());
  CHECK((sq.entries() - sq2.entries()).norm() <= 1e-12);

  mc::HermitianMatrix one =
      mc::apply_spectral(h, mc::SpectralFunction::power(0.0));
  CHECK((one.entries() - mc::Matrix::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("power exponent range is validated") {
  CHECK(thrown_code([] { mc::SpectralFunction::power(3.0); }) ==
        Errc::kDomainViolation);
  CHECK(thrown_code([] { mc::SpectralFunction::power(-2.5); }) ==
        Errc::kDomainViolation);
  CHECK(thrown_code([] {
          mc::SpectralFunction::power(std::nan(""));
        }) == Errc::kDomainViolation);
  CHECK_NOTHROW(mc::SpectralFunction::power(2.0));
  CHECK_NOTHROW(mc::SpectralFunction::power(-2.0));
}

TEST_CASE("spectral mapping: output spectrum is f of the input spectrum") {
  mc::HermitianMatrix h = random_psd(11, 5);
  mc::SpectralDecomposition din = mc::spectral_decompose(h);
  mc::SpectralFunction f = mc::SpectralFunction::x_log_squared();
  mc::HermitianMatrix out = mc::apply_spectral(din, f);
  mc::RealVector expected(din.dim());
  for (int i = 0; i < din.dim(); ++i) expected(i) = f(din.eigenvalues(i));
  std::sort(expected.begin(), expected.end());
  mc::RealVector got = mc::spectral_decompose(out).eigenvalues;
  CHECK((got - expected).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("spectral calculus commutes with a change of basis") {
  mc::HermitianMatrix h = random_psd(12, 4);
  traceineq::ensembles::SampleRng rng(500);
  mc::Matrix u = traceineq::ensembles::haar_unitary(rng, 4);
  mc::HermitianMatrix rotated =
      mc::HermitianMatrix::from_symmetrized(u * h.entries() * u.adjoint());
  mc::SpectralFunction f = mc::SpectralFunction::log();
  mc::Matrix lhs = mc::apply_spectral(rotated, f).entries();
  mc::Matrix rhs = u * mc::apply_spectral(h, f).entries() * u.adjoint();
  CHECK((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
}

TEST_CASE("loewner margin on fixed pairs") {
  mc::HermitianMatrix a(testsupport::diag2(0.3, 0.7));
  mc::HermitianMatrix id(mc::Matrix::Identity(2, 2));
  CHECK(mc::loewner_margin(a, id) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(mc::loewner_margin(a, a)) <= 1e-12);
}

TEST_CASE("loewner margin of a contraction against identity") {
  traceineq::ensembles::SampleRng rng(77);
  traceineq::ensembles::PositiveContraction c =
      traceineq::ensembles::contraction_from(rng, 4, 1e-3);
  mc::HermitianMatrix id(mc::Matrix::Identity(4, 4));
  double margin = mc::loewner_margin(c.matrix(), id);
  CHECK(margin >= -1e-12);
  // Independent route: 1 - max eigenvalue of the contraction.
  double max_eig = mc::spectral_decompose(c.matrix()).eigenvalues.maxCoeff();
  CHECK(margin == doctest::Approx(1.0 - max_eig).epsilon(1e-10));
}

TEST_CASE("negation mirrors the spectrum and preserves the margin") {
  mc::Matrix m = testsupport::random_hermitian(21, 5);
  mc::HermitianMatrix h(m);
  mc::HermitianMatrix hneg(mc::Matrix(-m));
  mc::RealVector eig = mc::spectral_decompose(h).eigenvalues;
  mc::RealVector eigneg = mc::spectral_decompose(hneg).eigenvalues;
  int n = static_cast<int>(eig.size());
  for (int k = 0; k < n; ++k) {
    CHECK(eig(k) == doctest::Approx(-eigneg(n - 1 - k)).epsilon(1e-12));
  }
  // Swapping the pair and negating both sides leaves b - a unchanged, so the
  // margin is invariant under that combined move.
  mc::HermitianMatrix a = random_psd(31, 3);
  mc::HermitianMatrix b = random_psd(32, 3);
  mc::HermitianMatrix na(mc::Matrix(-a.entries()));
  mc::HermitianMatrix nb(mc::Matrix(-b.entries()));
  CHECK(mc::loewner_margin(a, b) ==
        doctest::Approx(mc::loewner_margin(nb, na)).epsilon(1e-12));
}

TEST_CASE("trace_real on fixed matrices") {
  mc::RealTrace t = mc::trace_real(mc::SquareMatrix(mc::Matrix::Identity(4, 4)));
  CHECK(t.value == 4.0);
  CHECK(t.imag_residual == 0.0);

  mc::RealTrace z = mc::trace_real(mc::SquareMatrix(mc::Matrix::Zero(3, 3)));
  CHECK(z.value == 0.0);

  // Products of Hermitian matrices have a real trace up to rounding.
  mc::Matrix p = testsupport::random_hermitian(1, 4);
  mc::Matrix q = testsupport::random_hermitian(2, 4);
  mc::RealTrace pq = mc::trace_real(mc::SquareMatrix(p * q));
  CHECK(pq.imag_residual <= 1e-12 * (1.0 + std::abs(pq.value)));
}

TEST_CASE("trace_real_strict raises on a complex trace") {
  mc::Matrix m(1, 1);
  m(0, 0) = kI;
  CHECK(thrown_code([&] { mc::trace_real_strict(mc::SquareMatrix(m)); }) ==
        Errc::kImagResidual);
  // The non-strict variant reports the residual instead.
  mc::RealTrace t = mc::trace_real(mc::SquareMatrix(m));
  CHECK(t.value == 0.0);
  CHECK(t.imag_residual == 1.0);
}
