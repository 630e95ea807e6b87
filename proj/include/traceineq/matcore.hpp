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

#include <complex>

#include <Eigen/Dense>

#include "traceineq/errors.hpp"

namespace traceineq::matcore {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Hermiticity check: max|M - M^H| <= kHermitianTol * max|M| (zero matrix passes).
inline constexpr double kHermitianTol = 1e-12;
// Decomposition health: unitarity defect and relative reconstruction residual.
inline constexpr double kDecompositionTol = 1e-10;
// Eigenvalues in [-floor, 0) count as zero for functions defined on [0, inf).
inline constexpr double kDefaultEigFloor = 1e-12;
// trace_real_strict: |Im| must stay within kImagResidualTol * (1 + |Re|).
inline constexpr double kImagResidualTol = 1e-8;

// (M + M^H)/2. Bitwise idempotent: hermitize(hermitize(M)) == hermitize(M).
Matrix hermitize(const Matrix& m);

class SquareMatrix {
 public:
  explicit SquareMatrix(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }

 private:
  Matrix m_;
};

class HermitianMatrix {
 public:
  // Validates hermiticity within kHermitianTol; throws kNonHermitian.
  explicit HermitianMatrix(const Matrix& m);

  // Applies (M + M^H)/2 and skips the check. For matrices that are Hermitian
  // by construction (spectral rebuilds, sums of Hermitian terms).
  static HermitianMatrix from_symmetrized(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, Matrix m) : m_(std::move(m)) {}

  Matrix m_;
};

// Eigenvalues ascending; eigenvector columns aligned with them.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Scalar functions lifted to Hermitian matrices through the spectrum.
// Domain policy, with floor = eigenvalue_floor():
//   - any eigenvalue below -floor where the function needs [0, inf) raises
//     kNegativeSpectrum;
//   - log and nonpositive powers clip [0, floor) up to floor (they need a
//     strictly positive argument);
//   - x log x, x log^2 x and positive non-integer powers send [-floor, 0]
//     to their limit value 0;
//   - integer powers (0, 1, 2) and square accept any real eigenvalue.
class SpectralFunction {
 public:
  enum class Kind { kLog, kPower, kNegXLogX, kXLogSquared, kSquare };

  static SpectralFunction log(double eig_floor = kDefaultEigFloor);
  // exponent must be finite and within [-2, 2]; throws kDomainViolation.
  static SpectralFunction power(double exponent,
                                double eig_floor = kDefaultEigFloor);
  static SpectralFunction neg_x_log_x(double eig_floor = kDefaultEigFloor);
  static SpectralFunction x_log_squared(double eig_floor = kDefaultEigFloor);
  static SpectralFunction square();

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  double eigenvalue_floor() const { return floor_; }

  double operator()(double lambda) const;

 private:
  SpectralFunction(Kind kind, double exponent, double eig_floor)
      : kind_(kind), exponent_(exponent), floor_(eig_floor) {}

  Kind kind_;
  double exponent_;
  double floor_;
};

// Throws kEigenFailure if the solver fails or the result violates the
// unitarity/reconstruction bounds (kDecompositionTol).
SpectralDecomposition spectral_decompose(const HermitianMatrix& h);

HermitianMatrix apply_spectral(const HermitianMatrix& h,
                               const SpectralFunction& f);
// Reuses an existing decomposition; one decomposition can serve several
// function applications to the same matrix.
HermitianMatrix apply_spectral(const SpectralDecomposition& d,
                               const SpectralFunction& f);

// Min eigenvalue of (b - a): nonnegative iff a <= b in the semidefinite order.
double loewner_margin(const HermitianMatrix& a, const HermitianMatrix& b);

struct RealTrace {
  double value = 0.0;
  double imag_residual = 0.0;
};

RealTrace trace_real(const SquareMatrix& m);
// Throws kImagResidual when |Im| > kImagResidualTol * (1 + |Re|).
double trace_real_strict(const SquareMatrix& m);

}  // namespace traceineq::matcore
