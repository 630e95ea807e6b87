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

#include "traceineq/matcore.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace traceineq {

const char* errc_token(Errc code) noexcept {
  switch (code) {
    case Errc::kNonHermitian: return "NON_HERMITIAN";
    case Errc::kEigenFailure: return "EIGEN_FAILURE";
    case Errc::kNegativeSpectrum: return "NEGATIVE_SPECTRUM";
    case Errc::kDimMismatch: return "DIM_MISMATCH";
    case Errc::kImagResidual: return "IMAG_RESIDUAL";
    case Errc::kNonpositiveTrace: return "NONPOSITIVE_TRACE";
    case Errc::kSingularMixture: return "SINGULAR_MIXTURE";
    case Errc::kSingularSum: return "SINGULAR_SUM";
    case Errc::kSingularState: return "SINGULAR_STATE";
    case Errc::kContractionViolation: return "CONTRACTION_VIOLATION";
    case Errc::kDomainViolation: return "DOMAIN_VIOLATION";
    case Errc::kNonpositiveInput: return "NONPOSITIVE_INPUT";
    case Errc::kUnknownInequality: return "UNKNOWN_INEQUALITY";
    case Errc::kInvalidConfig: return "INVALID_CONFIG";
  }
  return "UNKNOWN";
}

}  // namespace traceineq

namespace traceineq::matcore {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    raise(Errc::kDimMismatch,
          std::string(what) + ": matrix must be square and nonempty, got " +
              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

Matrix hermitize(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

SquareMatrix::SquareMatrix(Matrix m) : m_(std::move(m)) {
  require_square(m_, "SquareMatrix");
}

HermitianMatrix::HermitianMatrix(const Matrix& m) : m_(m) {
  require_square(m_, "HermitianMatrix");
  double scale = m_.cwiseAbs().maxCoeff();
  double defect = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kHermitianTol * scale) {
    raise(Errc::kNonHermitian,
          "HermitianMatrix: defect " + std::to_string(defect) +
              " exceeds tolerance at scale " + std::to_string(scale));
  }
}

HermitianMatrix HermitianMatrix::from_symmetrized(Matrix m) {
  require_square(m, "HermitianMatrix");
  return HermitianMatrix(Trusted{}, hermitize(m));
}

SpectralFunction SpectralFunction::log(double eig_floor) {
  return SpectralFunction(Kind::kLog, 0.0, eig_floor);
}

SpectralFunction SpectralFunction::power(double exponent, double eig_floor) {
  if (!std::isfinite(exponent) || exponent < -2.0 || exponent > 2.0) {
    raise(Errc::kDomainViolation,
          "SpectralFunction::power: exponent must lie in [-2, 2]");
  }
  return SpectralFunction(Kind::kPower, exponent, eig_floor);
}

SpectralFunction SpectralFunction::neg_x_log_x(double eig_floor) {
  return SpectralFunction(Kind::kNegXLogX, 0.0, eig_floor);
}

SpectralFunction SpectralFunction::x_log_squared(double eig_floor) {
  return SpectralFunction(Kind::kXLogSquared, 0.0, eig_floor);
}

SpectralFunction SpectralFunction::square() {
  return SpectralFunction(Kind::kSquare, 0.0, kDefaultEigFloor);
}

double SpectralFunction::operator()(double lambda) const {
  switch (kind_) {
    case Kind::kSquare:
      return lambda * lambda;
    case Kind::kLog:
      if (lambda < -floor_) {
        raise(Errc::kNegativeSpectrum, "log: eigenvalue below -floor");
      }
      return std::log(std::max(lambda, floor_));
    case Kind::kNegXLogX:
      if (lambda < -floor_) {
        raise(Errc::kNegativeSpectrum, "neg_x_log_x: eigenvalue below -floor");
      }
      return lambda <= 0.0 ? 0.0 : -lambda * std::log(lambda);
    case Kind::kXLogSquared: {
      if (lambda < -floor_) {
        raise(Errc::kNegativeSpectrum,
              "x_log_squared: eigenvalue below -floor");
      }
      if (lambda <= 0.0) return 0.0;
      double lg = std::log(lambda);
      return lambda * lg * lg;
    }
    case Kind::kPower: {
      if (exponent_ == std::rint(exponent_) && exponent_ >= 0.0) {
        return std::pow(lambda, exponent_);
      }
      if (exponent_ < 0.0) {
        if (lambda < -floor_) {
          raise(Errc::kNegativeSpectrum,
                "power: negative exponent needs positive spectrum");
        }
        return std::pow(std::max(lambda, floor_), exponent_);
      }
      if (lambda < -floor_) {
        raise(Errc::kNegativeSpectrum,
              "power: fractional exponent needs nonnegative spectrum");
      }
      return lambda <= 0.0 ? 0.0 : std::pow(lambda, exponent_);
    }
  }
  raise(Errc::kDomainViolation, "SpectralFunction: unknown kind");
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries());
  if (solver.info() != Eigen::Success) {
    raise(Errc::kEigenFailure, "spectral_decompose: solver did not converge");
  }
  SpectralDecomposition d{solver.eigenvalues(), solver.eigenvectors()};

  int n = d.dim();
  double unitarity =
      (d.eigenvectors.adjoint() * d.eigenvectors - Matrix::Identity(n, n))
          .norm();
  if (unitarity > kDecompositionTol) {
    raise(Errc::kEigenFailure, "spectral_decompose: eigenbasis not unitary");
  }
  Matrix rebuilt = d.eigenvectors *
                   d.eigenvalues.cast<Complex>().asDiagonal() *
                   d.eigenvectors.adjoint();
  double residual = (rebuilt - h.entries()).norm();
  if (residual > kDecompositionTol * h.entries().norm() &&
      h.entries().norm() > 0.0) {
    raise(Errc::kEigenFailure, "spectral_decompose: reconstruction residual");
  }
  return d;
}

HermitianMatrix apply_spectral(const HermitianMatrix& h,
                               const SpectralFunction& f) {
  return apply_spectral(spectral_decompose(h), f);
}

HermitianMatrix apply_spectral(const SpectralDecomposition& d,
                               const SpectralFunction& f) {
  RealVector mapped(d.eigenvalues.size());
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    mapped[i] = f(d.eigenvalues[i]);
  }
  Matrix out = d.eigenvectors * mapped.cast<Complex>().asDiagonal() *
               d.eigenvectors.adjoint();
  return HermitianMatrix::from_symmetrized(std::move(out));
}

double loewner_margin(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    raise(Errc::kDimMismatch, "loewner_margin: dimension mismatch");
  }
  HermitianMatrix diff =
      HermitianMatrix::from_symmetrized(b.entries() - a.entries());
  return spectral_decompose(diff).eigenvalues[0];
}

RealTrace trace_real(const SquareMatrix& m) {
  Complex tr = m.entries().trace();
  return RealTrace{tr.real(), std::abs(tr.imag())};
}

double trace_real_strict(const SquareMatrix& m) {
  RealTrace tr = trace_real(m);
  if (tr.imag_residual > kImagResidualTol * (1.0 + std::abs(tr.value))) {
    raise(Errc::kImagResidual, "trace_real_strict: imaginary residual " +
                                   std::to_string(tr.imag_residual));
  }
  return tr.value;
}

}  // namespace traceineq::matcore
