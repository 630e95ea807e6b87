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

#include "traceineq/reliability.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace traceineq::reliability {

namespace {

using matcore::Complex;
using matcore::HermitianMatrix;
using matcore::Matrix;
using matcore::RealVector;
using matcore::SpectralFunction;

void require_s_range(double s, const char* what) {
  if (!(s >= 0.0 && s <= 1.0)) {
    raise(Errc::kDomainViolation,
          std::string(what) + ": s must lie in [0, 1]");
  }
}

Matrix mixture_power_raw(const ensembles::Ensemble& ens, double s) {
  auto root = SpectralFunction::power(1.0 / (1.0 + s));
  int n = ens.dim();
  Matrix acc = Matrix::Zero(n, n);
  for (int i = 0; i < ens.size(); ++i) {
    acc += ens.weights()[i] *
           matcore::apply_spectral(ens.states()[i].matrix(), root).entries();
  }
  return acc;
}

// E(s) from an existing decomposition of A(s); the gate is the caller's
// responsibility where required.
double e_from_decomposition(const matcore::SpectralDecomposition& d,
                            double s) {
  auto lift = SpectralFunction::power(1.0 + s);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    tr += lift(d.eigenvalues[i]);
  }
  if (!(tr > 0.0)) {
    raise(Errc::kNonpositiveTrace, "auxiliary_e: tr[A(s)^(1+s)] <= 0");
  }
  return -std::log(tr);
}

double gated_e(const ensembles::Ensemble& ens, double s) {
  auto d = matcore::spectral_decompose(
      HermitianMatrix::from_symmetrized(mixture_power_raw(ens, s)));
  if (d.eigenvalues[0] < kMixtureGateTol) {
    raise(Errc::kSingularMixture,
          "concavity_profile: A(s) failed the invertibility gate at s = " +
              std::to_string(s));
  }
  return e_from_decomposition(d, s);
}

}  // namespace

HermitianMatrix mixture_power(const ensembles::Ensemble& ens, double s) {
  require_s_range(s, "mixture_power");
  return HermitianMatrix::from_symmetrized(mixture_power_raw(ens, s));
}

double auxiliary_e(const ensembles::Ensemble& ens, double s) {
  require_s_range(s, "auxiliary_e");
  auto d = matcore::spectral_decompose(
      HermitianMatrix::from_symmetrized(mixture_power_raw(ens, s)));
  return e_from_decomposition(d, s);
}

ConditionMargin sufficient_condition_margin(const ensembles::Ensemble& ens,
                                            double s) {
  require_s_range(s, "sufficient_condition_margin");
  int n = ens.dim();
  double inv_exp = 1.0 / (1.0 + s);

  // One decomposition per state: T_i, T_i (log T_i)^2 and -T_i log T_i are
  // scalar compositions on the same eigenbasis.
  Matrix x_sum = Matrix::Zero(n, n);
  Matrix h_sum = Matrix::Zero(n, n);
  auto root = SpectralFunction::power(inv_exp);
  auto xlogsq = SpectralFunction::x_log_squared();
  auto negxlogx = SpectralFunction::neg_x_log_x();
  for (int i = 0; i < ens.size(); ++i) {
    auto d = matcore::spectral_decompose(ens.states()[i].matrix());
    RealVector x_eig(n), h_eig(n);
    for (int k = 0; k < n; ++k) {
      double t = root(d.eigenvalues[k]);
      x_eig[k] = xlogsq(t);
      h_eig[k] = negxlogx(t);
    }
    double w = ens.weights()[i];
    x_sum += w * (d.eigenvectors * x_eig.cast<Complex>().asDiagonal() *
                  d.eigenvectors.adjoint());
    h_sum += w * (d.eigenvectors * h_eig.cast<Complex>().asDiagonal() *
                  d.eigenvectors.adjoint());
  }

  auto da = matcore::spectral_decompose(
      HermitianMatrix::from_symmetrized(mixture_power_raw(ens, s)));
  if (da.eigenvalues[0] < kMixtureGateTol) {
    raise(Errc::kSingularMixture,
          "sufficient_condition_margin: A(s) failed the invertibility gate");
  }
  Matrix a_pos =
      matcore::apply_spectral(da, SpectralFunction::power(s)).entries();
  Matrix a_half =
      matcore::apply_spectral(da, SpectralFunction::power((s - 1.0) / 2.0))
          .entries();

  Complex t1 = (a_pos * x_sum).trace();
  // tr[A^(s-1) H^2] as a squared Frobenius norm: exactly real and free of
  // large intermediates.
  double t2 = (a_half * h_sum).squaredNorm();
  return ConditionMargin{t1.real() - t2, std::abs(t1.imag())};
}

AuxiliaryProfile concavity_profile(const ensembles::Ensemble& ens,
                                   std::vector<double> s_grid, double step) {
  if (!(step > 0.0) || step > 0.5) {
    raise(Errc::kInvalidConfig, "concavity_profile: step must be in (0, 0.5]");
  }
  if (s_grid.empty()) {
    raise(Errc::kInvalidConfig, "concavity_profile: empty grid");
  }
  for (size_t k = 0; k < s_grid.size(); ++k) {
    if (!(s_grid[k] >= 0.0 && s_grid[k] <= 1.0)) {
      raise(Errc::kInvalidConfig, "concavity_profile: grid outside [0, 1]");
    }
    if (k > 0 && !(s_grid[k] > s_grid[k - 1])) {
      raise(Errc::kInvalidConfig,
            "concavity_profile: grid must be strictly increasing");
    }
  }

  constexpr double kEdgeTol = 1e-12;
  AuxiliaryProfile out;
  out.step = step;
  out.e_values.reserve(s_grid.size());
  out.second_differences.reserve(s_grid.size());
  for (double s : s_grid) {
    double e0 = gated_e(ens, s);
    double dd;
    if (s <= kEdgeTol) {
      double e1 = gated_e(ens, s + step);
      double e2 = gated_e(ens, s + 2.0 * step);
      dd = (e2 - 2.0 * e1 + e0) / (step * step);
    } else if (s >= 1.0 - kEdgeTol) {
      double e1 = gated_e(ens, s - step);
      double e2 = gated_e(ens, s - 2.0 * step);
      dd = (e0 - 2.0 * e1 + e2) / (step * step);
    } else {
      double h = std::min({step, s, 1.0 - s});
      double ep = gated_e(ens, s + h);
      double em = gated_e(ens, s - h);
      dd = (ep - 2.0 * e0 + em) / (h * h);
    }
    out.e_values.push_back(e0);
    out.second_differences.push_back(dd);
  }
  out.s_grid = std::move(s_grid);
  return out;
}

}  // namespace traceineq::reliability
