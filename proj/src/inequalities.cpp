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

#include "traceineq/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <json.hpp>

#include "traceineq/interchange.hpp"
#include "traceineq/report.hpp"

namespace traceineq::inequalities {

namespace {

using ensembles::Ensemble;
using ensembles::PositiveContraction;
using matcore::Complex;
using matcore::HermitianMatrix;
using matcore::Matrix;
using matcore::RealVector;
using matcore::SpectralDecomposition;
using matcore::SpectralFunction;

void require_s_range(double s, const char* what) {
  if (!(s >= 0.0 && s <= 1.0)) {
    raise(Errc::kDomainViolation,
          std::string(what) + ": s must lie in [0, 1]");
  }
}

void require_same_dim(int da, int db, const char* what) {
  if (da != db) {
    raise(Errc::kDimMismatch, std::string(what) + ": dimension mismatch");
  }
}

// Shared building blocks of the pair margins: decompositions of A, B and
// A + B, plus K = A log^2 A + B log^2 B and L = A log A + B log B.
struct PairBlocks {
  SpectralDecomposition sum;
  Matrix k;
  Matrix l;
};

PairBlocks pair_blocks(const PositiveContraction& a,
                       const PositiveContraction& b) {
  require_same_dim(a.dim(), b.dim(), "pair margin");
  auto da = matcore::spectral_decompose(a.matrix());
  auto db = matcore::spectral_decompose(b.matrix());
  auto xlogsq = SpectralFunction::x_log_squared();
  auto negxlogx = SpectralFunction::neg_x_log_x();
  Matrix k = matcore::apply_spectral(da, xlogsq).entries() +
             matcore::apply_spectral(db, xlogsq).entries();
  Matrix l = -(matcore::apply_spectral(da, negxlogx).entries() +
               matcore::apply_spectral(db, negxlogx).entries());
  auto sum = matcore::spectral_decompose(HermitianMatrix::from_symmetrized(
      a.matrix().entries() + b.matrix().entries()));
  return PairBlocks{std::move(sum), std::move(k), std::move(l)};
}

void require_sum_gate(const SpectralDecomposition& sum, const char* what) {
  if (sum.eigenvalues[0] < kSumGateTol) {
    raise(Errc::kSingularSum,
          std::string(what) + ": A + B failed the invertibility gate");
  }
}

double min_eig_of(const Matrix& m) {
  return matcore::spectral_decompose(HermitianMatrix::from_symmetrized(m))
      .eigenvalues[0];
}

}  // namespace

const char* margin_kind_token(MarginKind kind) {
  switch (kind) {
    case MarginKind::kTrace: return "trace";
    case MarginKind::kOperatorMinEig: return "operator_min_eig";
    case MarginKind::kScalar: return "scalar";
  }
  return "unknown";
}

TraceMargin trace_margin_general_s(const PositiveContraction& a,
                                   const PositiveContraction& b, double s) {
  require_s_range(s, "trace_margin_general_s");
  PairBlocks blocks = pair_blocks(a, b);
  if (s < 1.0) require_sum_gate(blocks.sum, "trace_margin_general_s");

  Matrix sum_pos =
      matcore::apply_spectral(blocks.sum, SpectralFunction::power(s))
          .entries();
  Matrix sum_half = matcore::apply_spectral(
                        blocks.sum, SpectralFunction::power((s - 1.0) / 2.0))
                        .entries();
  Complex t1 = (sum_pos * blocks.k).trace();
  double t2 = (sum_half * blocks.l).squaredNorm();
  TraceMargin out;
  out.margin = t1.real() - t2;
  out.imag_residual = std::abs(t1.imag());
  out.scale = std::abs(t1.real()) + t2;
  return out;
}

double operator_margin_s0(const PositiveContraction& a,
                          const PositiveContraction& b) {
  PairBlocks blocks = pair_blocks(a, b);
  require_sum_gate(blocks.sum, "operator_margin_s0");
  Matrix neg_half =
      matcore::apply_spectral(blocks.sum, SpectralFunction::power(-0.5))
          .entries();
  Matrix x = neg_half * blocks.l;
  return min_eig_of(blocks.k - x.adjoint() * x);
}

double operator_margin_question(const PositiveContraction& a,
                                const PositiveContraction& b,
                                Question which) {
  PairBlocks blocks = pair_blocks(a, b);
  Matrix l_sq = blocks.l * blocks.l;
  if (which == Question::kSumOutside) {
    Matrix half =
        matcore::apply_spectral(blocks.sum, SpectralFunction::power(0.5))
            .entries();
    return min_eig_of(half * blocks.k * half - l_sq);
  }
  Matrix k_half =
      matcore::apply_spectral(HermitianMatrix::from_symmetrized(blocks.k),
                              SpectralFunction::power(0.5))
          .entries();
  Matrix sum = a.matrix().entries() + b.matrix().entries();
  return min_eig_of(k_half * sum * k_half - l_sq);
}

SchattenTriple schatten_reduce(const PositiveContraction& a,
                               const PositiveContraction& b) {
  PairBlocks blocks = pair_blocks(a, b);
  require_sum_gate(blocks.sum, "schatten_reduce");
  int n = blocks.sum.dim();
  SchattenTriple out;
  out.t = blocks.sum.eigenvalues;
  out.a.resize(n);
  out.b.resize(n);
  for (int i = 0; i < n; ++i) {
    auto phi = blocks.sum.eigenvectors.col(i);
    out.a[i] = phi.dot(blocks.k * phi).real();
    out.b[i] = (blocks.l * phi).squaredNorm();
  }
  return out;
}

double schatten_margin(const SchattenTriple& triple, double s) {
  require_s_range(s, "schatten_margin");
  double margin = 0.0;
  for (Eigen::Index i = 0; i < triple.t.size(); ++i) {
    margin += std::pow(triple.t[i], s) * triple.a[i] -
              std::pow(triple.t[i], s - 1.0) * triple.b[i];
  }
  return margin;
}

Lemma2Margin lemma2_margin(std::span<const double> t,
                           std::span<const double> a,
                           std::span<const double> b, double s) {
  require_s_range(s, "lemma2_margin");
  if (t.size() != a.size() || t.size() != b.size() || t.size() < 2) {
    raise(Errc::kDimMismatch,
          "lemma2_margin: lengths must match and be >= 2");
  }
  Lemma2Margin out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(a[i] > 0.0) || !(b[i] > 0.0)) {
      raise(Errc::kNonpositiveInput,
            "lemma2_margin: entries must be positive");
    }
    out.margin += a[i] * std::pow(t[i], s) - b[i] * std::pow(t[i], s - 1.0);
    out.cond_i += a[i] * t[i] - b[i];
    out.cond_ii += a[i] - b[i] / t[i];
  }
  return out;
}

PairwiseExpansion pairwise_expansion_s1(const Ensemble& ens) {
  int count = ens.size();
  int n = ens.dim();
  auto root = SpectralFunction::power(0.5);
  auto xlogsq = SpectralFunction::x_log_squared();
  auto negxlogx = SpectralFunction::neg_x_log_x();

  // Per state: R = S^(1/2), W = R log^2 R, G = R log R, one decomposition.
  std::vector<Matrix> r_mats, w_mats, g_mats;
  r_mats.reserve(count);
  w_mats.reserve(count);
  g_mats.reserve(count);
  for (int i = 0; i < count; ++i) {
    auto d = matcore::spectral_decompose(ens.states()[i].matrix());
    RealVector r_eig(n), w_eig(n), g_eig(n);
    for (int k = 0; k < n; ++k) {
      double r = root(d.eigenvalues[k]);
      r_eig[k] = r;
      w_eig[k] = xlogsq(r);
      g_eig[k] = -negxlogx(r);
    }
    auto rebuild = [&](const RealVector& eig) {
      return Matrix(d.eigenvectors * eig.cast<Complex>().asDiagonal() *
                    d.eigenvectors.adjoint());
    };
    r_mats.push_back(rebuild(r_eig));
    w_mats.push_back(rebuild(w_eig));
    g_mats.push_back(rebuild(g_eig));
  }

  PairwiseExpansion out;
  out.pair_terms = Eigen::MatrixXd::Zero(count, count);
  out.min_pair_term = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      Complex tij = (r_mats[i] * w_mats[j]).trace();
      Complex tji = (r_mats[j] * w_mats[i]).trace();
      Complex cross = (g_mats[i] * g_mats[j]).trace();
      double term = tij.real() + tji.real() - 2.0 * cross.real();
      double residual = std::abs(tij.imag()) + std::abs(tji.imag()) +
                        2.0 * std::abs(cross.imag());
      out.pair_terms(i, j) = term;
      out.pair_terms(j, i) = term;
      out.total += ens.weights()[i] * ens.weights()[j] * term;
      out.min_pair_term = std::min(out.min_pair_term, term);
      out.imag_residual = std::max(out.imag_residual, residual);
    }
  }
  return out;
}

double jensen_operator_gap(const SpectralFunction& f,
                           std::span<const HermitianMatrix> k,
                           std::span<const matcore::SquareMatrix> c) {
  if (k.empty() || k.size() != c.size()) {
    raise(Errc::kDimMismatch, "jensen_operator_gap: empty or mismatched");
  }
  int n = k.front().dim();
  for (size_t i = 0; i < k.size(); ++i) {
    require_same_dim(k[i].dim(), n, "jensen_operator_gap");
    require_same_dim(c[i].dim(), n, "jensen_operator_gap");
  }

  Matrix csum = Matrix::Zero(n, n);
  Matrix inner = Matrix::Zero(n, n);
  Matrix lifted = Matrix::Zero(n, n);
  for (size_t i = 0; i < k.size(); ++i) {
    const Matrix& ci = c[i].entries();
    csum += ci.adjoint() * ci;
    inner += ci.adjoint() * k[i].entries() * ci;
    Matrix fk;
    try {
      fk = matcore::apply_spectral(k[i], f).entries();
    } catch (const NumericError& e) {
      if (e.code() == Errc::kNegativeSpectrum) {
        raise(Errc::kDomainViolation,
              std::string("jensen_operator_gap: K spectrum outside the "
                          "function domain: ") +
                  e.what());
      }
      throw;
    }
    lifted += ci.adjoint() * fk * ci;
  }

  double overshoot =
      -matcore::loewner_margin(HermitianMatrix::from_symmetrized(csum),
                               HermitianMatrix::from_symmetrized(
                                   Matrix::Identity(n, n)));
  if (overshoot > kContractionGateTol) {
    raise(Errc::kContractionViolation,
          "jensen_operator_gap: sum C^H C exceeds the identity by " +
              std::to_string(overshoot));
  }

  Matrix f_inner =
      matcore::apply_spectral(HermitianMatrix::from_symmetrized(inner), f)
          .entries();
  return min_eig_of(lifted - f_inner);
}

HolevoJensen holevo_jensen_instance(const Ensemble& ens) {
  int n = ens.dim();
  int count = ens.size();

  Matrix w_raw = Matrix::Zero(n, n);
  for (int i = 0; i < count; ++i) {
    w_raw += ens.weights()[i] * ens.states()[i].matrix().entries();
  }
  auto dw =
      matcore::spectral_decompose(HermitianMatrix::from_symmetrized(w_raw));
  if (dw.eigenvalues[0] < kStateGateTol) {
    raise(Errc::kSingularState,
          "holevo_jensen_instance: mixture failed the state gate");
  }
  Matrix w_invhalf =
      matcore::apply_spectral(dw, SpectralFunction::power(-0.5)).entries();

  std::vector<HermitianMatrix> ks;
  std::vector<matcore::SquareMatrix> cs;
  ks.reserve(count);
  cs.reserve(count);
  Matrix csum = Matrix::Zero(n, n);
  for (int i = 0; i < count; ++i) {
    auto d = matcore::spectral_decompose(ens.states()[i].matrix());
    if (d.eigenvalues[0] < kStateGateTol) {
      raise(Errc::kSingularState,
            "holevo_jensen_instance: state failed the state gate");
    }
    ks.push_back(HermitianMatrix::from_symmetrized(
        -matcore::apply_spectral(d, SpectralFunction::log()).entries()));
    Matrix half =
        matcore::apply_spectral(d, SpectralFunction::power(0.5)).entries();
    Matrix ci = std::sqrt(ens.weights()[i]) * (half * w_invhalf);
    csum += ci.adjoint() * ci;
    cs.emplace_back(std::move(ci));
  }

  HolevoJensen out;
  out.completeness_residual = (csum - Matrix::Identity(n, n)).norm();
  out.gap = jensen_operator_gap(SpectralFunction::square(), ks, cs);
  return out;
}

namespace {

// log A with the pair gate policy shared by the relative-entropy maps.
Matrix gated_log(const SpectralDecomposition& d, GateMode mode,
                 const char* what) {
  if (mode == GateMode::kStrict && d.eigenvalues[0] < kStateGateTol) {
    raise(Errc::kSingularState,
          std::string(what) + ": spectrum below the state gate");
  }
  return matcore::apply_spectral(d, SpectralFunction::log()).entries();
}

}  // namespace

matcore::SquareMatrix relative_entropy_product(const HermitianMatrix& a,
                                               const HermitianMatrix& b,
                                               GateMode mode) {
  require_same_dim(a.dim(), b.dim(), "relative_entropy_product");
  auto da = matcore::spectral_decompose(a);
  auto db = matcore::spectral_decompose(b);
  Matrix log_a = gated_log(da, mode, "relative_entropy_product");
  Matrix log_b = gated_log(db, mode, "relative_entropy_product");
  return matcore::SquareMatrix(a.entries() * (log_a - log_b));
}

EntropyProductMargins entropy_product_margins(const HermitianMatrix& a,
                                              const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "entropy_product_margins");
  auto da = matcore::spectral_decompose(a);
  auto db = matcore::spectral_decompose(b);
  Matrix log_a = gated_log(da, GateMode::kStrict, "entropy_product_margins");
  Matrix log_b = gated_log(db, GateMode::kStrict, "entropy_product_margins");
  Matrix delta = log_a - log_b;

  Matrix d_ab = a.entries() * delta;   // D(A, B)
  Matrix d_ba = -(b.entries() * delta);  // D(B, A)

  EntropyProductMargins out;
  Complex t1 = (d_ab * d_ba).trace();
  out.m1 = t1.real();
  out.imag_residual_1 = std::abs(t1.imag());
  out.scale_1 = d_ab.norm() * d_ba.norm();

  auto dsum = matcore::spectral_decompose(
      HermitianMatrix::from_symmetrized(a.entries() + b.entries()));
  require_sum_gate(dsum, "entropy_product_margins");
  Matrix inv_half =
      matcore::apply_spectral(dsum, SpectralFunction::power(-0.5)).entries();
  // tr[(A+B)^(-1) D(A,B) D(B,A)^H] regrouped as tr[X Y^H] with
  // X = ((A+B)^(-1/2) A) delta and Y = ((A+B)^(-1/2) B) delta; the grouped
  // products (A+B)^(-1/2) A and (A+B)^(-1/2) B are contractions, which
  // keeps intermediates small.
  Matrix x = (inv_half * a.entries()) * delta;
  Matrix y = (inv_half * b.entries()) * delta;
  Complex t2 = x.cwiseProduct(y.conjugate()).sum();
  out.m2 = -t2.real();
  out.imag_residual_2 = std::abs(t2.imag());
  out.scale_2 = x.norm() * y.norm();
  return out;
}

SandwichedLog sandwiched_log_term(const HermitianMatrix& a,
                                  const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "sandwiched_log_term");
  auto da = matcore::spectral_decompose(a);
  auto db = matcore::spectral_decompose(b);
  if (da.eigenvalues[0] < kStateGateTol ||
      db.eigenvalues[0] < kStateGateTol) {
    raise(Errc::kSingularState,
          "sandwiched_log_term: spectrum below the state gate");
  }
  Matrix inv_half =
      matcore::apply_spectral(da, SpectralFunction::power(-0.5)).entries();
  Matrix half =
      matcore::apply_spectral(da, SpectralFunction::power(0.5)).entries();
  auto conjugated = HermitianMatrix::from_symmetrized(
      inv_half * b.entries() * inv_half);
  Matrix log_m =
      matcore::apply_spectral(conjugated, SpectralFunction::log()).entries();
  SandwichedLog out{
      HermitianMatrix::from_symmetrized(half * log_m * half),
      conjugated.entries().norm(),
  };
  return out;
}

// --- inequality registry -------------------------------------------------

namespace {

constexpr InequalityInfo kRegistry[] = {
    {"thm1", MarginKind::kTrace, false, InputFamily::kContractionPair,
     Assertion::kAlways},
    {"thm2-trace", MarginKind::kTrace, false, InputFamily::kContractionPair,
     Assertion::kAlways},
    {"thm2-operator", MarginKind::kOperatorMinEig, false,
     InputFamily::kContractionPair, Assertion::kAlways},
    {"eq3", MarginKind::kTrace, true, InputFamily::kContractionPair,
     Assertion::kDimTwoOnly},
    {"q1", MarginKind::kOperatorMinEig, false, InputFamily::kContractionPair,
     Assertion::kNever},
    {"q2", MarginKind::kOperatorMinEig, false, InputFamily::kContractionPair,
     Assertion::kNever},
    {"lemma2", MarginKind::kScalar, true, InputFamily::kScalarTriple,
     Assertion::kDimTwoOnly},
    {"remark2", MarginKind::kTrace, false, InputFamily::kEnsemble,
     Assertion::kAlways},
    {"lemma1-jensen", MarginKind::kOperatorMinEig, false,
     InputFamily::kContractionPair, Assertion::kNever},
    {"remark3", MarginKind::kOperatorMinEig, false, InputFamily::kEnsemble,
     Assertion::kAlways},
    {"thm4-1", MarginKind::kTrace, false, InputFamily::kContractionPair,
     Assertion::kAlways},
    {"thm4-2", MarginKind::kTrace, false, InputFamily::kContractionPair,
     Assertion::kAlways},
    {"remark4", MarginKind::kScalar, false, InputFamily::kCommutingPair,
     Assertion::kNever},
};

const ContractionPairInput& expect_pair(const InequalityInput& input,
                                        const char* what) {
  const auto* pair = std::get_if<ContractionPairInput>(&input);
  if (pair == nullptr) {
    raise(Errc::kInvalidConfig,
          std::string(what) + ": expected a contraction pair input");
  }
  return *pair;
}

const Ensemble& expect_ensemble(const InequalityInput& input,
                                const char* what) {
  const auto* ens = std::get_if<Ensemble>(&input);
  if (ens == nullptr) {
    raise(Errc::kInvalidConfig,
          std::string(what) + ": expected an ensemble input");
  }
  return *ens;
}

const TripleInput& expect_triple(const InequalityInput& input,
                                 const char* what) {
  const auto* triple = std::get_if<TripleInput>(&input);
  if (triple == nullptr) {
    raise(Errc::kInvalidConfig,
          std::string(what) + ": expected a scalar triple input");
  }
  return *triple;
}

Evaluation jensen_pair_instance(const ContractionPairInput& pair) {
  auto da = matcore::spectral_decompose(pair.a.matrix());
  auto db = matcore::spectral_decompose(pair.b.matrix());
  auto dsum = matcore::spectral_decompose(HermitianMatrix::from_symmetrized(
      pair.a.matrix().entries() + pair.b.matrix().entries()));
  require_sum_gate(dsum, "lemma1-jensen");
  Matrix inv_half =
      matcore::apply_spectral(dsum, SpectralFunction::power(-0.5)).entries();

  std::vector<HermitianMatrix> ks;
  ks.push_back(HermitianMatrix::from_symmetrized(
      -matcore::apply_spectral(da, SpectralFunction::log()).entries()));
  ks.push_back(HermitianMatrix::from_symmetrized(
      -matcore::apply_spectral(db, SpectralFunction::log()).entries()));
  std::vector<matcore::SquareMatrix> cs;
  cs.emplace_back(Matrix(
      matcore::apply_spectral(da, SpectralFunction::power(0.5)).entries() *
      inv_half));
  cs.emplace_back(Matrix(
      matcore::apply_spectral(db, SpectralFunction::power(0.5)).entries() *
      inv_half));

  Evaluation out;
  out.margin = jensen_operator_gap(SpectralFunction::square(), ks, cs);
  return out;
}

}  // namespace

std::span<const InequalityInfo> all_inequalities() { return kRegistry; }

const InequalityInfo* find_inequality(std::string_view id) {
  for (const auto& info : kRegistry) {
    if (info.id == id) return &info;
  }
  return nullptr;
}

bool is_asserted(const InequalityInfo& info, int dim) {
  switch (info.assertion) {
    case Assertion::kNever: return false;
    case Assertion::kAlways: return true;
    case Assertion::kDimTwoOnly: return dim == 2;
  }
  return false;
}

Evaluation evaluate(const InequalityInfo& info, const InequalityInput& input,
                    std::optional<double> s) {
  if (info.needs_s && !s.has_value()) {
    raise(Errc::kInvalidConfig,
          std::string(info.id) + ": requires an s value");
  }

  if (info.id == "thm1" || info.id == "thm2-trace" || info.id == "eq3") {
    const auto& pair = expect_pair(input, info.id.data());
    double s_eff = info.id == "thm1" ? 1.0 : (info.id == "eq3" ? *s : 0.0);
    TraceMargin tm = trace_margin_general_s(pair.a, pair.b, s_eff);
    return Evaluation{tm.margin, tm.imag_residual, tm.scale};
  }
  if (info.id == "thm2-operator") {
    const auto& pair = expect_pair(input, "thm2-operator");
    return Evaluation{operator_margin_s0(pair.a, pair.b), 0.0, 0.0};
  }
  if (info.id == "q1" || info.id == "q2") {
    const auto& pair = expect_pair(input, info.id.data());
    Question which =
        info.id == "q1" ? Question::kSumOutside : Question::kLogTermOutside;
    return Evaluation{operator_margin_question(pair.a, pair.b, which), 0.0,
                      0.0};
  }
  if (info.id == "lemma2") {
    const auto& triple = expect_triple(input, "lemma2");
    Lemma2Margin lm = lemma2_margin(triple.t, triple.a, triple.b, *s);
    return Evaluation{lm.margin, 0.0, 0.0};
  }
  if (info.id == "remark2") {
    const auto& ens = expect_ensemble(input, "remark2");
    PairwiseExpansion pe = pairwise_expansion_s1(ens);
    return Evaluation{pe.min_pair_term, pe.imag_residual, 0.0};
  }
  if (info.id == "lemma1-jensen") {
    return jensen_pair_instance(expect_pair(input, "lemma1-jensen"));
  }
  if (info.id == "remark3") {
    const auto& ens = expect_ensemble(input, "remark3");
    // The contraction gate inside the Jensen gap rejects instances whose
    // C blocks fail completeness beyond kContractionGateTol.
    HolevoJensen hj = holevo_jensen_instance(ens);
    return Evaluation{hj.gap, 0.0, 0.0};
  }
  if (info.id == "thm4-1" || info.id == "thm4-2") {
    const auto& pair = expect_pair(input, info.id.data());
    EntropyProductMargins em =
        entropy_product_margins(pair.a.matrix(), pair.b.matrix());
    if (info.id == "thm4-1") {
      return Evaluation{-em.m1, em.imag_residual_1, em.scale_1};
    }
    return Evaluation{-em.m2, em.imag_residual_2, em.scale_2};
  }
  if (info.id == "remark4") {
    const auto& pair = expect_pair(input, "remark4");
    SandwichedLog sl = sandwiched_log_term(pair.a.matrix(), pair.b.matrix());
    matcore::SquareMatrix d =
        relative_entropy_product(pair.a.matrix(), pair.b.matrix());
    double residual = (sl.value.entries() + d.entries()).norm();
    return Evaluation{-residual, 0.0, sl.conditioning};
  }
  raise(Errc::kUnknownInequality,
        "evaluate: unknown inequality " + std::string(info.id));
}

// --- fingerprints and witness text ----------------------------------------

namespace {

class Fnv1a {
 public:
  void feed_bytes(const void* data, size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < size; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001B3ull;
    }
  }
  void feed_double(double v) { feed_bytes(&v, sizeof(v)); }
  void feed_u64(std::uint64_t v) { feed_bytes(&v, sizeof(v)); }
  void feed_matrix(const Matrix& m) {
    feed_u64(static_cast<std::uint64_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        feed_double(m(r, c).real());
        feed_double(m(r, c).imag());
      }
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xCBF29CE484222325ull;
};

void write_double_array(report::JsonWriter& w, std::span<const double> v) {
  w.begin_array();
  for (double x : v) w.value_double(x);
  w.end_array();
}

std::vector<double> read_double_array(const nlohmann::json& j,
                                      const char* what) {
  if (!j.is_array() || j.empty()) {
    raise(Errc::kInvalidConfig,
          std::string("parse_input: ") + what + " must be a nonempty array");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) {
      raise(Errc::kInvalidConfig,
            std::string("parse_input: non-numeric entry in ") + what);
    }
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

std::uint64_t input_fingerprint(const InequalityInput& input) {
  Fnv1a h;
  if (const auto* pair = std::get_if<ContractionPairInput>(&input)) {
    h.feed_u64(1);
    h.feed_matrix(pair->a.matrix().entries());
    h.feed_matrix(pair->b.matrix().entries());
  } else if (const auto* ens = std::get_if<Ensemble>(&input)) {
    h.feed_u64(2);
    h.feed_u64(static_cast<std::uint64_t>(ens->size()));
    for (double w : ens->weights()) h.feed_double(w);
    for (const auto& s : ens->states()) h.feed_matrix(s.matrix().entries());
  } else {
    const auto& triple = std::get<TripleInput>(input);
    h.feed_u64(3);
    h.feed_u64(static_cast<std::uint64_t>(triple.t.size()));
    for (double x : triple.t) h.feed_double(x);
    for (double x : triple.a) h.feed_double(x);
    for (double x : triple.b) h.feed_double(x);
  }
  return h.value();
}

int input_dim(const InequalityInput& input) {
  if (const auto* pair = std::get_if<ContractionPairInput>(&input)) {
    return pair->a.dim();
  }
  if (const auto* ens = std::get_if<Ensemble>(&input)) {
    return ens->dim();
  }
  return static_cast<int>(std::get<TripleInput>(input).t.size());
}

std::string serialize_input(const InequalityInput& input) {
  report::JsonWriter w;
  w.begin_object();
  if (const auto* pair = std::get_if<ContractionPairInput>(&input)) {
    w.key("kind").value_string("pair");
    w.key("a").value_raw(
        interchange::matrix_to_text(pair->a.matrix().entries()));
    w.key("b").value_raw(
        interchange::matrix_to_text(pair->b.matrix().entries()));
  } else if (const auto* ens = std::get_if<Ensemble>(&input)) {
    w.key("kind").value_string("ensemble");
    w.key("weights");
    write_double_array(w, ens->weights());
    w.key("states").begin_array();
    for (const auto& s : ens->states()) {
      w.value_raw(interchange::matrix_to_text(s.matrix().entries()));
    }
    w.end_array();
  } else {
    const auto& triple = std::get<TripleInput>(input);
    w.key("kind").value_string("triple");
    w.key("t");
    write_double_array(w, triple.t);
    w.key("a");
    write_double_array(w, triple.a);
    w.key("b");
    write_double_array(w, triple.b);
  }
  w.end_object();
  return w.take();
}

InequalityInput parse_input(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("kind") ||
      !j["kind"].is_string()) {
    raise(Errc::kInvalidConfig, "parse_input: malformed witness text");
  }
  std::string kind = j["kind"].get<std::string>();
  if (kind == "pair") {
    if (!j.contains("a") || !j.contains("b")) {
      raise(Errc::kInvalidConfig, "parse_input: pair needs a and b");
    }
    PositiveContraction a(matcore::HermitianMatrix(
        interchange::matrix_from_text(j["a"].dump())));
    PositiveContraction b(matcore::HermitianMatrix(
        interchange::matrix_from_text(j["b"].dump())));
    return ContractionPairInput{std::move(a), std::move(b)};
  }
  if (kind == "ensemble") {
    if (!j.contains("weights") || !j.contains("states") ||
        !j["states"].is_array()) {
      raise(Errc::kInvalidConfig,
            "parse_input: ensemble needs weights and states");
    }
    std::vector<double> weights = read_double_array(j["weights"], "weights");
    std::vector<ensembles::DensityMatrix> states;
    states.reserve(j["states"].size());
    for (const auto& s : j["states"]) {
      states.emplace_back(matcore::HermitianMatrix(
          interchange::matrix_from_text(s.dump())));
    }
    return Ensemble(std::move(weights), std::move(states));
  }
  if (kind == "triple") {
    if (!j.contains("t") || !j.contains("a") || !j.contains("b")) {
      raise(Errc::kInvalidConfig, "parse_input: triple needs t, a, b");
    }
    return TripleInput{read_double_array(j["t"], "t"),
                       read_double_array(j["a"], "a"),
                       read_double_array(j["b"], "b")};
  }
  raise(Errc::kInvalidConfig, "parse_input: unknown input kind " + kind);
}

}  // namespace traceineq::inequalities
