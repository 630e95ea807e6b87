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
#include <string_view>
#include <variant>
#include <vector>

#include "traceineq/ensembles.hpp"

namespace traceineq::inequalities {

// Margins are signed: left side minus right side of the inequality as
// asserted, so a nonnegative margin certifies the instance. Statements of
// the form "expression <= 0" report margin = -expression.
enum class MarginKind { kTrace, kOperatorMinEig, kScalar };
const char* margin_kind_token(MarginKind kind);

// Sums A + B must clear this bound wherever an inverse power is taken.
inline constexpr double kSumGateTol = 1e-10;
// States feeding log-based maps must clear this bound in strict mode.
inline constexpr double kStateGateTol = 1e-10;
// Allowed overshoot of sum C_i^H C_i over the identity.
inline constexpr double kContractionGateTol = 1e-8;

struct TraceMargin {
  double margin = 0.0;
  double imag_residual = 0.0;
  // Magnitude of the two competing traces; callers widen tolerances by it.
  double scale = 0.0;
};

// tr[(A+B)^s K] - tr[(A+B)^(s-1) L^2] with K = A log^2 A + B log^2 B and
// L = A log A + B log B; s in [0, 1]. The second term is computed as
// ||(A+B)^((s-1)/2) L||_F^2, which is exactly real. The invertibility gate
// applies for s < 1 (kSingularSum); at s = 1 the inverse power disappears.
TraceMargin trace_margin_general_s(const ensembles::PositiveContraction& a,
                                   const ensembles::PositiveContraction& b,
                                   double s);

// Min eigenvalue of K - (A+B)^(-1/2) L L (A+B)^(-1/2)-conjugate, i.e. of
// K - X^H X with X = (A+B)^(-1/2) L. Nonnegative iff the operator form of
// the s = 0 statement holds.
double operator_margin_s0(const ensembles::PositiveContraction& a,
                          const ensembles::PositiveContraction& b);

// Two open sandwich orderings, asserted by no theorem:
//   kSumOutside:     (A+B)^(1/2) K (A+B)^(1/2) - L^2
//   kLogTermOutside: K^(1/2) (A+B) K^(1/2) - L^2
enum class Question { kSumOutside, kLogTermOutside };
double operator_margin_question(const ensembles::PositiveContraction& a,
                                const ensembles::PositiveContraction& b,
                                Question which);

// Diagonal data of the trace margin in the eigenbasis of A + B:
//   t: eigenvalues of A + B (positive after the gate),
//   a[n] = <phi_n| K |phi_n>,  b[n] = <phi_n| L^2 |phi_n>.
struct SchattenTriple {
  matcore::RealVector t;
  matcore::RealVector a;
  matcore::RealVector b;
};
SchattenTriple schatten_reduce(const ensembles::PositiveContraction& a,
                               const ensembles::PositiveContraction& b);
// sum t^s a - sum t^(s-1) b; equals the trace margin for every s.
double schatten_margin(const SchattenTriple& triple, double s);

struct Lemma2Margin {
  double margin = 0.0;   // sum t^s a - sum t^(s-1) b
  double cond_i = 0.0;   // sum t a - sum b      (the s = 1 margin)
  double cond_ii = 0.0;  // sum a - sum b / t    (the s = 0 margin)
};
// Scalar weighted-power comparison. All entries must be positive
// (kNonpositiveInput); lengths equal and >= 2 (kDimMismatch); s in [0, 1].
// The margin is only a counter-example certificate when both conditions
// are nonnegative.
Lemma2Margin lemma2_margin(std::span<const double> t,
                           std::span<const double> a,
                           std::span<const double> b, double s);

struct PairwiseExpansion {
  // Symmetric, zero diagonal; entry (i, j) is the two-state margin of the
  // pair (S_i, S_j) at s = 1 built from R = S^(1/2) blocks.
  Eigen::MatrixXd pair_terms;
  double total = 0.0;  // sum_{i<j} w_i w_j pair_terms(i, j)
  double min_pair_term = 0.0;
  double imag_residual = 0.0;
};
// The s = 1 ensemble margin expands into pairwise terms; `total` matches
// sufficient_condition_margin(ens, 1) and each term is itself a certified
// two-state margin.
PairwiseExpansion pairwise_expansion_s1(const ensembles::Ensemble& ens);

// Min eigenvalue of sum C_i^H f(K_i) C_i - f(sum C_i^H K_i C_i).
// Requires sum C_i^H C_i <= I within kContractionGateTol
// (kContractionViolation) and matching dimensions (kDimMismatch). Spectrum
// violations of f's domain surface as kDomainViolation.
double jensen_operator_gap(const matcore::SpectralFunction& f,
                           std::span<const matcore::HermitianMatrix> k,
                           std::span<const matcore::SquareMatrix> c);

struct HolevoJensen {
  double gap = 0.0;
  double completeness_residual = 0.0;  // ||sum C_i^H C_i - I||_F
};
// Instantiates the operator Jensen gap with K_i = -log S_i and
// C_i = sqrt(w_i) S_i^(1/2) W^(-1/2), W = sum w_i S_i. States and W must
// clear kStateGateTol (kSingularState).
HolevoJensen holevo_jensen_instance(const ensembles::Ensemble& ens);

enum class GateMode { kStrict, kFloor };

// A (log A - log B) as a general (non-Hermitian) matrix. Strict mode gates
// both spectra at kStateGateTol (kSingularState); floor mode clips instead.
matcore::SquareMatrix relative_entropy_product(
    const matcore::HermitianMatrix& a, const matcore::HermitianMatrix& b,
    GateMode mode = GateMode::kStrict);

struct EntropyProductMargins {
  // m1 = Re tr[D(A,B) D(B,A)], m2 = Re tr[(A+B)^(-1) D(A,B) D(B,A)^H];
  // both are <= 0 for positive definite pairs per the asserted statement.
  double m1 = 0.0;
  double m2 = 0.0;
  double imag_residual_1 = 0.0;
  double imag_residual_2 = 0.0;
  double scale_1 = 0.0;
  double scale_2 = 0.0;
};
EntropyProductMargins entropy_product_margins(
    const matcore::HermitianMatrix& a, const matcore::HermitianMatrix& b);

struct SandwichedLog {
  matcore::HermitianMatrix value;
  // ||A^(-1/2) B A^(-1/2)||_F; grows with the conditioning of the pair.
  double conditioning = 0.0;
};
// A^(1/2) log(A^(-1/2) B A^(-1/2)) A^(1/2). Equals -relative_entropy_product
// when A and B commute. Gates both spectra at kStateGateTol.
SandwichedLog sandwiched_log_term(const matcore::HermitianMatrix& a,
                                  const matcore::HermitianMatrix& b);

// --- inequality registry -------------------------------------------------

struct ContractionPairInput {
  ensembles::PositiveContraction a;
  ensembles::PositiveContraction b;
};

struct TripleInput {
  std::vector<double> t;
  std::vector<double> a;
  std::vector<double> b;
};

using InequalityInput =
    std::variant<ContractionPairInput, ensembles::Ensemble, TripleInput>;

enum class InputFamily {
  kContractionPair,
  kCommutingPair,
  kEnsemble,
  kScalarTriple,
};

enum class Assertion { kNever, kAlways, kDimTwoOnly };

struct InequalityInfo {
  std::string_view id;
  MarginKind kind;
  bool needs_s;
  InputFamily family;
  Assertion assertion;
};

// Known tags: thm1, thm2-trace, thm2-operator, eq3, q1, q2, lemma2,
// remark2, lemma1-jensen, remark3, thm4-1, thm4-2, remark4.
std::span<const InequalityInfo> all_inequalities();
// nullptr when the tag is unknown.
const InequalityInfo* find_inequality(std::string_view id);
// Whether a negative margin at this dimension (or lemma2 length) falsifies
// an asserted statement.
bool is_asserted(const InequalityInfo& info, int dim);

struct Evaluation {
  double margin = 0.0;
  double imag_residual = 0.0;
  double scale = 0.0;
};

// Evaluates one inequality on one drawn input. s is required iff
// info.needs_s (kInvalidConfig otherwise); the input variant must match the
// family (kInvalidConfig). Numerical gates surface as NumericError.
Evaluation evaluate(const InequalityInfo& info, const InequalityInput& input,
                    std::optional<double> s);

// FNV-1a over a canonical byte serialization (dims + IEEE bit patterns).
std::uint64_t input_fingerprint(const InequalityInput& input);

// Witness text: {"kind":"pair"|"ensemble"|"triple", ...} with matrices in
// interchange form. parse_input round-trips bit-exactly and re-validates.
std::string serialize_input(const InequalityInput& input);
InequalityInput parse_input(const std::string& text);

int input_dim(const InequalityInput& input);

struct MarginReport {
  std::string inequality_id;
  std::optional<double> s;
  double margin = 0.0;
  MarginKind kind = MarginKind::kTrace;
  double imag_residual = 0.0;
  double scale = 0.0;
  std::uint64_t input_fingerprint = 0;
};

}  // namespace traceineq::inequalities
