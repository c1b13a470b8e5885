#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framemult/classification.hpp"
#include "framemult/core.hpp"
#include "framemult/rational.hpp"
#include "framemult/sequence.hpp"
#include "framemult/trend.hpp"
#include "framemult/weight_expr.hpp"

namespace framemult {

/// The operator f -> sum_n m_n <f, psi_n> phi_n, studied along a ladder.
struct MultiplierSpec {
  WeightExpr symbol;
  SequenceSpec phi = SequenceSpec::onb();
  SequenceSpec psi = SequenceSpec::onb();
  TruncationLadder ladder;

  /// Common ambient dimension of both sequences at truncation N.
  Index dim(std::int64_t N) const;

  /// (m, Psi, Phi)
  MultiplierSpec swapped() const;
  /// (conj m, Psi, Phi): realizes the adjoint.
  MultiplierSpec adjoint() const;
  /// (|m|, Psi, Phi)
  MultiplierSpec modulus_swapped() const;

  /// symbol, phi and psi; the ladder is stored by the enclosing scenario.
  nlohmann::json to_json() const;
  static MultiplierSpec from_json(const nlohmann::json& j, const TruncationLadder& ladder, const std::string& path = "");

  friend bool operator==(const MultiplierSpec&, const MultiplierSpec&) = default;
};

/// One truncation M_N = sum_{n<=N} m_n phi_n psi_n^*.
class RealizedMultiplier {
 public:
  RealizedMultiplier(const MultiplierSpec& spec, std::int64_t N);

  std::int64_t count() const noexcept { return count_; }
  Index dim() const noexcept { return phi_.dim(); }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  const RealizedSequence& phi() const noexcept { return phi_; }
  const RealizedSequence& psi() const noexcept { return psi_; }
  Complex symbol(std::int64_t n) const { return symbol_[static_cast<std::size_t>(n - 1)]; }

  /// Matrix-free evaluation of the finite sum.
  Vector apply(const Vector& f) const;
  /// The summand m_n <f, psi_n> phi_n, as sparse entries.
  SparseColumn term(const Vector& f, std::int64_t n) const;

 private:
  std::int64_t count_;
  RealizedSequence phi_;
  RealizedSequence psi_;
  std::vector<Complex> symbol_;
  SparseMatrix matrix_;
};

RealizedMultiplier realize(const MultiplierSpec& spec, std::int64_t N);

struct AdjointCheck {
  std::vector<std::int64_t> lengths;
  /// ||realize(conj m, Psi, Phi) - realize(m, Phi, Psi)^*||_F
  std::vector<double> residual;
  /// ||realize(m, Phi, Psi)||_F
  std::vector<double> scale;
  /// max over steps of residual / scale (0 for the zero operator).
  double worst_relative = 0.0;
};

AdjointCheck adjoint_swap_check(const MultiplierSpec& spec);
double adjoint_swap_residual(const MultiplierSpec& spec, std::int64_t N);

/// m_n = nu_n c_n conj(d_n): the multiplier (nu, c Phi, d Psi) is the same
/// operator.
struct Reweighting {
  WeightExpr c;
  WeightExpr d;
  WeightExpr nu;

  nlohmann::json to_json() const;
};

/// Throws ReweightError naming the first index n <= up_to at which the
/// certificate fails (relative tolerance 1e-12), or where a weight vanishes
/// on a nonzero element.
void check_certificate(const MultiplierSpec& spec, const Reweighting& rw, std::int64_t up_to);

/// (nu, c Phi, d Psi), after checking the certificate up to the ladder top.
MultiplierSpec reweight(const MultiplierSpec& spec, const Reweighting& rw);

/// ||realize(a, N) - realize(b, N)||_F / max(||realize(a, N)||_F, tiny).
double realize_difference(const MultiplierSpec& a, const MultiplierSpec& b, std::int64_t N);

struct CanonicalResult {
  Reweighting reweighting;
  MultiplierSpec reweighted;
  /// Frame bounds of (c_n phi_n) and (d_n psi_n).
  FrameBounds phi_bounds;
  FrameBounds psi_bounds;
  /// Relative realize-invariance residual per ladder step.
  std::vector<double> invariance_residual;
  /// Both reweighted sequences Bessel (Yes), one of them trending
  /// unbounded (TrendNo), otherwise Inconclusive.
  Verdict bessel_pair = Verdict::Inconclusive;
  /// Both reweighted sequences frames.
  Verdict frame_pair = Verdict::Inconclusive;
  /// Classification of |m_n| ||phi_n|| ||psi_n||.
  ScalarClassification product_norms;
};

/// c_n = 1/||phi_n||, d_n = conj(m_n) ||phi_n||, nu = 1. Throws
/// CanonicalizationError when some phi_n (n <= ladder top) vanishes.
Reweighting canonical_reweighting(const MultiplierSpec& spec);
CanonicalResult canonicalize_p2(const MultiplierSpec& spec);

/// c_n = sqrt(m_n) (principal branch), d_n = conj(c_n), nu = 1. Requires
/// phi == psi (PreconditionError otherwise).
Reweighting sqrt_reweighting(const MultiplierSpec& spec);
CanonicalResult sqrt_split(const MultiplierSpec& spec);

enum class InvertibilityVerdict { InvertibleAtScale, NotInvertible, Inconclusive };

std::string to_string(InvertibilityVerdict v);

/// Consequences of invertibility when Phi is minimal: the biorthogonal
/// sequence equals (M^{-1})^*(conj(m_n) psi_n), and
/// |m_n| ||phi_n|| ||psi_n|| >= 1 / ||M^{-1}|| for every n.
struct MinimalCertificate {
  /// max_n ||(M^{-1})^*(conj(m_n) psi_n) - phi_n^b||
  double dual_residual = 0.0;
  double min_product = 0.0;
  double inverse_norm = 0.0;
  bool bound_holds = false;
};

struct InvertibilityReport {
  std::vector<std::int64_t> lengths;
  std::vector<double> condition;
  std::vector<double> min_singular;
  std::vector<double> max_singular;
  /// ||M_N - I|| (operator norm) per step.
  std::vector<double> identity_residual;
  LinearFit condition_fit;
  InvertibilityVerdict verdict = InvertibilityVerdict::Inconclusive;
  /// Inverse at the largest step (when invertible there).
  std::optional<SparseMatrix> inverse;
  /// ||realize(conj m, Psi, Phi)^{-1} - (realize(m, Phi, Psi)^{-1})^*||_F
  /// relative to ||M^{-1}||_F, at the largest step.
  std::optional<double> adjoint_inverse_residual;
  bool adjoint_inverse_ok = false;
  std::optional<MinimalCertificate> minimal;
  /// Set when identity was claimed but some step is singular.
  bool contradiction = false;
  std::string note;
};

InvertibilityReport invertibility(const MultiplierSpec& spec, bool identity_claimed = false);

/// Bound product for Phi = Psi = (e_n / n), m = (n): the supremum over
/// reweightings (c_n) of min_j(|c_j|^2 / j^2) * min_j(1 / |c_j|^2), j <= N.
struct ImpossibilityCertificate {
  std::int64_t N = 1;
  Rational optimum{1};
  /// Maximizer |c_j|^2 = j.
  std::vector<Rational> witness;
  /// The bound product evaluated at the witness.
  Rational witness_product{1};
};

ImpossibilityCertificate e2_certificate(std::int64_t N);

/// Bound product of the family above for given |c_j|^2 values.
double e2_bound_product(const std::vector<double>& c_squared);

struct DualCheck {
  std::vector<std::int64_t> lengths;
  /// ||M_N - I|| for (m, Phi, Psi) and (m, Psi, Phi).
  std::vector<double> residual;
  std::vector<double> swapped_residual;
  bool vanishes = false;
  bool swapped_vanishes = false;
};

DualCheck dual_check(const MultiplierSpec& spec);

}  // namespace framemult
