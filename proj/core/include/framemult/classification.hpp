#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framemult/core.hpp"
#include "framemult/sequence.hpp"
#include "framemult/trend.hpp"
#include "framemult/weight_expr.hpp"

namespace framemult {

/// Yes and No are exact (or structural) answers; TrendNo means the ladder
/// trend contradicts the property; Inconclusive means the ladder cannot tell.
enum class Verdict { Yes, No, TrendNo, Inconclusive };

std::string to_string(Verdict v);

/// True for No and TrendNo.
inline bool is_negative(Verdict v) { return v == Verdict::No || v == Verdict::TrendNo; }

struct ScalarClassification {
  std::vector<std::int64_t> lengths;
  /// min_{n<=N} |m_n| and max_{n<=N} |m_n| at every ladder step.
  std::vector<double> inf_per_step;
  std::vector<double> sup_per_step;
  /// sum_{n<=N} |m_n|^2 at every ladder step.
  std::vector<double> square_sums;
  LinearFit inf_fit;
  LinearFit sup_fit;

  Verdict is_nbb = Verdict::Inconclusive;
  double inf_estimate = 0.0;
  Verdict is_linf = Verdict::Inconclusive;
  double sup_estimate = 0.0;
  Verdict is_semi_normalized = Verdict::Inconclusive;
  double a = 0.0;
  double b = 0.0;
  Verdict is_l2 = Verdict::Inconclusive;
  TailEvidence l2_tail;
};

/// Trend classification of n -> |m_n| over the ladder.
ScalarClassification classify_scalars(const WeightExpr& expr, const TruncationLadder& ladder);

/// Same for an arbitrary nonnegative magnitude sequence (evaluated for
/// n = 1..ladder.max()).
ScalarClassification classify_magnitudes(const std::vector<double>& magnitudes, const TruncationLadder& ladder);

enum class FrameVerdict { NotBessel, Inconclusive, Bessel, Frame, RieszBasis };

std::string to_string(FrameVerdict v);

struct FrameBounds {
  std::vector<std::int64_t> lengths;
  std::vector<Index> dims;
  /// lambda_max of the frame operator S_N = T_N T_N^*.
  std::vector<double> bessel_B;
  /// lambda_min of S_N (on all of C^D for designed-complete sequences,
  /// on the span of the columns otherwise).
  std::vector<double> lower_A;
  /// Extreme eigenvalues of the Gram matrix T_N^* T_N.
  std::vector<double> gram_min;
  std::vector<double> gram_max;
  LinearFit upper_fit;
  LinearFit lower_fit;

  Verdict bessel = Verdict::Inconclusive;
  Verdict frame = Verdict::Inconclusive;
  Verdict riesz = Verdict::Inconclusive;
  FrameVerdict verdict = FrameVerdict::Inconclusive;

  /// Largest B over the ladder.
  double B_estimate = 0.0;
  /// Smallest A over the ladder.
  double A_estimate = 0.0;
};

FrameBounds estimate_frame_bounds(const SequenceSpec& spec, const TruncationLadder& ladder);

/// Frame bounds of an already realized ladder family (one element per step,
/// increasing lengths).
FrameBounds estimate_frame_bounds(const std::vector<RealizedSequence>& family);

struct BiorthogonalResult {
  /// Dual columns phi_n^b as a D x N matrix; empty unless minimal.
  std::optional<SparseMatrix> columns;
  /// Condition number of the Gram matrix per step (infinity when singular).
  std::vector<double> gram_condition;
  Verdict minimal_verdict = Verdict::Inconclusive;
  /// Set when minimality fails for an exact reason (duplicate columns,
  /// more vectors than dimensions).
  bool structural = false;
  std::string reason;
  /// max_{n,m} |<phi_n, phi_m^b> - delta_nm|.
  double residual = 0.0;
};

/// Biorthogonal sequence of one truncation: columns of T (T^* T)^{-1}.
BiorthogonalResult biorthogonal(const RealizedSequence& seq);

/// Minimality across the ladder: Yes iff every step is well conditioned
/// (Gram condition < 1e8); dual columns reported at the last step.
BiorthogonalResult biorthogonal(const SequenceSpec& spec, const TruncationLadder& ladder);

}  // namespace framemult
