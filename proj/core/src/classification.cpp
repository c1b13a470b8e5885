#include "framemult/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include <Eigen/SVD>

#include "framemult/error.hpp"

namespace framemult {

namespace {

constexpr double kBesselExponent = 0.05;
constexpr double kGrowthExponent = 0.5;
constexpr double kMinR2 = 0.95;
constexpr double kMinLowerBound = 1e-8;
constexpr double kDecayTolerance = -0.05;
constexpr double kSpanThreshold = 1e-10;
constexpr double kMinimalCondition = 1e8;
constexpr double kCollapse = 1e6;

std::vector<double> as_doubles(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::TrendNo:
      return "trend_no";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(FrameVerdict v) {
  switch (v) {
    case FrameVerdict::NotBessel:
      return "not_bessel";
    case FrameVerdict::Inconclusive:
      return "inconclusive";
    case FrameVerdict::Bessel:
      return "bessel";
    case FrameVerdict::Frame:
      return "frame";
    case FrameVerdict::RieszBasis:
      return "riesz_basis";
  }
  return "inconclusive";
}

ScalarClassification classify_magnitudes(const std::vector<double>& magnitudes, const TruncationLadder& ladder) {
  if (static_cast<std::int64_t>(magnitudes.size()) < ladder.max()) {
    throw ShapeError("magnitude sequence shorter than the ladder");
  }
  ScalarClassification out;
  out.lengths = ladder.lengths();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double sq = 0.0;
  bool overflow = false;
  std::size_t step = 0;
  for (std::int64_t n = 1; n <= ladder.max(); ++n) {
    double v = magnitudes[static_cast<std::size_t>(n - 1)];
    if (!std::isfinite(v)) overflow = true;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sq += v * v;
    if (n == ladder[step]) {
      out.inf_per_step.push_back(lo);
      out.sup_per_step.push_back(hi);
      out.square_sums.push_back(sq);
      ++step;
    }
  }
  const auto x = as_doubles(out.lengths);
  out.inf_fit = power_fit(x, out.inf_per_step);
  out.sup_fit = power_fit(x, out.sup_per_step);
  out.inf_estimate = out.inf_per_step.back();
  out.sup_estimate = out.sup_per_step.back();

  // lower bound
  if (out.inf_per_step.front() == 0.0) {
    out.is_nbb = Verdict::No;
  } else if (out.inf_estimate == 0.0) {
    out.is_nbb = Verdict::TrendNo;
  } else if (out.inf_fit.slope >= kDecayTolerance) {
    out.is_nbb = Verdict::Yes;
  } else if (out.inf_fit.slope <= -kGrowthExponent &&
             (out.inf_fit.r2 >= kMinR2 || out.inf_estimate * kCollapse <= out.inf_per_step.front())) {
    out.is_nbb = Verdict::TrendNo;
  }

  // upper bound
  if (overflow) {
    out.is_linf = Verdict::No;
  } else if (out.sup_fit.slope <= kBesselExponent) {
    out.is_linf = Verdict::Yes;
  } else if (out.sup_fit.slope >= kGrowthExponent &&
             (out.sup_fit.r2 >= kMinR2 || out.sup_estimate >= kCollapse * out.sup_per_step.front())) {
    out.is_linf = Verdict::TrendNo;
  }

  if (out.is_nbb == Verdict::Yes && out.is_linf == Verdict::Yes) {
    out.is_semi_normalized = Verdict::Yes;
    out.a = out.inf_estimate;
    out.b = out.sup_estimate;
  } else if (out.is_nbb == Verdict::No || out.is_linf == Verdict::No) {
    out.is_semi_normalized = Verdict::No;
  } else if (is_negative(out.is_nbb) || is_negative(out.is_linf)) {
    out.is_semi_normalized = Verdict::TrendNo;
  }

  // square summability from the increments between ladder steps
  const double total = out.square_sums.back();
  if (overflow || !std::isfinite(total)) {
    out.is_l2 = Verdict::No;
  } else if (total == 0.0) {
    out.is_l2 = Verdict::Yes;
    out.l2_tail.trend = TailTrend::Decays;
  } else {
    std::vector<double> xs, inc;
    for (std::size_t t = 1; t < out.square_sums.size(); ++t) {
      xs.push_back(x[t]);
      inc.push_back(out.square_sums[t] - out.square_sums[t - 1]);
    }
    TailRules rules;
    rules.absolute = 1e-10 * total;
    out.l2_tail = tail_trend(xs, inc, rules);
    if (out.l2_tail.trend == TailTrend::Decays) {
      out.is_l2 = Verdict::Yes;
    } else if (out.l2_tail.trend == TailTrend::Persists) {
      out.is_l2 = Verdict::TrendNo;
    }
  }
  return out;
}

ScalarClassification classify_scalars(const WeightExpr& expr, const TruncationLadder& ladder) {
  std::vector<double> mags(static_cast<std::size_t>(ladder.max()));
  for (std::int64_t n = 1; n <= ladder.max(); ++n) {
    try {
      mags[static_cast<std::size_t>(n - 1)] = std::abs(expr.eval(n));
    } catch (const OverflowError&) {
      mags[static_cast<std::size_t>(n - 1)] = std::numeric_limits<double>::infinity();
    }
  }
  return classify_magnitudes(mags, ladder);
}

FrameBounds estimate_frame_bounds(const SequenceSpec& spec, const TruncationLadder& ladder) {
  std::vector<RealizedSequence> family;
  family.reserve(ladder.size());
  for (auto N : ladder.lengths()) family.push_back(build_sequence(spec, N));
  return estimate_frame_bounds(family);
}

FrameBounds estimate_frame_bounds(const std::vector<RealizedSequence>& family) {
  if (family.empty()) throw PreconditionError("frame bounds need at least one truncation");
  FrameBounds out;
  bool square_everywhere = true;
  bool gram_matches = true;
  for (const auto& seq : family) {
    const auto& T = seq.synthesis_matrix();
    auto rows = row_spectrum(T);
    auto cols = column_spectrum(T);
    const double B = rows.empty() ? 0.0 : rows.front();
    double A = 0.0;
    if (seq.spec().designed_complete()) {
      A = rows.empty() ? 0.0 : rows.back();
    } else {
      for (double v : rows) {
        if (v > kSpanThreshold * B) A = v;
      }
    }
    out.lengths.push_back(seq.count());
    out.dims.push_back(seq.dim());
    out.bessel_B.push_back(B);
    out.lower_A.push_back(A);
    out.gram_max.push_back(cols.empty() ? 0.0 : cols.front());
    out.gram_min.push_back(cols.empty() ? 0.0 : cols.back());
    if (seq.count() != seq.dim()) square_everywhere = false;
    const double scale = std::max(1.0, B);
    if (std::abs(out.gram_min.back() - A) > 1e-10 * scale || std::abs(out.gram_max.back() - B) > 1e-10 * scale) {
      gram_matches = false;
    }
  }
  const auto x = as_doubles(out.lengths);
  out.upper_fit = power_fit(x, out.bessel_B);
  out.lower_fit = power_fit(x, out.lower_A);
  out.B_estimate = *std::max_element(out.bessel_B.begin(), out.bessel_B.end());
  out.A_estimate = *std::min_element(out.lower_A.begin(), out.lower_A.end());

  if (out.upper_fit.slope < kBesselExponent) {
    out.bessel = Verdict::Yes;
  } else if (out.upper_fit.slope > kGrowthExponent && out.upper_fit.r2 >= kMinR2) {
    out.bessel = Verdict::TrendNo;
  }

  if (is_negative(out.bessel)) {
    out.frame = Verdict::No;
  } else if (out.A_estimate < kMinLowerBound || out.lower_fit.slope <= -kGrowthExponent) {
    out.frame = out.A_estimate == 0.0 ? Verdict::No : Verdict::TrendNo;
  } else if (out.bessel == Verdict::Yes && out.lower_fit.slope >= kDecayTolerance) {
    out.frame = Verdict::Yes;
  }

  if (out.frame == Verdict::Yes) {
    out.riesz = (square_everywhere && gram_matches) ? Verdict::Yes : Verdict::No;
  } else if (is_negative(out.frame)) {
    out.riesz = out.frame;
  }

  if (out.riesz == Verdict::Yes) {
    out.verdict = FrameVerdict::RieszBasis;
  } else if (out.frame == Verdict::Yes) {
    out.verdict = FrameVerdict::Frame;
  } else if (out.bessel == Verdict::Yes) {
    out.verdict = FrameVerdict::Bessel;
  } else if (is_negative(out.bessel)) {
    out.verdict = FrameVerdict::NotBessel;
  }
  return out;
}

namespace {

using ColumnKey = std::vector<std::tuple<Index, double, double>>;

ColumnKey key_of(const SparseColumn& c) {
  ColumnKey k;
  k.reserve(c.size());
  for (const auto& e : c) k.emplace_back(e.row, e.value.real(), e.value.imag());
  return k;
}

BiorthogonalResult not_minimal(std::string reason, bool structural) {
  BiorthogonalResult r;
  r.minimal_verdict = Verdict::No;
  r.structural = structural;
  r.reason = std::move(reason);
  r.gram_condition.push_back(std::numeric_limits<double>::infinity());
  return r;
}

}  // namespace

BiorthogonalResult biorthogonal(const RealizedSequence& seq) {
  const std::int64_t N = seq.count();
  if (N > seq.dim()) return not_minimal("more vectors than dimensions", true);
  std::map<ColumnKey, std::int64_t> seen;
  for (std::int64_t n = 1; n <= N; ++n) {
    const auto& c = seq.column(n);
    if (c.empty()) return not_minimal("element " + std::to_string(n) + " is zero", true);
    auto [it, inserted] = seen.emplace(key_of(c), n);
    if (!inserted) {
      return not_minimal("elements " + std::to_string(it->second) + " and " + std::to_string(n) + " coincide", true);
    }
  }
  auto components = decompose(seq.synthesis_matrix());
  double smax = 0.0;
  double smin = std::numeric_limits<double>::infinity();
  std::vector<Eigen::VectorXd> svals;
  for (const auto& c : components) {
    if (c.cols.size() > c.rows.size()) return not_minimal("linearly dependent elements", true);
    Eigen::VectorXd s = c.block.cols() <= 64 ? Eigen::VectorXd(Eigen::JacobiSVD<DenseMatrix>(c.block).singularValues())
                                             : Eigen::VectorXd(Eigen::BDCSVD<DenseMatrix>(c.block).singularValues());
    smax = std::max(smax, s(0));
    smin = std::min(smin, s(s.size() - 1));
  }
  BiorthogonalResult out;
  const double condition = smin > 0.0 ? (smax / smin) * (smax / smin) : std::numeric_limits<double>::infinity();
  out.gram_condition.push_back(condition);
  if (!(condition < kMinimalCondition)) {
    out.minimal_verdict = Verdict::No;
    out.reason = "Gram matrix is numerically singular";
    return out;
  }
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (const auto& c : components) {
    const DenseMatrix& B = c.block;
    DenseMatrix gram = B.adjoint() * B;
    DenseMatrix dual = B * gram.ldlt().solve(DenseMatrix::Identity(gram.rows(), gram.cols()));
    DenseMatrix check = dual.adjoint() * B - DenseMatrix::Identity(B.cols(), B.cols());
    out.residual = std::max(out.residual, check.cwiseAbs().maxCoeff());
    for (Index j = 0; j < dual.cols(); ++j) {
      for (Index i = 0; i < dual.rows(); ++i) {
        if (dual(i, j) != Complex(0.0, 0.0)) {
          triplets.emplace_back(c.rows[static_cast<std::size_t>(i)], c.cols[static_cast<std::size_t>(j)], dual(i, j));
        }
      }
    }
  }
  SparseMatrix cols(seq.dim(), N);
  cols.setFromTriplets(triplets.begin(), triplets.end());
  out.columns = std::move(cols);
  out.minimal_verdict = Verdict::Yes;
  return out;
}

BiorthogonalResult biorthogonal(const SequenceSpec& spec, const TruncationLadder& ladder) {
  BiorthogonalResult out;
  std::vector<double> conditions;
  for (std::size_t t = 0; t < ladder.size(); ++t) {
    const std::int64_t N = ladder[t];
    auto len = spec.max_length();
    if (len && N > *len) break;
    BiorthogonalResult step = biorthogonal(build_sequence(spec, N));
    conditions.push_back(step.gram_condition.front());
    if (step.minimal_verdict != Verdict::Yes) {
      step.gram_condition = conditions;
      return step;
    }
    out = std::move(step);
  }
  if (conditions.empty()) throw PreconditionError("sequence shorter than every ladder length");
  out.gram_condition = conditions;
  return out;
}

}  // namespace framemult
