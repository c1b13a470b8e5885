#pragma once

#include <span>
#include <string>

namespace framemult {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Coefficient of determination; 1 for a perfect fit (including constant data).
  double r2 = 1.0;
};

/// Ordinary least squares y ~ slope * x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Power-law fit y ~ c * x^alpha on the strictly positive samples
/// (least squares on (ln x, ln y)). slope is alpha.
LinearFit power_fit(std::span<const double> x, std::span<const double> y);

/// Logarithmic fit y ~ c * ln x + d.
LinearFit log_fit(std::span<const double> x, std::span<const double> y);

enum class GrowthModel { Bounded, Logarithmic, Power, Inconclusive };

std::string to_string(GrowthModel m);

/// Classification of a nonnegative sequence sampled at increasing x.
struct GrowthFit {
  GrowthModel model = GrowthModel::Inconclusive;
  LinearFit power;
  LinearFit logarithmic;
  /// (y_last - y(x_last / 4)) / y_last; small for saturated curves.
  double last_octave_increase = 0.0;
  /// R^2 of the selected model (1 for Bounded).
  double r2 = 0.0;
};

struct GrowthRules {
  double bounded_increase = 0.05;
  double min_r2 = 0.95;
};

/// Bounded when the curve has saturated over its last quarter of x-range;
/// otherwise the better of the logarithmic and power fits, Inconclusive
/// when neither reaches min_r2.
GrowthFit classify_growth(std::span<const double> x, std::span<const double> y, const GrowthRules& rules = {});

enum class TailTrend { Decays, Persists, Undecided };

std::string to_string(TailTrend t);

/// Trend of a per-window tail quantity measured at the ladder lengths.
struct TailEvidence {
  TailTrend trend = TailTrend::Undecided;
  double exponent = 0.0;
  double last = 0.0;
};

struct TailRules {
  /// Below this the tail counts as vanished outright.
  double absolute = 1e-6;
  /// Fitted exponent at or below which the tail decays.
  double decay_exponent = -0.1;
  /// Fitted exponent at or above which the tail persists.
  double persist_exponent = -0.05;
};

/// Decays: last value <= absolute, or power-law exponent <= decay_exponent
/// with a final decrease. Persists: exponent >= persist_exponent.
TailEvidence tail_trend(std::span<const double> lengths, std::span<const double> tails, const TailRules& rules);

}  // namespace framemult
