#include "framemult/trend.hpp"

#include <cmath>
#include <vector>

#include "framemult/error.hpp"

namespace framemult {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("fit needs equally many x and y samples");
  LinearFit fit;
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) {
    fit.intercept = y.empty() ? 0.0 : y[0];
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  // Constant data is fitted perfectly by a zero slope.
  fit.r2 = syy > 1e-300 * n ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

LinearFit power_fit(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] > 0.0 && x[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  return least_squares(lx, ly);
}

LinearFit log_fit(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, yy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      yy.push_back(y[i]);
    }
  }
  return least_squares(lx, yy);
}

std::string to_string(GrowthModel m) {
  switch (m) {
    case GrowthModel::Bounded:
      return "bounded";
    case GrowthModel::Logarithmic:
      return "logarithmic";
    case GrowthModel::Power:
      return "power";
    case GrowthModel::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

GrowthFit classify_growth(std::span<const double> x, std::span<const double> y, const GrowthRules& rules) {
  GrowthFit out;
  if (x.empty()) return out;
  out.power = power_fit(x, y);
  out.logarithmic = log_fit(x, y);
  double last = y.back();
  if (!(last > 0.0)) {
    out.model = GrowthModel::Bounded;
    out.r2 = 1.0;
    return out;
  }
  // sample closest to a quarter of the final abscissa
  double target = x.back() / 4.0;
  std::size_t ref = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - target) < std::abs(x[ref] - target)) ref = i;
  }
  out.last_octave_increase = (last - y[ref]) / last;
  if (out.last_octave_increase <= rules.bounded_increase) {
    out.model = GrowthModel::Bounded;
    out.r2 = 1.0;
    return out;
  }
  const bool log_wins = out.logarithmic.r2 >= out.power.r2;
  out.r2 = log_wins ? out.logarithmic.r2 : out.power.r2;
  if (out.r2 < rules.min_r2) {
    out.model = GrowthModel::Inconclusive;
  } else {
    out.model = log_wins ? GrowthModel::Logarithmic : GrowthModel::Power;
  }
  return out;
}

std::string to_string(TailTrend t) {
  switch (t) {
    case TailTrend::Decays:
      return "decays";
    case TailTrend::Persists:
      return "persists";
    case TailTrend::Undecided:
      return "undecided";
  }
  return "undecided";
}

TailEvidence tail_trend(std::span<const double> lengths, std::span<const double> tails, const TailRules& rules) {
  TailEvidence out;
  if (tails.empty()) return out;
  out.last = tails.back();
  LinearFit fit = power_fit(lengths, tails);
  out.exponent = fit.slope;
  if (out.last <= rules.absolute) {
    out.trend = TailTrend::Decays;
    return out;
  }
  const bool final_decrease = tails.size() < 2 || tails[tails.size() - 1] < tails[tails.size() - 2];
  if (out.exponent <= rules.decay_exponent && final_decrease) {
    out.trend = TailTrend::Decays;
  } else if (out.exponent >= rules.persist_exponent) {
    out.trend = TailTrend::Persists;
  } else {
    out.trend = TailTrend::Undecided;
  }
  return out;
}

}  // namespace framemult
