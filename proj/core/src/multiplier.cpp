#include "framemult/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "framemult/error.hpp"

namespace framemult {

namespace {

constexpr double kCertificateTolerance = 1e-12;
constexpr double kInvertibleExponent = 0.05;
constexpr double kSingularGrowth = 0.5;
constexpr double kMinSingular = 1e-8;
constexpr double kMinR2 = 0.95;
constexpr double kVanishing = 1e-10;

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

// Largest ladder length rounded down to a multiple of the structural period
// (at least one period).
std::int64_t complete_length(std::int64_t N, std::size_t period) {
  const auto P = static_cast<std::int64_t>(std::max<std::size_t>(period, 1));
  return std::max(P, N - N % P);
}

std::size_t joint_period(const MultiplierSpec& spec) {
  return std::lcm(std::lcm(spec.phi.period(), spec.psi.period()), spec.symbol.period());
}

std::vector<std::int64_t> complete_lengths(const MultiplierSpec& spec) {
  std::vector<std::int64_t> out;
  const auto P = joint_period(spec);
  for (auto N : spec.ladder.lengths()) {
    auto n = complete_length(N, P);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

Verdict pair_verdict(Verdict a, Verdict b) {
  if (a == Verdict::Yes && b == Verdict::Yes) return Verdict::Yes;
  if (is_negative(a) || is_negative(b)) return Verdict::TrendNo;
  return Verdict::Inconclusive;
}

}  // namespace

Index MultiplierSpec::dim(std::int64_t N) const { return std::max(phi.required_dim(N), psi.required_dim(N)); }

MultiplierSpec MultiplierSpec::swapped() const { return {symbol, psi, phi, ladder}; }

MultiplierSpec MultiplierSpec::adjoint() const { return {WeightExpr::conj(symbol), psi, phi, ladder}; }

MultiplierSpec MultiplierSpec::modulus_swapped() const { return {WeightExpr::abs(symbol), psi, phi, ladder}; }

nlohmann::json MultiplierSpec::to_json() const {
  return {{"symbol", symbol.to_json()}, {"phi", phi.to_json()}, {"psi", psi.to_json()}};
}

MultiplierSpec MultiplierSpec::from_json(const nlohmann::json& j, const TruncationLadder& ladder, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "multiplier must be an object");
  MultiplierSpec spec;
  spec.ladder = ladder;
  if (j.contains("symbol")) spec.symbol = WeightExpr::from_json(j["symbol"], path + ".symbol");
  if (j.contains("phi")) spec.phi = SequenceSpec::from_json(j["phi"], path + ".phi");
  spec.psi = j.contains("psi") ? SequenceSpec::from_json(j["psi"], path + ".psi") : spec.phi;
  return spec;
}

RealizedMultiplier::RealizedMultiplier(const MultiplierSpec& spec, std::int64_t N)
    : count_(N), phi_(build_sequence(spec.phi, N, spec.dim(N))), psi_(build_sequence(spec.psi, N, spec.dim(N))) {
  symbol_.reserve(static_cast<std::size_t>(N));
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::int64_t n = 1; n <= N; ++n) {
    const Complex m = spec.symbol.eval(n);
    symbol_.push_back(m);
    if (m == Complex(0.0, 0.0)) continue;
    for (const auto& a : phi_.column(n)) {
      for (const auto& b : psi_.column(n)) triplets.emplace_back(a.row, b.row, m * a.value * std::conj(b.value));
    }
  }
  const Index D = phi_.dim();
  matrix_.resize(D, D);
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
}

Vector RealizedMultiplier::apply(const Vector& f) const {
  if (f.size() != dim()) throw ShapeError("probe dimension does not match the multiplier");
  Vector out = Vector::Zero(dim());
  for (std::int64_t n = 1; n <= count_; ++n) {
    const Complex m = symbol(n);
    if (m == Complex(0.0, 0.0)) continue;
    const Complex coef = m * inner(f, psi_.column(n));
    if (coef == Complex(0.0, 0.0)) continue;
    for (const auto& e : phi_.column(n)) out(e.row) += coef * e.value;
  }
  return out;
}

SparseColumn RealizedMultiplier::term(const Vector& f, std::int64_t n) const {
  SparseColumn out;
  const Complex coef = symbol(n) * inner(f, psi_.column(n));
  if (coef == Complex(0.0, 0.0)) return out;
  for (const auto& e : phi_.column(n)) out.push_back({e.row, coef * e.value});
  return out;
}

RealizedMultiplier realize(const MultiplierSpec& spec, std::int64_t N) { return RealizedMultiplier(spec, N); }

double adjoint_swap_residual(const MultiplierSpec& spec, std::int64_t N) {
  const auto M = realize(spec, N);
  const auto Madj = realize(spec.adjoint(), N);
  SparseMatrix diff = Madj.matrix() - SparseMatrix(M.matrix().adjoint());
  return frobenius_norm(diff);
}

AdjointCheck adjoint_swap_check(const MultiplierSpec& spec) {
  AdjointCheck out;
  for (auto N : spec.ladder.lengths()) {
    const auto M = realize(spec, N);
    const auto Madj = realize(spec.adjoint(), N);
    SparseMatrix diff = Madj.matrix() - SparseMatrix(M.matrix().adjoint());
    const double r = frobenius_norm(diff);
    const double s = frobenius_norm(M.matrix());
    out.lengths.push_back(N);
    out.residual.push_back(r);
    out.scale.push_back(s);
    out.worst_relative = std::max(out.worst_relative, s > 0.0 ? r / s : r);
  }
  return out;
}

nlohmann::json Reweighting::to_json() const { return {{"c", c.to_json()}, {"d", d.to_json()}, {"nu", nu.to_json()}}; }

void check_certificate(const MultiplierSpec& spec, const Reweighting& rw, std::int64_t up_to) {
  for (std::int64_t n = 1; n <= up_to; ++n) {
    const Complex m = spec.symbol.eval(n);
    const Complex c = rw.c.eval(n);
    const Complex d = rw.d.eval(n);
    const Complex target = rw.nu.eval(n) * c * std::conj(d);
    const double scale = std::max(std::abs(m), std::abs(target));
    if (std::abs(m - target) > kCertificateTolerance * scale) {
      throw ReweightError("reweighting certificate fails at n = " + std::to_string(n) + ": m_n = " + format_complex(m) +
                          " but nu_n c_n conj(d_n) = " + format_complex(target));
    }
    if (c == Complex(0.0, 0.0) && !spec.phi.column(n).empty()) {
      throw ReweightError("reweighting certificate fails at n = " + std::to_string(n) + ": c_n = 0 on a nonzero phi_n");
    }
    if (d == Complex(0.0, 0.0) && m != Complex(0.0, 0.0) && !spec.psi.column(n).empty()) {
      throw ReweightError("reweighting certificate fails at n = " + std::to_string(n) + ": d_n = 0 on a nonzero psi_n");
    }
  }
}

MultiplierSpec reweight(const MultiplierSpec& spec, const Reweighting& rw) {
  check_certificate(spec, rw, spec.ladder.max());
  return {rw.nu, SequenceSpec::scaled(spec.phi, rw.c), SequenceSpec::scaled(spec.psi, rw.d), spec.ladder};
}

double realize_difference(const MultiplierSpec& a, const MultiplierSpec& b, std::int64_t N) {
  const auto Ma = realize(a, N);
  const auto Mb = realize(b, N);
  if (Ma.dim() != Mb.dim()) throw ShapeError("multipliers live in different dimensions");
  SparseMatrix diff = Ma.matrix() - Mb.matrix();
  const double scale = frobenius_norm(Ma.matrix());
  const double r = frobenius_norm(diff);
  return scale > 0.0 ? r / scale : r;
}

Reweighting canonical_reweighting(const MultiplierSpec& spec) {
  const WeightExpr norm = spec.phi.norm_weights();
  const std::int64_t top = spec.ladder.max();
  for (std::int64_t n = 1; n <= top; ++n) {
    if (norm.eval(n) == Complex(0.0, 0.0)) {
      throw CanonicalizationError("phi_" + std::to_string(n) + " is zero; no normalization exists");
    }
  }
  Reweighting rw;
  if (auto inv = WeightExpr::reciprocal(norm)) {
    rw.c = *inv;
  } else {
    std::vector<Complex> values;
    values.reserve(static_cast<std::size_t>(top));
    for (std::int64_t n = 1; n <= top; ++n) values.push_back(1.0 / norm.eval(n));
    rw.c = WeightExpr::explicit_list(std::move(values), 0.0);
  }
  rw.d = WeightExpr::product(WeightExpr::conj(spec.symbol), norm);
  rw.nu = WeightExpr();
  return rw;
}

namespace {

CanonicalResult assess(const MultiplierSpec& spec, Reweighting rw) {
  CanonicalResult out;
  out.reweighted = reweight(spec, rw);
  out.reweighting = std::move(rw);
  out.phi_bounds = estimate_frame_bounds(out.reweighted.phi, spec.ladder);
  out.psi_bounds = estimate_frame_bounds(out.reweighted.psi, spec.ladder);
  for (auto N : spec.ladder.lengths()) out.invariance_residual.push_back(realize_difference(spec, out.reweighted, N));
  out.bessel_pair = pair_verdict(out.phi_bounds.bessel, out.psi_bounds.bessel);
  out.frame_pair = pair_verdict(out.phi_bounds.frame, out.psi_bounds.frame);

  const WeightExpr phi_norm = spec.phi.norm_weights();
  const WeightExpr psi_norm = spec.psi.norm_weights();
  std::vector<double> mags(static_cast<std::size_t>(spec.ladder.max()));
  for (std::int64_t n = 1; n <= spec.ladder.max(); ++n) {
    mags[static_cast<std::size_t>(n - 1)] =
        std::abs(spec.symbol.eval(n)) * std::abs(phi_norm.eval(n)) * std::abs(psi_norm.eval(n));
  }
  out.product_norms = classify_magnitudes(mags, spec.ladder);
  return out;
}

}  // namespace

CanonicalResult canonicalize_p2(const MultiplierSpec& spec) { return assess(spec, canonical_reweighting(spec)); }

Reweighting sqrt_reweighting(const MultiplierSpec& spec) {
  if (!(spec.phi == spec.psi)) throw PreconditionError("square-root splitting needs phi = psi");
  Reweighting rw;
  rw.c = WeightExpr::sqrt(spec.symbol);
  rw.d = WeightExpr::conj(rw.c);
  rw.nu = WeightExpr();
  return rw;
}

CanonicalResult sqrt_split(const MultiplierSpec& spec) { return assess(spec, sqrt_reweighting(spec)); }

std::string to_string(InvertibilityVerdict v) {
  switch (v) {
    case InvertibilityVerdict::InvertibleAtScale:
      return "InvertibleAtScale";
    case InvertibilityVerdict::NotInvertible:
      return "NotInvertible";
    case InvertibilityVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

InvertibilityReport invertibility(const MultiplierSpec& spec, bool identity_claimed) {
  InvertibilityReport out;
  out.lengths = complete_lengths(spec);
  bool singular = false;
  std::optional<RealizedMultiplier> last;
  for (auto N : out.lengths) {
    RealizedMultiplier M = realize(spec, N);
    auto s = singular_values(M.matrix());
    const double smax = s.empty() ? 0.0 : s.front();
    const double smin = s.empty() ? 0.0 : s.back();
    out.max_singular.push_back(smax);
    out.min_singular.push_back(smin);
    out.condition.push_back(smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity());
    SparseMatrix diff = M.matrix() - sparse_identity(M.dim());
    out.identity_residual.push_back(operator_norm(diff));
    if (smin < kMinSingular) singular = true;
    last.emplace(std::move(M));
  }
  std::vector<double> x(out.lengths.begin(), out.lengths.end());
  if (singular) {
    out.verdict = InvertibilityVerdict::NotInvertible;
    out.note = "smallest singular value below 1e-8";
  } else {
    out.condition_fit = power_fit(x, out.condition);
    if (out.condition_fit.slope < kInvertibleExponent) {
      out.verdict = InvertibilityVerdict::InvertibleAtScale;
    } else if (out.condition_fit.slope > kSingularGrowth && out.condition_fit.r2 >= kMinR2) {
      out.verdict = InvertibilityVerdict::NotInvertible;
      out.note = "condition number grows with the truncation";
    }
  }
  if (identity_claimed && singular) {
    out.contradiction = true;
    out.note = "identity claimed but a truncation is singular";
  }
  if (out.verdict != InvertibilityVerdict::InvertibleAtScale) return out;

  const std::int64_t N = out.lengths.back();
  out.inverse = block_inverse(last->matrix());
  if (!out.inverse) {
    out.note = "inverse failed at the largest truncation";
    return out;
  }
  const auto Madj = realize(spec.adjoint(), N);
  if (auto inv_adj = block_inverse(Madj.matrix())) {
    SparseMatrix diff = *inv_adj - SparseMatrix(out.inverse->adjoint());
    const double scale = std::max(frobenius_norm(*out.inverse), 1e-300);
    out.adjoint_inverse_residual = frobenius_norm(diff) / scale;
    out.adjoint_inverse_ok = *out.adjoint_inverse_residual <= 1e-8;
  }

  // Minimal case: Phi_N is a basis of C^D.
  const auto& phi = last->phi();
  if (phi.count() == phi.dim()) {
    BiorthogonalResult bio = biorthogonal(phi);
    if (bio.minimal_verdict == Verdict::Yes && bio.columns) {
      MinimalCertificate cert;
      cert.inverse_norm = operator_norm(*out.inverse);
      SparseMatrix inv_adj = out.inverse->adjoint();
      cert.min_product = std::numeric_limits<double>::infinity();
      DenseMatrix dual = DenseMatrix(*bio.columns);
      for (std::int64_t n = 1; n <= N; ++n) {
        Vector v = Vector::Zero(phi.dim());
        const Complex mbar = std::conj(last->symbol(n));
        for (const auto& e : last->psi().column(n)) v(e.row) = mbar * e.value;
        Vector candidate = inv_adj * v;
        cert.dual_residual = std::max(cert.dual_residual, (candidate - dual.col(n - 1)).norm());
        const double prod =
            std::abs(last->symbol(n)) * std::sqrt(squared_norm(phi.column(n))) * std::sqrt(squared_norm(last->psi().column(n)));
        cert.min_product = std::min(cert.min_product, prod);
      }
      cert.bound_holds = cert.min_product * cert.inverse_norm >= 1.0 - 1e-9;
      out.minimal = cert;
    }
  }
  return out;
}

ImpossibilityCertificate e2_certificate(std::int64_t N) {
  if (N < 1) throw PreconditionError("e2 certificate needs N >= 1");
  ImpossibilityCertificate out;
  out.N = N;
  out.optimum = Rational(1, N).pow(2);
  Rational first{0};
  Rational second{0};
  for (std::int64_t j = 1; j <= N; ++j) {
    Rational cj(j);
    out.witness.push_back(cj);
    Rational a = cj / Rational(j).pow(2);
    Rational b = cj.reciprocal();
    if (j == 1 || a < first) first = a;
    if (j == 1 || b < second) second = b;
  }
  out.witness_product = first * second;
  return out;
}

double e2_bound_product(const std::vector<double>& c_squared) {
  double first = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c_squared.size(); ++i) {
    const double j = static_cast<double>(i + 1);
    first = std::min(first, c_squared[i] / (j * j));
    second = std::min(second, 1.0 / c_squared[i]);
  }
  return first * second;
}

DualCheck dual_check(const MultiplierSpec& spec) {
  DualCheck out;
  out.lengths = complete_lengths(spec);
  const auto swapped = spec.swapped();
  for (auto N : out.lengths) {
    const auto M = realize(spec, N);
    const auto S = realize(swapped, N);
    out.residual.push_back(operator_norm(SparseMatrix(M.matrix() - sparse_identity(M.dim()))));
    out.swapped_residual.push_back(operator_norm(SparseMatrix(S.matrix() - sparse_identity(S.dim()))));
  }
  auto all_small = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double r) { return r <= kVanishing; });
  };
  out.vanishes = all_small(out.residual);
  out.swapped_vanishes = all_small(out.swapped_residual);
  return out;
}

}  // namespace framemult
