#include "framemult/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "framemult/error.hpp"

namespace framemult {

std::string to_string(ConvergenceClass c) {
  switch (c) {
    case ConvergenceClass::UnconditionalAtScale:
      return "UnconditionalAtScale";
    case ConvergenceClass::ConditionalAtScale:
      return "ConditionalAtScale";
    case ConvergenceClass::DivergentAtScale:
      return "DivergentAtScale";
    case ConvergenceClass::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(SquareSumVerdict v) {
  switch (v) {
    case SquareSumVerdict::Converges:
      return "converges";
    case SquareSumVerdict::Diverges:
      return "diverges";
    case SquareSumVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Vector TermSequence::partial_sum(std::optional<std::int64_t> N) const {
  std::int64_t upto = std::min(N.value_or(count()), count());
  Vector s = Vector::Zero(dim);
  for (std::int64_t n = 0; n < upto; ++n) {
    for (const auto& e : terms[static_cast<std::size_t>(n)]) s(e.row) += e.value;
  }
  return s;
}

TermSequence term_sequence(const RealizedMultiplier& M, const Vector& f) {
  Vector g = Vector::Zero(M.dim());
  Index copy = std::min<Index>(f.size(), M.dim());
  g.head(copy) = f.head(copy);
  TermSequence out;
  out.dim = M.dim();
  out.terms.reserve(static_cast<std::size_t>(M.count()));
  for (std::int64_t n = 1; n <= M.count(); ++n) out.terms.push_back(M.term(g, n));
  return out;
}

TermSequence term_sequence(const MultiplierSpec& spec, const Vector& f, std::int64_t N) {
  return term_sequence(realize(spec, N), f);
}

namespace {

std::vector<double> as_doubles(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

std::vector<std::int64_t> geometric_grid(std::int64_t N) {
  std::vector<std::int64_t> grid;
  std::int64_t start = std::min<std::int64_t>(8, N);
  const int points = 24;
  double ratio = std::pow(static_cast<double>(N) / static_cast<double>(start), 1.0 / (points - 1));
  for (int i = 0; i < points; ++i) {
    auto n = static_cast<std::int64_t>(std::llround(static_cast<double>(start) * std::pow(ratio, i)));
    n = std::clamp<std::int64_t>(n, 1, N);
    if (grid.empty() || n > grid.back()) grid.push_back(n);
  }
  if (grid.back() != N) grid.push_back(N);
  return grid;
}

// Accumulates a sparse-updated vector while tracking its squared norm.
class Accumulator {
 public:
  explicit Accumulator(Index dim) : values_(static_cast<std::size_t>(dim), Complex(0.0)) {}

  void add(const SparseColumn& col, Complex weight) {
    for (const auto& e : col) {
      auto& v = values_[static_cast<std::size_t>(e.row)];
      if (v == Complex(0.0)) touched_.push_back(e.row);
      double before = std::norm(v);
      v += weight * e.value;
      squared_ += std::norm(v) - before;
    }
    if (squared_ < 0.0) squared_ = 0.0;
  }

  double norm() const { return std::sqrt(squared_); }

  void reset() {
    for (Index r : touched_) values_[static_cast<std::size_t>(r)] = 0.0;
    touched_.clear();
    squared_ = 0.0;
  }

 private:
  std::vector<Complex> values_;
  std::vector<Index> touched_;
  double squared_ = 0.0;
};

Complex weight_at(const std::vector<Complex>& lambda, std::int64_t n) {
  return lambda.empty() ? Complex(1.0) : lambda[static_cast<std::size_t>(n - 1)];
}

TailRules tail_rules(const ConvergenceRules& rules, double absolute) {
  return TailRules{absolute, rules.decay_exponent, rules.persist_exponent};
}

std::vector<std::int64_t> usable_lengths(const TruncationLadder& ladder, std::int64_t count) {
  std::vector<std::int64_t> out;
  for (auto N : ladder.lengths())
    if (N <= count) out.push_back(N);
  if (out.empty()) throw PreconditionError("term sequence is shorter than every ladder length");
  return out;
}

}  // namespace

namespace {

// Position n of the traced series is lambda_n t_{order[n-1]} (order empty: identity).
TraceEvidence trace(const TermSequence& terms, const std::vector<std::int64_t>& order,
                    const std::vector<Complex>& lambda, const TruncationLadder& ladder, double f_norm,
                    const ConvergenceRules& rules) {
  auto lengths = usable_lengths(ladder, terms.count());
  std::int64_t top = lengths.back();
  if (!lambda.empty() && static_cast<std::int64_t>(lambda.size()) < top)
    throw PreconditionError("pattern is shorter than the ladder");
  if (!order.empty() && static_cast<std::int64_t>(order.size()) < top)
    throw PreconditionError("permutation is shorter than the ladder");
  auto term = [&](std::int64_t n) -> const SparseColumn& {
    std::int64_t idx = order.empty() ? n : order[static_cast<std::size_t>(n - 1)];
    return terms.terms[static_cast<std::size_t>(idx - 1)];
  };

  TraceEvidence ev;
  Accumulator acc(terms.dim);
  for (auto N : lengths) {
    acc.reset();
    double worst = 0.0;
    for (std::int64_t n = N / 2 + 1; n <= N; ++n) {
      Complex w = weight_at(lambda, n);
      if (w == Complex(0.0)) continue;
      acc.add(term(n), w);
      worst = std::max(worst, acc.norm());
    }
    ev.oscillation.push_back(worst);
  }

  auto grid = geometric_grid(top);
  acc.reset();
  std::size_t g = 0;
  for (std::int64_t n = 1; n <= top && g < grid.size(); ++n) {
    Complex w = weight_at(lambda, n);
    if (w != Complex(0.0)) acc.add(term(n), w);
    if (n == grid[g]) {
      ev.grid.push_back(static_cast<double>(n));
      ev.running_norm.push_back(acc.norm());
      ++g;
    }
  }
  auto x = as_doubles(lengths);
  ev.tail = tail_trend(x, ev.oscillation, tail_rules(rules, rules.tail_tolerance * f_norm));
  ev.growth = classify_growth(ev.grid, ev.running_norm, rules.growth);
  return ev;
}

}  // namespace

TraceEvidence weighted_probe(const TermSequence& terms, const std::vector<Complex>& lambda,
                             const TruncationLadder& ladder, double f_norm, const ConvergenceRules& rules) {
  return trace(terms, {}, lambda, ladder, f_norm, rules);
}

TraceEvidence permutation_probe(const TermSequence& terms, const std::vector<std::int64_t>& order,
                                const TruncationLadder& ladder, double f_norm, const ConvergenceRules& rules) {
  return trace(terms, order, {}, ladder, f_norm, rules);
}

TraceEvidence subseries_probe(const TermSequence& terms, const std::vector<char>& mask, const TruncationLadder& ladder,
                              double f_norm, const ConvergenceRules& rules) {
  std::vector<Complex> lambda(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) lambda[i] = mask[i] ? 1.0 : 0.0;
  return weighted_probe(terms, lambda, ladder, f_norm, rules);
}

TraceEvidence sign_probe(const TermSequence& terms, const std::vector<std::vector<Complex>>& patterns,
                         const TruncationLadder& ladder, double f_norm, const ConvergenceRules& rules) {
  if (patterns.empty()) throw PreconditionError("sign_probe needs at least one pattern");
  TraceEvidence worst;
  bool first = true;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    auto ev = weighted_probe(terms, patterns[p], ladder, f_norm, rules);
    ev.pattern = "sign[" + std::to_string(p) + "]";
    if (first || ev.oscillation.back() > worst.oscillation.back()) worst = std::move(ev);
    first = false;
  }
  return worst;
}

SquareSumEvidence square_sum_check(const TermSequence& terms, const TruncationLadder& ladder,
                                   const ConvergenceRules& rules) {
  auto lengths = usable_lengths(ladder, terms.count());
  std::int64_t top = lengths.back();
  std::vector<double> running(static_cast<std::size_t>(top) + 1, 0.0);
  for (std::int64_t n = 1; n <= top; ++n)
    running[static_cast<std::size_t>(n)] =
        running[static_cast<std::size_t>(n - 1)] + squared_norm(terms.terms[static_cast<std::size_t>(n - 1)]);

  SquareSumEvidence ev;
  for (auto N : lengths) {
    ev.totals.push_back(running[static_cast<std::size_t>(N)]);
    ev.window_sums.push_back(running[static_cast<std::size_t>(N)] - running[static_cast<std::size_t>(N / 2)]);
  }
  for (auto n : geometric_grid(top)) {
    ev.grid.push_back(static_cast<double>(n));
    ev.running.push_back(running[static_cast<std::size_t>(n)]);
  }
  double total = ev.totals.back();
  ev.growth = classify_growth(ev.grid, ev.running, rules.growth);
  if (total == 0.0) {
    ev.verdict = SquareSumVerdict::Converges;
    return ev;
  }
  ev.tail = tail_trend(as_doubles(lengths), ev.window_sums, tail_rules(rules, rules.square_sum_tolerance * total));
  switch (ev.tail.trend) {
    case TailTrend::Decays:
      ev.verdict = SquareSumVerdict::Converges;
      break;
    case TailTrend::Persists:
      ev.verdict = SquareSumVerdict::Diverges;
      break;
    case TailTrend::Undecided:
      ev.verdict = SquareSumVerdict::Inconclusive;
      break;
  }
  return ev;
}

ProbeEnsemble make_ensemble(Index dim, std::int64_t N, std::size_t period, RngSeed seed,
                            const EnsembleOptions& options) {
  ProbeEnsemble ens;
  ens.period = std::max<std::size_t>(period, 2);
  ens.length = N;
  auto envelope = [dim](auto weight) {
    Vector f(dim);
    for (Index k = 1; k <= dim; ++k) f(k - 1) = weight(static_cast<double>(k));
    return f;
  };
  for (std::size_t i = 0; i < options.gaussian_probes; ++i) {
    auto engine = seed.engine(1000 + i);
    Vector f = gaussian_vector(dim, engine);
    for (Index k = 1; k <= dim; ++k) f(k - 1) /= static_cast<double>(k);
    ens.probes.push_back({"gaussian[" + std::to_string(i) + "]", f});
  }
  ens.probes.push_back({"e1", basis_vector(dim, 1)});
  ens.probes.push_back({"harmonic", envelope([](double k) { return 1.0 / k; })});
  ens.probes.push_back({"power_3/4", envelope([](double k) { return std::pow(k, -0.75); })});
  ens.probes.push_back({"power_3/2", envelope([](double k) { return std::pow(k, -1.5); })});

  for (std::size_t p = 0; p < options.sign_patterns; ++p) {
    auto engine = seed.engine(2000 + p);
    std::bernoulli_distribution coin(0.5);
    std::vector<Complex> signs(static_cast<std::size_t>(N));
    for (auto& s : signs) s = coin(engine) ? 1.0 : -1.0;
    ens.sign_patterns.push_back(std::move(signs));
  }
  for (std::size_t p = 0; p < options.permutations; ++p) {
    auto engine = seed.engine(4000 + p);
    std::vector<std::int64_t> order(static_cast<std::size_t>(N));
    std::iota(order.begin(), order.end(), std::int64_t{1});
    for (std::int64_t lo = 1; lo <= N; lo *= 2) {
      std::int64_t hi = std::min(2 * lo, N + 1);
      std::shuffle(order.begin() + (lo - 1), order.begin() + (hi - 1), engine);
    }
    ens.permutations.push_back(std::move(order));
  }
  for (std::size_t p = 0; p < options.random_subseries; ++p) {
    auto engine = seed.engine(3000 + p);
    std::bernoulli_distribution coin(0.5);
    std::vector<char> mask(static_cast<std::size_t>(N));
    for (auto& m : mask) m = coin(engine) ? 1 : 0;
    ens.subsets.push_back(std::move(mask));
  }
  return ens;
}

namespace {

std::size_t joint_period(const MultiplierSpec& spec) {
  std::size_t p = std::lcm(spec.symbol.period(), std::lcm(spec.phi.period(), spec.psi.period()));
  return std::min<std::size_t>(p, 64);
}

std::vector<Complex> phase_aligned(const TermSequence& terms) {
  std::vector<double> mass(static_cast<std::size_t>(terms.dim), 0.0);
  for (const auto& t : terms.terms)
    for (const auto& e : t) mass[static_cast<std::size_t>(e.row)] += std::abs(e.value);
  auto best = static_cast<Index>(std::max_element(mass.begin(), mass.end()) - mass.begin());
  std::vector<Complex> lambda(terms.terms.size(), 0.0);
  for (std::size_t n = 0; n < terms.terms.size(); ++n) {
    for (const auto& e : terms.terms[n]) {
      if (e.row == best && e.value != Complex(0.0)) lambda[n] = std::conj(e.value) / std::abs(e.value);
    }
  }
  return lambda;
}

bool fit_qualifies(const GrowthFit& g, const GrowthRules& rules) {
  return (g.model == GrowthModel::Logarithmic || g.model == GrowthModel::Power) && g.r2 >= rules.min_r2;
}

}  // namespace

ConvergenceResult classify(const MultiplierSpec& spec, RngSeed seed, const EnsembleOptions& options,
                           const ConvergenceRules& rules) {
  const auto& ladder = spec.ladder;
  std::int64_t N = ladder.max();
  auto M = realize(spec, N);
  std::size_t period = joint_period(spec);
  auto ens = make_ensemble(M.dim(), N, period, seed, options);

  ConvergenceResult res;
  res.lengths = ladder.lengths();
  res.worst_tails.assign(ladder.size(), 0.0);

  for (const auto& probe : ens.probes) {
    double f_norm = probe.f.norm();
    if (f_norm == 0.0) continue;
    auto terms = term_sequence(M, probe.f);
    ProbeEvidence pe;
    pe.probe = probe.name;
    pe.f_norm = f_norm;
    pe.ordered = weighted_probe(terms, {}, ladder, f_norm, rules);
    pe.ordered.pattern = "ordered";
    pe.square_sum = square_sum_check(terms, ladder, rules);

    bool have_worst = false;
    auto consider = [&](TraceEvidence ev, std::string name) {
      ev.pattern = std::move(name);
      if (pe.pattern_envelope.empty()) pe.pattern_envelope.assign(ev.oscillation.size(), 0.0);
      for (std::size_t t = 0; t < ev.oscillation.size(); ++t) {
        res.worst_tails[t] = std::max(res.worst_tails[t], ev.oscillation[t] / f_norm);
        pe.pattern_envelope[t] = std::max(pe.pattern_envelope[t], ev.oscillation[t]);
      }
      if (ev.tail.trend == TailTrend::Persists) pe.persisting_patterns.push_back(ev.pattern);
      if (!have_worst || ev.oscillation.back() > pe.worst_pattern.oscillation.back()) {
        pe.worst_pattern = std::move(ev);
        have_worst = true;
      }
    };

    for (std::size_t t = 0; t < pe.ordered.oscillation.size(); ++t)
      res.worst_tails[t] = std::max(res.worst_tails[t], pe.ordered.oscillation[t] / f_norm);

    for (std::size_t p = 0; p < ens.sign_patterns.size(); ++p)
      consider(weighted_probe(terms, ens.sign_patterns[p], ladder, f_norm, rules), "sign[" + std::to_string(p) + "]");

    std::vector<Complex> alternating(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
      auto step = period > 1 ? (n - 1) % static_cast<std::int64_t>(period) : n - 1;
      alternating[static_cast<std::size_t>(n - 1)] = step % 2 == 0 ? 1.0 : -1.0;
    }
    consider(weighted_probe(terms, alternating, ladder, f_norm, rules), "block_alternating");

    for (std::size_t p = 0; p < ens.permutations.size(); ++p)
      consider(permutation_probe(terms, ens.permutations[p], ladder, f_norm, rules),
               "permutation[" + std::to_string(p) + "]");

    for (std::size_t p = 0; p < ens.subsets.size(); ++p)
      consider(subseries_probe(terms, ens.subsets[p], ladder, f_norm, rules), "subset[" + std::to_string(p) + "]");

    for (std::size_t j = 0; j < ens.period; ++j) {
      std::vector<char> mask(static_cast<std::size_t>(N));
      for (std::int64_t n = 1; n <= N; ++n)
        mask[static_cast<std::size_t>(n - 1)] = static_cast<std::size_t>(n - 1) % ens.period == j ? 1 : 0;
      consider(subseries_probe(terms, mask, ladder, f_norm, rules), "block_position[" + std::to_string(j) + "]");
    }
    consider(weighted_probe(terms, phase_aligned(terms), ladder, f_norm, rules), "phase_aligned");
    std::vector<double> used(res.lengths.begin(), res.lengths.begin() + static_cast<std::ptrdiff_t>(pe.pattern_envelope.size()));
    pe.envelope_tail = tail_trend(used, pe.pattern_envelope, tail_rules(rules, rules.tail_tolerance * f_norm));

    res.probes.push_back(std::move(pe));
  }

  bool any_persist = false;
  bool any_undecided = false;
  for (const auto& pe : res.probes) {
    any_persist |= pe.ordered.tail.trend == TailTrend::Persists;
    any_undecided |= pe.ordered.tail.trend == TailTrend::Undecided;
  }
  res.ordered_converges = any_persist ? Verdict::TrendNo : any_undecided ? Verdict::Inconclusive : Verdict::Yes;

  if (any_persist) {
    res.verdict = ConvergenceClass::DivergentAtScale;
    for (const auto& pe : res.probes) {
      if (pe.ordered.tail.trend != TailTrend::Persists) continue;
      if (res.witnesses.empty()) {
        res.witness_probe = pe.probe;
        res.witness_pattern = "ordered";
        res.witness_growth = pe.ordered.growth;
      }
      res.witnesses.push_back(pe.probe);
    }
    return res;
  }
  if (any_undecided) {
    res.verdict = ConvergenceClass::Inconclusive;
    return res;
  }

  bool qualified = false;
  bool pattern_undecided = false;
  for (const auto& pe : res.probes) {
    bool square_diverges = pe.square_sum.verdict == SquareSumVerdict::Diverges;
    bool pattern_persists = pe.envelope_tail.trend == TailTrend::Persists;
    pattern_undecided |= pe.envelope_tail.trend == TailTrend::Undecided || pe.square_sum.verdict == SquareSumVerdict::Inconclusive;
    if (!square_diverges && !pattern_persists) continue;
    res.witnesses.push_back(pe.probe);
    const GrowthFit& growth = square_diverges ? pe.square_sum.growth : pe.worst_pattern.growth;
    if (!qualified && fit_qualifies(growth, rules.growth)) {
      qualified = true;
      res.witness_probe = pe.probe;
      res.witness_pattern = square_diverges ? "square_sum" : pe.worst_pattern.pattern;
      res.witness_growth = growth;
    }
  }
  if (!res.witnesses.empty()) {
    res.verdict = qualified ? ConvergenceClass::ConditionalAtScale : ConvergenceClass::Inconclusive;
    if (!qualified) {
      res.witness_probe = res.witnesses.front();
      res.witnesses.clear();
    }
    return res;
  }
  res.verdict = pattern_undecided ? ConvergenceClass::Inconclusive : ConvergenceClass::UnconditionalAtScale;
  return res;
}

std::vector<MultiplierSpec> symmetric_variants(const MultiplierSpec& spec) {
  return {spec, spec.adjoint(), spec.swapped(), spec.modulus_swapped()};
}

namespace {

WeightExpr reciprocal_weights(const WeightExpr& w, std::int64_t N) {
  if (auto r = WeightExpr::reciprocal(w)) return *r;
  std::vector<Complex> values(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) {
    Complex v = w.eval(n);
    if (v == Complex(0.0)) throw CanonicalizationError("element " + std::to_string(n) + " has zero norm");
    values[static_cast<std::size_t>(n - 1)] = 1.0 / v;
  }
  return WeightExpr::explicit_list(std::move(values));
}

bool yes(Verdict v) { return v == Verdict::Yes; }
bool no(Verdict v) { return is_negative(v); }

}  // namespace

NecessaryReport necessary_report(const MultiplierSpec& spec, const ConvergenceResult& result) {
  const auto& ladder = spec.ladder;
  const auto& m = spec.symbol;
  WeightExpr phi_norm = spec.phi.norm_weights();
  WeightExpr psi_norm = spec.psi.norm_weights();

  NecessaryReport r;
  r.m_phinorm_psi = estimate_frame_bounds(SequenceSpec::scaled(spec.psi, WeightExpr::product(m, phi_norm)), ladder);
  r.m_psinorm_phi = estimate_frame_bounds(SequenceSpec::scaled(spec.phi, WeightExpr::product(m, psi_norm)), ladder);
  try {
    r.normalized_phi =
        estimate_frame_bounds(SequenceSpec::scaled(spec.phi, reciprocal_weights(phi_norm, ladder.max())), ladder);
  } catch (const CanonicalizationError&) {
    r.normalized_phi = FrameBounds{};
  } catch (const OverflowError&) {
    r.normalized_phi = FrameBounds{};
  }
  r.m_psi = estimate_frame_bounds(SequenceSpec::scaled(spec.psi, m), ladder);
  r.m_phi = estimate_frame_bounds(SequenceSpec::scaled(spec.phi, m), ladder);
  r.phi = estimate_frame_bounds(spec.phi, ladder);
  r.psi = estimate_frame_bounds(spec.psi, ladder);
  r.symbol = classify_scalars(m, ladder);
  r.phi_norms = classify_scalars(phi_norm, ladder);
  r.psi_norms = classify_scalars(psi_norm, ladder);
  r.m_phi_norms = classify_scalars(WeightExpr::product(m, phi_norm), ladder);
  r.m_psi_norms = classify_scalars(WeightExpr::product(m, psi_norm), ladder);
  r.product_norms = classify_scalars(WeightExpr::product(m, WeightExpr::product(phi_norm, psi_norm)), ladder);

  const auto v = result.verdict;
  const bool uncond = v == ConvergenceClass::UnconditionalAtScale;
  const bool not_uncond = v == ConvergenceClass::ConditionalAtScale || v == ConvergenceClass::DivergentAtScale;
  const bool converges = uncond || v == ConvergenceClass::ConditionalAtScale;
  const bool diverges = v == ConvergenceClass::DivergentAtScale;
  auto flag = [&r](std::string rule, std::string message) {
    r.contradictions.push_back({std::move(rule), std::move(message)});
  };

  if (uncond) {
    r.checked.push_back("necessary.weighted_bessel");
    if (no(r.m_phinorm_psi.bessel) || no(r.m_psinorm_phi.bessel))
      flag("necessary.weighted_bessel", "unconditional, but (m ||phi|| psi) or (m ||psi|| phi) is not Bessel");

    struct Pair {
      const ScalarClassification* hyp;
      const FrameBounds* concl;
      const char* text;
    };
    const Pair pairs[] = {{&r.phi_norms, &r.m_psi, "phi NBB forces (m psi) Bessel"},
                          {&r.psi_norms, &r.m_phi, "psi NBB forces (m phi) Bessel"},
                          {&r.m_phi_norms, &r.psi, "(m phi) NBB forces psi Bessel"},
                          {&r.m_psi_norms, &r.phi, "(m psi) NBB forces phi Bessel"}};
    for (const auto& p : pairs) {
      if (!yes(p.hyp->is_nbb)) continue;
      r.checked.push_back("necessary.nbb_bessel");
      if (no(p.concl->bessel)) flag("necessary.nbb_bessel", std::string("unconditional, but ") + p.text);
    }
    if (yes(r.phi_norms.is_nbb) && yes(r.psi_norms.is_nbb)) {
      r.checked.push_back("necessary.bounded_symbol");
      if (no(r.symbol.is_linf)) flag("necessary.bounded_symbol", "unconditional with NBB phi and psi, but m is unbounded");
      if (yes(r.symbol.is_nbb)) {
        r.checked.push_back("necessary.semi_normalized");
        if (no(r.symbol.is_semi_normalized) || no(r.phi.bessel) || no(r.psi.bessel))
          flag("necessary.semi_normalized",
               "unconditional with NBB m, phi and psi, but m is not semi-normalized or a sequence is not Bessel");
      }
    }
  }

  if (yes(r.phi_norms.is_nbb) && yes(r.phi.bessel) && (uncond || not_uncond)) {
    r.checked.push_back("equivalence.nbb_bessel_phi");
    if ((uncond && no(r.m_psi.bessel)) || (not_uncond && yes(r.m_psi.bessel)))
      flag("equivalence.nbb_bessel_phi", "phi NBB and Bessel: unconditional convergence must match (m psi) Bessel");
  }

  if (yes(r.phi.riesz) && (uncond || not_uncond)) {
    r.checked.push_back("equivalence.riesz_phi");
    if (v == ConvergenceClass::ConditionalAtScale)
      flag("equivalence.riesz_phi", "phi Riesz: convergence and unconditional convergence coincide");
    if ((uncond && no(r.m_psi.bessel)) || (not_uncond && yes(r.m_psi.bessel)))
      flag("equivalence.riesz_phi", "phi Riesz: unconditional convergence must match (m psi) Bessel");
    if (yes(r.psi_norms.is_nbb)) {
      r.checked.push_back("necessary.riesz_bounded_symbol");
      if (converges && no(r.symbol.is_linf))
        flag("necessary.riesz_bounded_symbol", "phi Riesz and psi NBB: convergence forces m bounded");
    }
    if (yes(r.psi.riesz)) {
      r.checked.push_back("equivalence.riesz_pair");
      if ((converges && no(r.symbol.is_linf)) || (diverges && yes(r.symbol.is_linf)))
        flag("equivalence.riesz_pair", "phi and psi Riesz: convergence must match m bounded");
    }
  }

  if (spec.phi.kind() == SequenceSpec::Kind::Gabor && spec.psi.kind() == SequenceSpec::Kind::Gabor &&
      yes(r.symbol.is_nbb) && (uncond || not_uncond)) {
    r.checked.push_back("equivalence.gabor");
    bool all_yes = yes(r.phi.bessel) && yes(r.psi.bessel) && yes(r.symbol.is_semi_normalized);
    bool any_no = no(r.phi.bessel) || no(r.psi.bessel) || no(r.symbol.is_semi_normalized);
    if ((uncond && any_no) || (not_uncond && all_yes))
      flag("equivalence.gabor", "Gabor pair with NBB m: unconditional must match Bessel pair and m semi-normalized");
  }

  if (yes(r.product_norms.is_nbb) && not_uncond) {
    r.checked.push_back("equivalence.nbb_product");
    if (yes(r.m_phinorm_psi.bessel) && yes(r.m_psinorm_phi.bessel))
      flag("equivalence.nbb_product",
           "NBB norm product: (m ||phi|| psi) and (m ||psi|| phi) Bessel force unconditional convergence");
  }
  return r;
}

}  // namespace framemult
