#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framemult/classification.hpp"
#include "framemult/core.hpp"
#include "framemult/multiplier.hpp"
#include "framemult/trend.hpp"

namespace framemult {

enum class ConvergenceClass { UnconditionalAtScale, ConditionalAtScale, DivergentAtScale, Inconclusive };

std::string to_string(ConvergenceClass c);

/// The summands t_n = m_n <f, psi_n> phi_n, n = 1..N, for one probe f.
struct TermSequence {
  std::vector<SparseColumn> terms;
  Index dim = 0;

  std::int64_t count() const noexcept { return static_cast<std::int64_t>(terms.size()); }
  /// sum_{n <= N} t_n (N defaults to all terms).
  Vector partial_sum(std::optional<std::int64_t> N = std::nullopt) const;
};

/// f is cut to the multiplier dimension if longer.
TermSequence term_sequence(const RealizedMultiplier& M, const Vector& f);
TermSequence term_sequence(const MultiplierSpec& spec, const Vector& f, std::int64_t N);

/// Behaviour of the partial sums of sum_n lambda_n t_n along the ladder.
struct TraceEvidence {
  std::string pattern;
  /// max_{N/2 < n <= N} ||S_n - S_{N/2}|| at every ladder length N.
  std::vector<double> oscillation;
  TailEvidence tail;
  /// ||S_n|| sampled on a geometric grid of n.
  std::vector<double> grid;
  std::vector<double> running_norm;
  GrowthFit growth;
};

enum class SquareSumVerdict { Converges, Diverges, Inconclusive };

std::string to_string(SquareSumVerdict v);

struct SquareSumEvidence {
  SquareSumVerdict verdict = SquareSumVerdict::Inconclusive;
  /// sum_{N/2 < n <= N} ||t_n||^2 at every ladder length N.
  std::vector<double> window_sums;
  /// sum_{n <= N} ||t_n||^2 at every ladder length N.
  std::vector<double> totals;
  TailEvidence tail;
  /// Growth of the running square sum on the geometric grid.
  std::vector<double> grid;
  std::vector<double> running;
  GrowthFit growth;
};

/// Tail rule thresholds; `tail_tolerance` is relative to ||f||.
struct ConvergenceRules {
  double tail_tolerance = 1e-6;
  double square_sum_tolerance = 1e-10;
  double decay_exponent = -0.1;
  double persist_exponent = -0.05;
  GrowthRules growth;
};

/// Convergence of sum_n ||t_n||^2.
SquareSumEvidence square_sum_check(const TermSequence& terms, const TruncationLadder& ladder,
                                   const ConvergenceRules& rules = {});

/// Partial sums of the subseries selected by `mask` (mask[n-1] != 0).
TraceEvidence subseries_probe(const TermSequence& terms, const std::vector<char>& mask, const TruncationLadder& ladder,
                              double f_norm, const ConvergenceRules& rules = {});

/// Partial sums of sum_n lambda_n t_n; lambda empty means all ones.
TraceEvidence weighted_probe(const TermSequence& terms, const std::vector<Complex>& lambda,
                             const TruncationLadder& ladder, double f_norm, const ConvergenceRules& rules = {});

/// Partial sums of sum_n t_{order[n-1]} (order is a permutation of 1..N).
TraceEvidence permutation_probe(const TermSequence& terms, const std::vector<std::int64_t>& order,
                                const TruncationLadder& ladder, double f_norm, const ConvergenceRules& rules = {});

/// Worst (largest final oscillation relative to ||f||) over the patterns.
TraceEvidence sign_probe(const TermSequence& terms, const std::vector<std::vector<Complex>>& patterns,
                         const TruncationLadder& ladder, double f_norm, const ConvergenceRules& rules = {});

struct EnsembleOptions {
  std::size_t gaussian_probes = 16;
  std::size_t sign_patterns = 32;
  std::size_t random_subseries = 8;
  std::size_t permutations = 4;
};

/// Probe vectors f (fixed elements of l^2, cut to the ambient dimension)
/// and index patterns, all reproducible from the seed.
struct ProbeEnsemble {
  struct Probe {
    std::string name;
    Vector f;
  };
  std::vector<Probe> probes;
  /// Random +-1 patterns, one entry per index n <= N.
  std::vector<std::vector<Complex>> sign_patterns;
  /// Random rearrangements that shuffle within each dyadic range
  /// (2^j, 2^(j+1)], so prefixes of length 2^j are preserved.
  std::vector<std::vector<std::int64_t>> permutations;
  /// Random density-1/2 subsets.
  std::vector<std::vector<char>> subsets;
  /// Period of the block-position rules and the block-alternating pattern.
  std::size_t period = 2;
  std::int64_t length = 0;
};

/// Gaussian probes g_k / k, then e1, sum e_k / k, sum k^{-3/4} e_k and
/// sum k^{-3/2} e_k.
ProbeEnsemble make_ensemble(Index dim, std::int64_t N, std::size_t period, RngSeed seed,
                            const EnsembleOptions& options = {});

struct ProbeEvidence {
  std::string probe;
  double f_norm = 0.0;
  TraceEvidence ordered;
  SquareSumEvidence square_sum;
  /// Pattern with the largest final oscillation.
  TraceEvidence worst_pattern;
  /// Per step, the largest oscillation over all patterns; its tail trend
  /// decides whether some bounded reweighting keeps oscillating.
  std::vector<double> pattern_envelope;
  TailEvidence envelope_tail;
  /// Patterns whose own oscillation persists.
  std::vector<std::string> persisting_patterns;
};

struct ConvergenceResult {
  ConvergenceClass verdict = ConvergenceClass::Inconclusive;
  /// Ordered partial sums converge on every probe.
  Verdict ordered_converges = Verdict::Inconclusive;
  std::vector<std::int64_t> lengths;
  /// Largest oscillation / ||f|| over all probes and patterns, per step.
  std::vector<double> worst_tails;
  /// Growth fit of the witnessing trace.
  GrowthFit witness_growth;
  std::string witness_probe;
  std::string witness_pattern;
  /// Every probe that witnesses the verdict (empty when unconditional).
  std::vector<std::string> witnesses;
  std::vector<ProbeEvidence> probes;
};

ConvergenceResult classify(const MultiplierSpec& spec, RngSeed seed = {}, const EnsembleOptions& options = {},
                           const ConvergenceRules& rules = {});

/// Variants (m, Phi, Psi), (conj m, Psi, Phi), (m, Psi, Phi) and
/// (|m|, Psi, Phi) in that order.
std::vector<MultiplierSpec> symmetric_variants(const MultiplierSpec& spec);

struct ConsistencyFlag {
  std::string rule;
  std::string message;
};

struct NecessaryReport {
  FrameBounds m_phinorm_psi;  // (m_n ||phi_n|| psi_n)
  FrameBounds m_psinorm_phi;  // (m_n ||psi_n|| phi_n)
  FrameBounds normalized_phi; // (phi_n / ||phi_n||)
  FrameBounds m_psi;          // (m_n psi_n)
  FrameBounds m_phi;          // (m_n phi_n)
  FrameBounds phi;
  FrameBounds psi;
  ScalarClassification symbol;
  ScalarClassification phi_norms;
  ScalarClassification psi_norms;
  ScalarClassification m_phi_norms;
  ScalarClassification m_psi_norms;
  ScalarClassification product_norms;  // |m_n| ||phi_n|| ||psi_n||
  /// Rules checked with all hypotheses decided.
  std::vector<std::string> checked;
  /// Definite verdicts that contradict a necessary or equivalent condition.
  std::vector<ConsistencyFlag> contradictions;
};

/// Necessary conditions for unconditional convergence and the equivalences
/// that hold under NBB, Riesz or Gabor hypotheses, checked against `result`.
NecessaryReport necessary_report(const MultiplierSpec& spec, const ConvergenceResult& result);

}  // namespace framemult
