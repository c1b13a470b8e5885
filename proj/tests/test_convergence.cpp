#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "framemult/convergence.hpp"
#include "framemult/scenarios.hpp"
#include "support.hpp"

using namespace framemult;
using testing_support::block_example;
using testing_support::multiplier;

namespace {

Vector harmonic(Index dim, double exponent) {
  Vector f = Vector::Zero(dim);
  for (Index k = 0; k < dim; ++k) f(k) = std::pow(static_cast<double>(k + 1), -exponent);
  return f;
}

double column_norm(const SparseColumn& c) { return std::sqrt(squared_norm(c)); }

bool is_e1(const SparseColumn& c, double sign = 1.0) {
  return c.size() == 1 && c[0].row == 0 && std::abs(c[0].value - Complex(sign)) < 1e-15;
}

const TruncationLadder kLadder({64, 256, 1024, 4096});

}  // namespace

TEST(Terms, IdentityOnFirstBasisVector) {
  auto t = term_sequence(multiplier(R"({"symbol": 1})"), basis_vector(8, 1), 8);
  EXPECT_TRUE(is_e1(t.terms[0]));
  for (std::int64_t n = 2; n <= 8; ++n) EXPECT_EQ(column_norm(t.terms[n - 1]), 0.0);
}

TEST(Terms, BlockExampleFirstBlockOnly) {
  auto t = term_sequence(block_example(kLadder), basis_vector(4, 1), 12);
  EXPECT_TRUE(is_e1(t.terms[0]));
  EXPECT_TRUE(is_e1(t.terms[1]));
  EXPECT_TRUE(is_e1(t.terms[2], -1.0));
  for (std::int64_t n = 4; n <= 12; ++n) EXPECT_EQ(column_norm(t.terms[n - 1]), 0.0);
  EXPECT_LE((t.partial_sum() - basis_vector(4, 1)).norm(), 1e-15);
}

TEST(Terms, SwappedExampleHasUnitTermInEveryBlock) {
  auto t = term_sequence(block_example(kLadder, true), basis_vector(4, 1), 12);
  for (std::int64_t k = 1; k <= 4; ++k) {
    const auto& middle = t.terms[3 * k - 2];
    ASSERT_EQ(middle.size(), 1u) << k;
    EXPECT_EQ(middle[0].row, k - 1);
    EXPECT_NEAR(std::abs(middle[0].value), 1.0, 1e-15);
  }
}

TEST(SquareSums, Verdicts) {
  std::mt19937_64 engine(5);
  auto id = multiplier(R"({"symbol": 1})", kLadder);
  Vector f = gaussian_vector(4096, engine).cwiseProduct(harmonic(4096, 1.0));
  auto g = term_sequence(id, f, 4096);
  EXPECT_EQ(square_sum_check(g, kLadder).verdict, SquareSumVerdict::Converges);

  auto sw = term_sequence(block_example(kLadder, true), basis_vector(kLadder.max(), 1), kLadder.max());
  auto lin = square_sum_check(sw, kLadder);
  EXPECT_EQ(lin.verdict, SquareSumVerdict::Diverges);
  EXPECT_EQ(lin.growth.model, GrowthModel::Power);
  EXPECT_NEAR(lin.growth.power.slope, 1.0, 0.05);

  auto spec = multiplier(R"({"symbol": "1/n", "psi": {"kind": "weighted_onb", "weights": "n^2"}})", kLadder);
  auto h = term_sequence(spec, harmonic(4096, 1.5), 4096);
  for (std::int64_t k : {1, 7, 100}) EXPECT_NEAR(squared_norm(h.terms[k - 1]), 1.0 / k, 1e-12 / k);
  auto harm = square_sum_check(h, kLadder);
  EXPECT_EQ(harm.verdict, SquareSumVerdict::Diverges);
  EXPECT_EQ(harm.growth.model, GrowthModel::Logarithmic);
}

TEST(Subseries, MiddleOfBlockGrowsLogarithmically) {
  auto spec = block_example(kLadder);
  const std::int64_t N = 4096;
  auto t = term_sequence(spec, harmonic(spec.dim(N), 1.0), N);
  std::vector<char> mask(N, 0);
  for (std::int64_t n = 2; n <= N; n += 3) mask[n - 1] = 1;
  auto ev = subseries_probe(t, mask, kLadder, 1.0);
  EXPECT_EQ(ev.growth.model, GrowthModel::Logarithmic);
  EXPECT_GE(ev.growth.logarithmic.r2, 0.99);
  EXPECT_EQ(ev.tail.trend, TailTrend::Persists);
}

TEST(Subseries, DiagonalIsBounded) {
  auto spec = multiplier(R"({"symbol": "n", "phi": {"kind": "weighted_onb", "weights": "1/n"},
                             "psi": {"kind": "weighted_onb", "weights": "1/n"}})",
                         kLadder);
  std::mt19937_64 engine(9);
  auto t = term_sequence(spec, gaussian_vector(4096, engine), 4096);
  std::vector<char> mask(4096, 0);
  for (std::size_t n = 0; n < mask.size(); n += 2) mask[n] = 1;
  auto ev = subseries_probe(t, mask, kLadder, 1.0);
  EXPECT_EQ(ev.tail.trend, TailTrend::Decays);
}

TEST(Signs, FlippedThirdEntryDoublesHarmonicSum) {
  auto spec = block_example(kLadder);
  const std::int64_t N = 4096;
  auto t = term_sequence(spec, harmonic(spec.dim(N), 1.0), N);
  std::vector<Complex> pattern(N, 0.0);
  for (std::int64_t n = 1; n <= N; ++n) {
    if (n % 3 == 2) pattern[n - 1] = 1.0;
    if (n % 3 == 0) pattern[n - 1] = -1.0;
  }
  auto ev = weighted_probe(t, pattern, kLadder, 1.0);
  EXPECT_EQ(ev.growth.model, GrowthModel::Logarithmic);
  EXPECT_NEAR(ev.growth.logarithmic.slope, 2.0, 0.1);

  auto id = term_sequence(multiplier(R"({"symbol": 1})", kLadder), harmonic(N, 1.0), N);
  auto worst = sign_probe(id, {std::vector<Complex>(N, 1.0), pattern}, kLadder, 1.0);
  EXPECT_EQ(worst.tail.trend, TailTrend::Decays);
}

TEST(Signs, MatchModulusSubseries) {
  auto spec = multiplier(R"({"symbol": {"period": 2, "entries": [1, -1]}})", kLadder);
  auto mod = multiplier(R"({"symbol": 1})", kLadder);
  const std::int64_t N = 1024;
  Vector f = harmonic(N, 1.0);
  auto t = term_sequence(spec, f, N);
  auto tm = term_sequence(mod, f, N);
  std::vector<Complex> signs(N);
  for (std::int64_t n = 1; n <= N; ++n) signs[n - 1] = spec.symbol.eval(n);
  TruncationLadder small({64, 256, 1024});
  auto a = weighted_probe(t, signs, small, 1.0);
  auto b = subseries_probe(tm, std::vector<char>(N, 1), small, 1.0);
  ASSERT_EQ(a.oscillation.size(), b.oscillation.size());
  for (std::size_t i = 0; i < a.oscillation.size(); ++i) EXPECT_NEAR(a.oscillation[i], b.oscillation[i], 1e-12);
}

TEST(Ensemble, DeterministicForSeed) {
  auto a = make_ensemble(32, 128, 3, RngSeed{7});
  auto b = make_ensemble(32, 128, 3, RngSeed{7});
  auto c = make_ensemble(32, 128, 3, RngSeed{8});
  ASSERT_EQ(a.probes.size(), b.probes.size());
  for (std::size_t i = 0; i < a.probes.size(); ++i) EXPECT_EQ(a.probes[i].f, b.probes[i].f);
  EXPECT_NE(a.probes[0].f, c.probes[0].f);
  EXPECT_EQ(a.sign_patterns, b.sign_patterns);
  EXPECT_EQ(a.permutations, b.permutations);
  for (const auto& p : a.permutations) {
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], static_cast<std::int64_t>(i + 1));
  }
}

TEST(Classify, ReferenceVerdicts) {
  EXPECT_EQ(classify(multiplier(R"({"symbol": 1})", kLadder)).verdict, ConvergenceClass::UnconditionalAtScale);
  TruncationLadder blocks({48, 192, 768, 3072});
  auto wd = classify(block_example(blocks));
  EXPECT_EQ(wd.verdict, ConvergenceClass::ConditionalAtScale);
  EXPECT_FALSE(wd.witnesses.empty());
  EXPECT_EQ(classify(block_example(blocks, true)).verdict, ConvergenceClass::DivergentAtScale);
  auto diag = multiplier(R"({"symbol": "n", "phi": {"kind": "weighted_onb", "weights": "1/n"},
                             "psi": {"kind": "weighted_onb", "weights": "1/n"}})",
                         kLadder);
  EXPECT_EQ(classify(diag).verdict, ConvergenceClass::UnconditionalAtScale);
}

TEST(Classify, SymmetricVariants) {
  auto spec = multiplier(R"({"symbol": "n*i", "phi": {"kind": "weighted_onb", "weights": "n"},
                             "psi": {"kind": "weighted_onb", "weights": "n^-2"}})",
                         kLadder);
  auto v = symmetric_variants(spec);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0], spec);
  EXPECT_EQ(v[1].symbol.eval(3), Complex(0.0, -3.0));
  EXPECT_EQ(v[2].phi, spec.psi);
  EXPECT_EQ(v[3].symbol.eval(3), Complex(3.0));
}

TEST(NecessaryReport, IdentityHasNoFlags) {
  auto spec = multiplier(R"({"symbol": "n", "phi": {"kind": "weighted_onb", "weights": "n"},
                             "psi": {"kind": "weighted_onb", "weights": "n^-2"}})",
                         kLadder);
  auto rep = necessary_report(spec, classify(spec));
  EXPECT_EQ(rep.m_phinorm_psi.bessel, Verdict::Yes);
  EXPECT_NEAR(rep.m_phinorm_psi.B_estimate, 1.0, 1e-12);
  EXPECT_TRUE(rep.contradictions.empty());
  EXPECT_FALSE(rep.checked.empty());
}

TEST(NecessaryReport, NonNbbHypothesisRaisesNothing) {
  auto s = registry_find("remark_cex1");
  ASSERT_TRUE(s.has_value());
  auto res = classify(s->multiplier, s->seed);
  EXPECT_EQ(res.verdict, ConvergenceClass::UnconditionalAtScale);
  auto rep = necessary_report(s->multiplier, res);
  EXPECT_TRUE(is_negative(rep.m_psi.bessel));
  EXPECT_TRUE(rep.contradictions.empty());
}
