#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "framemult/core.hpp"
#include "framemult/error.hpp"
#include "framemult/rational.hpp"
#include "framemult/trend.hpp"
#include "framemult/weight_expr.hpp"

using namespace framemult;

TEST(Rational, ArithmeticIsExactAndReduced) {
  Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
  EXPECT_EQ(Rational(2, -4).den(), 2);
  EXPECT_TRUE(Rational(1, 3) < Rational(1, 2));
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-2"), Rational(-2));
  EXPECT_EQ(Rational(3, 4).to_string(), "3/4");
  EXPECT_THROW(Rational::parse("1/0"), Error);
}

TEST(Rational, OverflowIsReported) {
  Rational big(std::int64_t{1} << 62);
  EXPECT_THROW(big * big, OverflowError);
}

TEST(WeightExpr, PowerIdentity) { EXPECT_EQ(WeightExpr::parse("n").eval(7), Complex(7.0)); }

TEST(WeightExpr, BlockPatternValue) {
  auto w = WeightExpr::from_json(nlohmann::json::parse(R"j({"period": 3, "entries": [1, "2^-(k-1)", "2^-(k-1)"]})j"));
  EXPECT_EQ(w.period(), 3u);
  EXPECT_DOUBLE_EQ(w.eval(5).real(), 0.5);
  EXPECT_DOUBLE_EQ(w.eval(4).real(), 1.0);
}

TEST(WeightExpr, ProductOfFactors) {
  auto w = WeightExpr::product(WeightExpr::power(Rational(2)), WeightExpr::geometric(Rational(1, 2)));
  EXPECT_DOUBLE_EQ(w.eval(3).real(), 2.25);
}

TEST(WeightExpr, GrammarForms) {
  EXPECT_NEAR(WeightExpr::parse("sqrt(2^-n)").eval(2).real(), 0.5, 1e-15);
  EXPECT_EQ(WeightExpr::parse("n*i").eval(3), Complex(0.0, 3.0));
  EXPECT_EQ(WeightExpr::parse("conj(n*i)").eval(3), Complex(0.0, -3.0));
  EXPECT_DOUBLE_EQ(WeightExpr::parse("n^-2").eval(4).real(), 1.0 / 16);
  EXPECT_TRUE(WeightExpr::parse("1").is_one());
  EXPECT_THROW(WeightExpr::parse("n^^2"), ParseError);
}

TEST(WeightExpr, ReciprocalIsExactForPowers) {
  auto r = WeightExpr::reciprocal(WeightExpr::parse("n^2"));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, WeightExpr::parse("n^-2"));
  EXPECT_THROW(WeightExpr::reciprocal(WeightExpr::constant(0)), CanonicalizationError);
}

TEST(WeightExpr, JsonRoundTrip) {
  for (const char* text : {"n", "n^-2", "2^-(n-1)", "sqrt(2^-n)", "n*i", "-1/2"}) {
    auto w = WeightExpr::parse(text);
    EXPECT_EQ(WeightExpr::from_json(w.to_json()), w) << text;
  }
  auto block = WeightExpr::from_json(nlohmann::json::parse(R"({"period": 2, "entries": [1, -1]})"));
  EXPECT_EQ(WeightExpr::from_json(block.to_json()), block);
}

TEST(WeightExpr, EvalOverflowThrows) { EXPECT_THROW(WeightExpr::parse("2^(n-1)").eval(5000), OverflowError); }

TEST(Ladder, DefaultAndValidation) {
  TruncationLadder d;
  EXPECT_EQ(d.lengths(), (std::vector<std::int64_t>{64, 256, 1024, 4096}));
  EXPECT_THROW(TruncationLadder({64, 256}), PreconditionError);
  EXPECT_THROW(TruncationLadder({64, 64, 128}), PreconditionError);
}

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  RngSeed s;
  auto a = s.engine(3), b = s.engine(3), c = s.engine(4);
  auto x = a(), y = b(), z = c();
  EXPECT_EQ(x, y);
  EXPECT_NE(x, z);
}

TEST(Spectra, DiagonalAndRankOne) {
  SparseMatrix m(3, 3);
  m.insert(0, 0) = 2.0;
  m.insert(1, 1) = 3.0;
  m.insert(2, 2) = 1.0;
  auto sv = singular_values(m);
  ASSERT_EQ(sv.size(), 3u);
  EXPECT_NEAR(sv[0], 3.0, 1e-14);
  EXPECT_NEAR(sv[2], 1.0, 1e-14);
  EXPECT_NEAR(operator_norm(m), 3.0, 1e-14);

  SparseMatrix r(2, 3);
  r.insert(0, 0) = 1.0;
  r.insert(0, 1) = 1.0;
  r.insert(0, 2) = 1.0;
  auto rows = row_spectrum(r);
  EXPECT_NEAR(rows[0], 3.0, 1e-14);
  EXPECT_NEAR(rows[1], 0.0, 1e-14);
}

TEST(Spectra, BlockInverse) {
  SparseMatrix m(2, 2);
  m.insert(0, 0) = 2.0;
  m.insert(1, 1) = 4.0;
  auto inv = block_inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_NEAR(std::abs(inv->coeff(1, 1) - Complex(0.25)), 0.0, 1e-15);
  SparseMatrix z(2, 2);
  z.insert(0, 0) = 1.0;
  EXPECT_FALSE(block_inverse(z).has_value());
}

TEST(Trend, PowerAndLogFits) {
  std::vector<double> x{64, 256, 1024, 4096}, pw, lg, flat;
  for (double v : x) {
    pw.push_back(3.0 * v);
    lg.push_back(2.0 * std::log(v) + 1.0);
    flat.push_back(5.0);
  }
  EXPECT_NEAR(power_fit(x, pw).slope, 1.0, 1e-12);
  EXPECT_NEAR(log_fit(x, lg).slope, 2.0, 1e-12);
  EXPECT_EQ(classify_growth(x, flat).model, GrowthModel::Bounded);
  EXPECT_EQ(classify_growth(x, pw).model, GrowthModel::Power);
  EXPECT_EQ(classify_growth(x, lg).model, GrowthModel::Logarithmic);
}

TEST(Trend, TailTrend) {
  std::vector<double> x{64, 256, 1024, 4096};
  std::vector<double> decaying{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}, flat{1, 1, 1, 1};
  TailRules rules;
  EXPECT_EQ(tail_trend(x, decaying, rules).trend, TailTrend::Decays);
  EXPECT_EQ(tail_trend(x, flat, rules).trend, TailTrend::Persists);
}
