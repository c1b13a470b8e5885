#include <cmath>

#include <gtest/gtest.h>

#include "framemult/error.hpp"
#include "framemult/multiplier.hpp"
#include "support.hpp"

using namespace framemult;
using testing_support::block_example;
using testing_support::multiplier;

namespace {

DenseMatrix dense(const MultiplierSpec& s, std::int64_t N) { return DenseMatrix(realize(s, N).matrix()); }

const char* kE1short = R"({"symbol": "n", "phi": {"kind": "weighted_onb", "weights": "n"},
                           "psi": {"kind": "weighted_onb", "weights": "n^-2"}})";

}  // namespace

TEST(Realize, IdentityCases) {
  EXPECT_TRUE(dense(multiplier(R"({"symbol": 1, "phi": {"kind": "onb"}, "psi": {"kind": "onb"}})"), 5)
                  .isApprox(DenseMatrix::Identity(5, 5)));
  EXPECT_EQ((dense(multiplier(kE1short), 4) - DenseMatrix::Identity(4, 4)).norm(), 0.0);
}

TEST(Realize, BlocksTelescope) {
  for (std::int64_t K : {4, 10}) {
    auto m = dense(block_example(TruncationLadder()), 3 * K);
    EXPECT_LE((m - DenseMatrix::Identity(K, K)).norm(), 1e-14) << K;
  }
}

TEST(Realize, ApplyMatchesMatrix) {
  auto M = realize(multiplier(kE1short), 8);
  std::mt19937_64 engine(1);
  Vector f = gaussian_vector(M.dim(), engine);
  EXPECT_LE((M.apply(f) - M.matrix() * f).norm(), 1e-13);
}

TEST(Adjoint, SwapGivesAdjoint) {
  EXPECT_EQ(adjoint_swap_residual(multiplier(R"({"symbol": 1, "phi": {"kind": "onb"}, "psi": {"kind": "onb"}})"), 64), 0.0);
  auto block = adjoint_swap_check(block_example(TruncationLadder()));
  EXPECT_LE(block.worst_relative, 1e-13);
  auto cplx = adjoint_swap_check(multiplier(R"({"symbol": "n*i", "phi": {"kind": "weighted_onb", "weights": "n"},
                                                  "psi": {"kind": "weighted_onb", "weights": "n^-2"}})"));
  EXPECT_LE(cplx.worst_relative, 1e-13);
  EXPECT_EQ(multiplier(R"({"symbol": "n*i"})").adjoint().symbol.eval(2), Complex(0.0, -2.0));
}

TEST(Reweight, CertificateMovesWeights) {
  auto spec = multiplier(R"({"symbol": "n", "phi": {"kind": "weighted_onb", "weights": "1/n"},
                             "psi": {"kind": "weighted_onb", "weights": "1/n"}})");
  Reweighting rw{WeightExpr::parse("n"), WeightExpr(), WeightExpr()};
  auto out = reweight(spec, rw);
  EXPECT_TRUE(out.symbol.is_one());
  EXPECT_EQ(out.phi, SequenceSpec::onb());
  EXPECT_LE(realize_difference(spec, out, 256), 1e-14);
}

TEST(Reweight, RejectsWrongCertificate) {
  auto spec = multiplier(R"({"symbol": "n"})");
  Reweighting bad{WeightExpr::parse("n"), WeightExpr::parse("n"), WeightExpr()};
  EXPECT_THROW(check_certificate(spec, bad, 64), ReweightError);
  Reweighting identity{WeightExpr(), WeightExpr(), WeightExpr()};
  auto same = multiplier(R"({"symbol": 1})");
  EXPECT_EQ(reweight(same, identity), same);
}

TEST(Canonicalize, IdentityMultiplier) {
  auto res = canonicalize_p2(multiplier(kE1short));
  EXPECT_TRUE(res.reweighted.symbol.is_one());
  EXPECT_EQ(res.bessel_pair, Verdict::Yes);
  EXPECT_NEAR(res.phi_bounds.B_estimate, 1.0, 1e-12);
  EXPECT_NEAR(res.psi_bounds.B_estimate, 1.0, 1e-12);
  for (double r : res.invariance_residual) EXPECT_LE(r, 1e-12);
}

TEST(Canonicalize, BesselPairWithoutNbb) {
  auto res = canonicalize_p2(multiplier(R"({"symbol": 1, "phi": {"kind": "weighted_onb", "weights": "1/n"},
                                             "psi": {"kind": "onb"}})"));
  EXPECT_EQ(res.bessel_pair, Verdict::Yes);
  EXPECT_EQ(res.product_norms.is_nbb, Verdict::TrendNo);
}

TEST(Canonicalize, ZeroElementIsRejected) {
  auto spec = multiplier(R"({"symbol": 1, "phi": {"kind": "weighted_onb", "weights": 0}})");
  EXPECT_THROW(canonicalize_p2(spec), CanonicalizationError);
}

TEST(SqrtSplit, Cases) {
  auto sq = sqrt_split(multiplier(R"({"symbol": "n^2", "phi": {"kind": "weighted_onb", "weights": "1/n"},
                                      "psi": {"kind": "weighted_onb", "weights": "1/n"}})"));
  EXPECT_EQ(sq.bessel_pair, Verdict::Yes);
  EXPECT_NEAR(sq.phi_bounds.B_estimate, 1.0, 1e-12);

  auto four = sqrt_split(multiplier(R"({"symbol": 4})"));
  EXPECT_NEAR(four.phi_bounds.B_estimate, 4.0, 1e-12);
  EXPECT_NEAR(four.phi_bounds.A_estimate, 4.0, 1e-12);

  EXPECT_THROW(sqrt_split(multiplier(R"({"symbol": 1, "phi": {"kind": "weighted_onb", "weights": "n"}, "psi": {"kind": "onb"}})")),
               PreconditionError);
}

TEST(Invertibility, Verdicts) {
  auto id = invertibility(multiplier(kE1short), true);
  EXPECT_EQ(id.verdict, InvertibilityVerdict::InvertibleAtScale);
  for (double c : id.condition) EXPECT_NEAR(c, 1.0, 1e-12);
  EXPECT_FALSE(id.contradiction);

  auto diag = invertibility(multiplier(R"({"symbol": "n", "phi": {"kind": "weighted_onb", "weights": "1/n"},
                                           "psi": {"kind": "weighted_onb", "weights": "1/n"}})"));
  EXPECT_EQ(diag.verdict, InvertibilityVerdict::NotInvertible);
  EXPECT_NEAR(diag.condition_fit.slope, 1.0, 0.05);

  auto zero = invertibility(multiplier(R"({"symbol": {"period": 2, "entries": [1, -1]},
                                           "phi": {"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}]}})"));
  EXPECT_EQ(zero.verdict, InvertibilityVerdict::NotInvertible);
  for (double s : zero.max_singular) EXPECT_EQ(s, 0.0);
}

TEST(E2Certificate, ExactOptimum) {
  for (std::int64_t N : {1, 2, 10, 100}) {
    auto c = e2_certificate(N);
    EXPECT_EQ(c.optimum, Rational(1, N * N)) << N;
    EXPECT_EQ(c.witness_product, c.optimum);
  }
  EXPECT_NEAR(e2_bound_product({1.0, 2.0}), 0.25, 1e-15);
  EXPECT_NEAR(e2_bound_product({2.0, 1.0}), 0.125, 1e-15);
}

TEST(DualCheck, Pairs) {
  auto onb = dual_check(multiplier(R"({"symbol": 1})"));
  EXPECT_TRUE(onb.vanishes);
  EXPECT_TRUE(onb.swapped_vanishes);
  auto dual = dual_check(multiplier(R"({"symbol": 1, "phi": {"kind": "weighted_onb", "weights": "1/n"},
                                       "psi": {"kind": "weighted_onb", "weights": "n"}})"));
  EXPECT_TRUE(dual.vanishes);
  EXPECT_TRUE(dual.swapped_vanishes);
  auto block = dual_check(block_example(TruncationLadder({48, 192, 768, 3072})));
  EXPECT_TRUE(block.vanishes);
  EXPECT_TRUE(block.swapped_vanishes);
}
