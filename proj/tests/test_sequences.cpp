#include <cmath>

#include <gtest/gtest.h>

#include "framemult/classification.hpp"
#include "framemult/error.hpp"
#include "framemult/sequence.hpp"
#include "support.hpp"

using namespace framemult;
using testing_support::kBlockPhi;
using testing_support::kBlockPsi;
using testing_support::sequence;

namespace {

DenseMatrix columns_of(const nlohmann::json& spec, std::int64_t N, Index D) {
  return build_sequence(sequence(spec), N, D).dense();
}

DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  DenseMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST(Sequence, OnbIsIdentity) {
  EXPECT_TRUE(columns_of({{"kind", "onb"}}, 3, 3).isApprox(DenseMatrix::Identity(3, 3)));
}

TEST(Sequence, WeightedBasis) {
  auto m = columns_of({{"kind", "weighted_onb"}, {"weights", "n"}}, 2, 2);
  EXPECT_TRUE(m.isApprox(from_rows({{1, 0}, {0, 2}})));
  auto inv = columns_of({{"kind", "weighted_onb"}, {"weights", "1/n"}}, 3, 3);
  EXPECT_TRUE(inv.isApprox(from_rows({{1, 0, 0}, {0, 0.5, 0}, {0, 0, 1.0 / 3}})));
}

TEST(Sequence, BlockPatterns) {
  EXPECT_TRUE(columns_of(kBlockPhi, 6, 3).isApprox(from_rows({{1, 1, -1, 0, 1, -1}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0}})));
  EXPECT_TRUE(columns_of(kBlockPsi, 6, 2).isApprox(from_rows({{1, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1}})));
}

TEST(Sequence, RequiredDimAndShapeErrors) {
  auto phi = sequence(kBlockPhi);
  EXPECT_EQ(phi.required_dim(6), 2);
  EXPECT_THROW(build_sequence(phi, 6, 1), ShapeError);
  auto list = SequenceSpec::explicit_vectors({Vector::Ones(2)});
  EXPECT_THROW(build_sequence(list, 2), ShapeError);
}

TEST(Sequence, GaborDeltaWindowIsTight) {
  std::vector<Complex> window(4, 0.0);
  window[0] = 1.0;
  auto g = SequenceSpec::gabor(window, 1, 1);
  auto real = build_sequence(g, 16, 4);
  DenseMatrix S = real.dense() * real.dense().adjoint();
  EXPECT_TRUE(S.isApprox(4.0 * DenseMatrix::Identity(4, 4), 1e-12));
}

TEST(Sequence, GaborLatticeMustDivide) {
  std::vector<Complex> window(12, 1.0);
  EXPECT_THROW(SequenceSpec::gabor(window, 5, 1), LatticeError);
  EXPECT_THROW(SequenceSpec::gabor(window, 2, 5), LatticeError);
}

TEST(Sequence, JsonRoundTrip) {
  for (const auto& j : {kBlockPhi, kBlockPsi, nlohmann::json{{"kind", "weighted_onb"}, {"weights", "n^2"}},
                        nlohmann::json::parse(R"({"kind": "riesz_image", "base": [[2, 1], [0, 1]]})")}) {
    auto s = sequence(j);
    EXPECT_EQ(SequenceSpec::from_json(s.to_json()), s) << j.dump();
  }
}

TEST(Scalars, Symbols) {
  auto n = classify_scalars(WeightExpr::parse("n"), TruncationLadder());
  EXPECT_EQ(n.is_linf, Verdict::TrendNo);
  EXPECT_NEAR(n.sup_fit.slope, 1.0, 0.05);
  EXPECT_EQ(n.is_nbb, Verdict::Yes);
  EXPECT_DOUBLE_EQ(n.inf_estimate, 1.0);

  auto one = classify_scalars(WeightExpr(), TruncationLadder());
  EXPECT_EQ(one.is_semi_normalized, Verdict::Yes);
  EXPECT_DOUBLE_EQ(one.a, 1.0);
  EXPECT_DOUBLE_EQ(one.b, 1.0);

  auto inv = classify_scalars(WeightExpr::parse("1/n"), TruncationLadder());
  EXPECT_EQ(inv.is_nbb, Verdict::TrendNo);
  EXPECT_EQ(inv.is_l2, Verdict::Yes);
}

TEST(FrameBounds, OnbIsParseval) {
  auto fb = estimate_frame_bounds(SequenceSpec::onb(), TruncationLadder());
  EXPECT_EQ(fb.verdict, FrameVerdict::RieszBasis);
  for (std::size_t i = 0; i < fb.lengths.size(); ++i) {
    EXPECT_NEAR(fb.bessel_B[i], 1.0, 1e-12);
    EXPECT_NEAR(fb.lower_A[i], 1.0, 1e-12);
  }
}

TEST(FrameBounds, RepeatedColumnsFormTightFrame) {
  auto fb = estimate_frame_bounds(sequence(kBlockPsi), TruncationLadder({48, 192, 768, 3072}));
  EXPECT_EQ(fb.verdict, FrameVerdict::Frame);
  EXPECT_NEAR(fb.B_estimate, 3.0, 1e-12);
  EXPECT_NEAR(fb.A_estimate, 3.0, 1e-12);
}

TEST(FrameBounds, CancellingColumnsAreNotBessel) {
  TruncationLadder ladder({48, 192, 768, 3072});
  auto fb = estimate_frame_bounds(sequence(kBlockPhi), ladder);
  EXPECT_EQ(fb.verdict, FrameVerdict::NotBessel);
  for (std::size_t i = 0; i < fb.lengths.size(); ++i) {
    double K = static_cast<double>(ladder[i] / 3);
    EXPECT_NEAR(fb.bessel_B[i], 1.0 + 2.0 * K, 1e-9 * K);
  }
}

TEST(Biorthogonal, WeightedBasisDual) {
  auto r = biorthogonal(build_sequence(sequence({{"kind", "weighted_onb"}, {"weights", "n"}}), 3, 3));
  EXPECT_EQ(r.minimal_verdict, Verdict::Yes);
  ASSERT_TRUE(r.columns.has_value());
  DenseMatrix dual(*r.columns);
  EXPECT_TRUE(dual.isApprox(from_rows({{1, 0, 0}, {0, 0.5, 0}, {0, 0, 1.0 / 3}}), 1e-12));
}

TEST(Biorthogonal, OnbIsSelfDual) {
  auto r = biorthogonal(build_sequence(SequenceSpec::onb(), 4, 4));
  ASSERT_TRUE(r.columns.has_value());
  EXPECT_TRUE(DenseMatrix(*r.columns).isApprox(DenseMatrix::Identity(4, 4)));
}

TEST(Biorthogonal, DuplicateColumnsAreNotMinimal) {
  auto r = biorthogonal(sequence(kBlockPhi), TruncationLadder({48, 192, 768, 3072}));
  EXPECT_EQ(r.minimal_verdict, Verdict::No);
  EXPECT_TRUE(r.structural);
  EXPECT_FALSE(r.columns.has_value());
}
