#include <gtest/gtest.h>

#include "cdc/constructions.hpp"
#include "oracle.hpp"

using cdc::Field;
using cdc::Matrix;
using cdc::Orientation;
using cdc::ParallelLinkageParams;
using cdc::ScRepresentation;
using cdc::Subspace;

namespace {

std::size_t full_min(const cdc::ConstantDimensionCode& code) {
  return cdc::verify_cdc(code, 0, cdc::VerifyOptions{cdc::FullCheck{}, 2, {}}).observed_min_distance.value();
}

cdc::ConstantDimensionCode single_identity(const Field& f, std::size_t k) {
  cdc::ConstantDimensionCode c(f, k, k);
  c.insert(Subspace::from_matrix(Matrix::identity(f, k)));
  return c;
}

TEST(LiftedMrd, SizeDistanceAndLinkageIdentity) {
  const Field f = Field::prime(2);
  const auto lmrd = cdc::lifted_mrd(f, 8, 4, 4);
  EXPECT_EQ(lmrd.size(), 4096u);
  EXPECT_EQ(lmrd.claimed_distance(), 4u);
  EXPECT_EQ(full_min(lmrd), 4u);

  const auto q = cdc::mrd_code(f, 4, 4, 2);
  const auto linked = cdc::linkage(ScRepresentation(single_identity(f, 4)), q);
  EXPECT_TRUE(linked.same_codewords(lmrd));
  EXPECT_EQ(linked.claimed_distance(), 4u);
}

TEST(LiftedMrd, DegenerateShapes) {
  const Field f = Field::prime(3);
  EXPECT_EQ(cdc::lifted_mrd(f, 3, 3, 2).size(), 1u);
  EXPECT_EQ(cdc::lifted_mrd(f, 4, 3, 4).size(), 1u);  // n - k = 1 < d/2
  EXPECT_EQ(cdc::lifted_mrd(f, 5, 2, 2).size(), 729u);  // 3^(3*2)
  EXPECT_THROW(cdc::lifted_mrd(f, 5, 2, 3), cdc::ParameterError);
  EXPECT_THROW(cdc::lifted_mrd(f, 5, 1, 4), cdc::ParameterError);
}

TEST(Linkage, DistanceBoundHolds) {
  const Field f = Field::prime(2);
  const auto base = cdc::lifted_mrd(f, 4, 2, 2);
  ASSERT_EQ(base.size(), 16u);
  const auto q = cdc::mrd_code(f, 2, 3, 1);
  const auto code = cdc::linkage(ScRepresentation(base), q);
  EXPECT_EQ(code.size(), 16u * 64);
  EXPECT_EQ(code.claimed_distance(), 2u);
  EXPECT_GE(full_min(code), 2u);

  const auto base4 = cdc::lifted_mrd(f, 5, 2, 4);  // 2^(3*1) = 8 planes, distance 4
  const auto q2 = cdc::mrd_code(f, 2, 3, 2);
  const auto c2 = cdc::linkage(ScRepresentation(base4), q2);
  EXPECT_EQ(c2.claimed_distance(), 4u);
  EXPECT_EQ(full_min(c2), 4u);
  EXPECT_THROW(cdc::linkage(ScRepresentation(base4), q2, 10), cdc::CapExceeded);
}

TEST(ParallelLinkage, Q2K4D4Split44) {
  const ParallelLinkageParams p{2, 4, 4, 4, 4, 0, Orientation::Forward};
  const auto built = cdc::build_parallel_linkage(p);
  EXPECT_EQ(built.code.size(), 4622u);
  EXPECT_EQ(built.first_half, 4096u);
  EXPECT_EQ(built.code.ambient_dim(), 8u);
  EXPECT_EQ(full_min(built.code), 4u);
}

TEST(ParallelLinkage, GeneralizedWithZeroShiftEqualsPlain) {
  const Field f = Field::prime(2);
  const ParallelLinkageParams p{2, 4, 4, 4, 4, 0, Orientation::Forward};
  ScRepresentation u(cdc::lifted_mrd(f, 4, 4, 4)), v(cdc::lifted_mrd(f, 4, 4, 4));
  const auto q1 = cdc::mrd_code(f, 4, 4, 2);
  const auto q2 = cdc::restricted_subcode(f, 4, 4, 2, 2);
  const auto a = cdc::parallel_linkage(p, u, v, q1, q2);
  const auto b = cdc::generalized_parallel_linkage(p, u, v, q1, q2);
  EXPECT_TRUE(a.code.same_codewords(b.code));
  EXPECT_EQ(a.first_half, b.first_half);
}

TEST(ParallelLinkage, MirroredSwapsBlocks) {
  const ParallelLinkageParams fwd{2, 4, 4, 4, 4, 0, Orientation::Forward};
  ParallelLinkageParams mir = fwd;
  mir.orientation = Orientation::Mirrored;
  const auto a = cdc::build_parallel_linkage(fwd).code;
  const auto b = cdc::build_parallel_linkage(mir).code;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); i += 101) {
    const Matrix& g = a[i].generator();
    const Matrix swapped = cdc::hconcat(g.block(0, 4, 4, 4), g.block(0, 0, 4, 4));
    EXPECT_TRUE(b.contains(Subspace::from_matrix(swapped)));
  }
  EXPECT_EQ(cdc::verify_cdc(b, 4, cdc::VerifyOptions{cdc::SampledCheck{200000, 3}, 1, {}}).ok, true);
}

TEST(ParallelLinkage, ShiftedSizeAndSampledDistance) {
  const ParallelLinkageParams p{2, 4, 4, 4, 5, 1, Orientation::Forward};
  const auto built = cdc::build_parallel_linkage(p);
  // |Q_2(5,4,2)| + (1 + A_2(Q_2(5,4,2)))
  const auto expect = oracle::power(2, 15) + 1 + oracle::mrd_count(2, 5, 4, 2, 2);
  EXPECT_EQ(cdc::BigInt(built.code.size()), expect);
  EXPECT_EQ(built.code.size(), 33854u);
  const auto r = cdc::verify_cdc(built.code, 4, cdc::VerifyOptions{cdc::SampledCheck{300000, 1}, 1, {}});
  EXPECT_TRUE(r.ok);
  // every cross pair between the halves and inside the second half
  std::vector<Subspace> tail(built.code.words().begin() + 32000, built.code.words().end());
  EXPECT_TRUE(cdc::verify_cdc(tail, 4).ok);
}

TEST(ParallelLinkage, TernaryFullCheck) {
  const ParallelLinkageParams p{3, 2, 2, 2, 3, 1, Orientation::Forward};
  const auto built = cdc::build_parallel_linkage(p);
  EXPECT_GT(built.code.size(), built.first_half);
  EXPECT_GE(full_min(built.code), 2u);
}

TEST(ParallelLinkage, RejectsBadInputs) {
  const Field f = Field::prime(2);
  EXPECT_THROW(cdc::build_parallel_linkage({2, 4, 4, 4, 4, 1, Orientation::Forward}), cdc::ParameterError);
  EXPECT_THROW(cdc::build_parallel_linkage({2, 4, 3, 4, 4, 0, Orientation::Forward}), cdc::ParameterError);
  EXPECT_THROW(cdc::build_parallel_linkage({2, 2, 4, 4, 4, 0, Orientation::Forward}), cdc::ParameterError);
  EXPECT_THROW(cdc::build_parallel_linkage({2, 4, 4, 3, 4, 0, Orientation::Forward}), cdc::ParameterError);
  EXPECT_THROW(cdc::build_parallel_linkage({2, 4, 4, 4, 4, 0, Orientation::Forward}, cdc::kDefaultEnumerationCap, 1000),
               cdc::CapExceeded);

  const ParallelLinkageParams p{2, 4, 4, 4, 4, 0, Orientation::Forward};
  ScRepresentation u(cdc::lifted_mrd(f, 4, 4, 4)), v(cdc::lifted_mrd(f, 4, 4, 4));
  const auto q1 = cdc::mrd_code(f, 4, 4, 2);
  // a Q2 with a rank-3 word violates the rank restriction
  const auto too_big = cdc::restricted_subcode(f, 4, 4, 2, 3);
  EXPECT_THROW(cdc::parallel_linkage(p, u, v, q1, too_big), cdc::ParameterError);
  // a base code without the claimed distance
  ScRepresentation weak(cdc::lifted_mrd(f, 4, 2, 2));
  EXPECT_THROW(cdc::parallel_linkage(p, weak, v, q1, cdc::restricted_subcode(f, 4, 4, 2, 2)), cdc::ParameterError);
}

}  // namespace
