#include "kf/distribution.hpp"

#include <gtest/gtest.h>

namespace {

using kf::DistributionSpec;
using kf::SquareMatrix;

TEST(DistributionSpec, SortsAndValidates) {
  const DistributionSpec s(5, {3, 1});
  EXPECT_EQ(s.subset(), (std::vector<int>{1, 3}));
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.str(), "n=5 I={1,3}");
  EXPECT_EQ(s.dim(), 22);
  EXPECT_EQ(s.corank(), 2);
}

TEST(DistributionSpec, Rejections) {
  EXPECT_THROW(DistributionSpec(1, {}), std::invalid_argument);
  EXPECT_THROW(DistributionSpec(4, {0}), std::invalid_argument);
  EXPECT_THROW(DistributionSpec(4, {3}), std::invalid_argument);
  EXPECT_THROW(DistributionSpec(5, {2, 2}), std::invalid_argument);
  EXPECT_THROW(DistributionSpec(2, {1}), std::invalid_argument);
}

TEST(DistributionSpec, AllSpecsEnumeratesPowerSet) {
  EXPECT_EQ(kf::all_specs(2).size(), 1u);
  EXPECT_EQ(kf::all_specs(5).size(), 8u);
  for (int n = 2; n <= 6; ++n)
    for (const auto& s : kf::all_specs(n)) EXPECT_EQ(s.dim() + s.corank(), n * n - 1);
}

TEST(GeneratingSet, Examples) {
  const auto g2 = kf::generating_set(DistributionSpec(2, {}));
  ASSERT_EQ(g2.size(), 2u);
  EXPECT_EQ(g2[0].label, kf::BasisLabel::x(1));
  EXPECT_EQ(g2[1].label, kf::BasisLabel::y(1));

  const auto g3 = kf::generating_set(DistributionSpec(3, {1}));
  const std::vector<kf::BasisLabel> expected = {
      kf::BasisLabel::x(1), kf::BasisLabel::x(2), kf::BasisLabel::x(3), kf::BasisLabel::y(1),
      kf::BasisLabel::y(2), kf::BasisLabel::y(3), kf::BasisLabel::z(1)};
  ASSERT_EQ(g3.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(g3[k].label, expected[k]);

  EXPECT_EQ(kf::generating_set(DistributionSpec(4, {1, 2})).size(), 14u);
}

TEST(GeneratingSet, CrossBlocksAreOrthogonal) {
  for (int n = 2; n <= 6; ++n) {
    const auto f = kf::eigen_family(n);
    for (const auto& x : f.x) {
      for (const auto& y : f.y) EXPECT_EQ(kf::trace_form(x, y), 0.0);
      for (const auto& z : f.z) EXPECT_EQ(kf::trace_form(x, z), 0.0);
    }
    for (const auto& y : f.y)
      for (const auto& z : f.z) EXPECT_EQ(kf::trace_form(y, z), 0.0);
  }
}

TEST(RestrictedMetric, TwoEmpty) {
  const auto rm = kf::restricted_metric(DistributionSpec(2, {}));
  SquareMatrix g(2, 2);
  g << 2, 0, 0, -2;
  EXPECT_EQ(rm.g, g);
  EXPECT_EQ(rm.index, 1);
  EXPECT_EQ(rm.corank, 1);
}

TEST(RestrictedMetric, ThreeWithOne) {
  const auto rm = kf::restricted_metric(DistributionSpec(3, {1}));
  SquareMatrix g = kf::zero_matrix(7);
  g.diagonal() << 2, 2, 2, -2, -2, -2, 2;
  EXPECT_EQ(rm.g, g);
  EXPECT_EQ(rm.index, 3);
  EXPECT_EQ(rm.corank, 1);
}

TEST(RestrictedMetric, FourWithBoth) {
  const auto spec = DistributionSpec(4, {1, 2});
  const auto rm = kf::restricted_metric(spec);
  SquareMatrix corner(2, 2);
  corner << 2, 1, 1, 2;
  EXPECT_EQ(SquareMatrix(rm.g.bottomRightCorner(2, 2)), corner);
  EXPECT_EQ(rm.index, 6);
  EXPECT_EQ(rm.corank, 1);

  // Pairwise traces evaluated independently of gram_of.
  const auto gens = kf::generator_matrices(spec);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      EXPECT_EQ(rm.g(i, j), (gens[i] * gens[j]).trace());
}

TEST(RestrictedMetric, InverseAndSignature) {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& spec : kf::all_specs(n)) {
      const auto rm = kf::restricted_metric(spec);
      EXPECT_EQ(rm.dim, n * n - n + spec.subset_size());
      EXPECT_LT(kf::max_abs_diff(rm.g * rm.g_inv, kf::identity_matrix(rm.dim)), 1e-13);
      const auto sig = kf::signature(rm.g);
      EXPECT_EQ(sig.negative, n * (n - 1) / 2) << spec.str();
      EXPECT_EQ(sig.zero, 0);
      EXPECT_EQ(rm.corank, n - 1 - spec.subset_size());
      EXPECT_EQ(rm.dim + rm.corank, n * n - 1);
    }
  }
}

TEST(Signature, CountsZeroAndSigns) {
  SquareMatrix m = kf::zero_matrix(3);
  m.diagonal() << 1, 0, -4;
  const auto s = kf::signature(m);
  EXPECT_EQ(s.positive, 1);
  EXPECT_EQ(s.zero, 1);
  EXPECT_EQ(s.negative, 1);
}

}  // namespace
