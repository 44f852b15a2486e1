#include "kf/bracket_generation.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace {

using kf::SquareMatrix;

SquareMatrix mat(int n, std::initializer_list<double> v) {
  SquareMatrix m(n, n);
  std::copy(v.begin(), v.end(), m.data());
  return m;
}

TEST(EigenFamily, TwoByTwo) {
  const auto f = kf::eigen_family(2);
  EXPECT_EQ(f.h, mat(2, {-1, 0, 0, 1}));
  ASSERT_EQ(f.x.size(), 1u);
  ASSERT_EQ(f.y.size(), 1u);
  EXPECT_EQ(f.x[0], mat(2, {0, 1, 1, 0}));
  EXPECT_EQ(f.y[0], mat(2, {0, 1, -1, 0}));
  EXPECT_TRUE(f.z.empty());
}

TEST(EigenFamily, ThreeByThree) {
  const auto f = kf::eigen_family(3);
  EXPECT_EQ(f.x[0], mat(3, {0, 1, 0, 1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(f.x[1], mat(3, {0, 0, 1, 0, 0, 0, 1, 0, 0}));
  EXPECT_EQ(f.x[2], mat(3, {0, 0, 0, 0, 0, 1, 0, 1, 0}));
  EXPECT_EQ(f.y[0], mat(3, {0, 1, 0, -1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(f.y[1], mat(3, {0, 0, 1, 0, 0, 0, -1, 0, 0}));
  EXPECT_EQ(f.y[2], mat(3, {0, 0, 0, 0, 0, 1, 0, -1, 0}));
  ASSERT_EQ(f.z.size(), 1u);
  EXPECT_EQ(f.z[0], mat(3, {-1, 0, 0, 0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(f.h, mat(3, {-1, 0, 0, 0, -1, 0, 0, 0, 2}));
}

TEST(EigenFamily, SymmetryClasses) {
  for (int n = 2; n <= 6; ++n) {
    const auto f = kf::eigen_family(n);
    EXPECT_EQ(static_cast<int>(f.x.size()), kf::num_pairs(n));
    EXPECT_EQ(static_cast<int>(f.y.size()), kf::num_pairs(n));
    EXPECT_EQ(static_cast<int>(f.z.size()), n - 2);
    for (const auto& x : f.x) EXPECT_EQ(SquareMatrix(x.transpose()), x);
    for (const auto& y : f.y) EXPECT_EQ(SquareMatrix(y.transpose()), SquareMatrix(-y));
    for (const auto& z : f.z) EXPECT_EQ(SquareMatrix(z.diagonal().asDiagonal()), z);
    EXPECT_EQ(SquareMatrix(f.h.diagonal().asDiagonal()), f.h);
  }
}

// Applies the Gram matrix computed from raw traces to coordinate vectors.
TEST(EigenFamily, ResidualsAgainstDirectGram) {
  for (int n = 2; n <= 6; ++n) {
    const auto b = kf::build_basis(n);
    const int d = n * n - 1;
    oracle::Mat gram(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) gram(i, j) = (b.matrices[i] * b.matrices[j]).trace();
    for (const auto& m : kf::eigen_members(kf::eigen_family(n))) {
      // Solve for coordinates in the basis by least squares, independent of basis_coordinates.
      oracle::Mat cols(n * n, d);
      for (int k = 0; k < d; ++k) cols.col(k) = oracle::flat(b.matrices[k]);
      const oracle::Vec v = cols.colPivHouseholderQr().solve(oracle::flat(m.matrix));
      EXPECT_LT((gram * v - m.eigenvalue * v).cwiseAbs().maxCoeff(), 1e-12)
          << "n=" << n << " " << m.label.str();
    }
  }
}

TEST(EigenFamily, FourHasExpectedSizes) {
  const auto f = kf::eigen_family(4);
  EXPECT_EQ(f.x.size(), 6u);
  EXPECT_EQ(f.y.size(), 6u);
  EXPECT_EQ(f.z.size(), 2u);
  EXPECT_EQ(kf::verify_spectrum(4).max_residual < 1e-12, true);
}

TEST(Spectrum, SmallCases) {
  const auto r2 = kf::verify_spectrum(2);
  EXPECT_EQ(r2.multiplicity_of(2), 1);
  EXPECT_EQ(r2.multiplicity_of(1), 1);
  EXPECT_EQ(r2.multiplicity_of(-1), 1);

  const auto r3 = kf::verify_spectrum(3);
  EXPECT_EQ(r3.multiplicity_of(3), 1);
  EXPECT_EQ(r3.multiplicity_of(1), 4);
  EXPECT_EQ(r3.multiplicity_of(-1), 3);

  const auto r6 = kf::verify_spectrum(6);
  EXPECT_EQ(r6.multiplicity_of(6), 1);
  EXPECT_EQ(r6.multiplicity_of(1), 19);
  EXPECT_EQ(r6.multiplicity_of(-1), 15);
  EXPECT_EQ(r6.multiplicities.size(), 3u);
}

// Multiplicity of lambda equals d - rank(Gr - lambda I), by elimination.
TEST(Spectrum, MultiplicitiesFromRankDeficiency) {
  for (int n = 2; n <= 6; ++n) {
    const SquareMatrix g = kf::gram_matrix(n);
    const int d = n * n - 1;
    const int pairs = n * (n - 1) / 2;
    auto nullity = [&](double lambda) {
      return d - oracle::matrix_rank(g - lambda * SquareMatrix::Identity(d, d), 1e-9);
    };
    EXPECT_EQ(nullity(n), 1);
    EXPECT_EQ(nullity(1), pairs + n - 2);
    EXPECT_EQ(nullity(-1), pairs);
    const auto rep = kf::verify_spectrum(n);
    EXPECT_EQ(rep.multiplicity_of(n), nullity(n));
    EXPECT_EQ(rep.multiplicity_of(1), nullity(1));
    EXPECT_EQ(rep.multiplicity_of(-1), nullity(-1));
    EXPECT_LT(rep.max_residual, 1e-12);
  }
}

TEST(Certificate, TwoEmpty) {
  const auto c = kf::bracket_generation_certificate(kf::DistributionSpec(2, {}));
  EXPECT_TRUE(c.generates);
  EXPECT_EQ(c.step, 1);
  EXPECT_EQ(c.rank_trace, (std::vector<int>{2, 3}));
}

TEST(Certificate, ThreeEmpty) {
  const auto c = kf::bracket_generation_certificate(kf::DistributionSpec(3, {}));
  EXPECT_TRUE(c.generates);
  EXPECT_EQ(c.rank_trace.front(), 6);
  EXPECT_EQ(c.rank_trace.back(), 8);
}

TEST(Certificate, FourWithOne) {
  const auto c = kf::bracket_generation_certificate(kf::DistributionSpec(4, {1}));
  EXPECT_TRUE(c.generates);
  EXPECT_EQ(c.rank_trace.back(), 15);
}

TEST(Certificate, AgreesWithBruteForceClosure) {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& spec : kf::all_specs(n)) {
      const auto gens = kf::generator_matrices(spec);
      const auto ranks = oracle::lie_closure_ranks({gens.begin(), gens.end()});
      const auto cert = kf::bracket_generation_certificate(spec);
      EXPECT_EQ(cert.rank_trace.front(), ranks.front()) << spec.str();
      EXPECT_EQ(cert.rank_trace.back(), ranks.back()) << spec.str();
      EXPECT_EQ(ranks.back(), n * n - 1) << spec.str();
    }
  }
}

TEST(Certificate, StepAtMostOneUpToFive) {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& spec : kf::all_specs(n)) {
      const auto c = kf::bracket_generation_certificate(spec);
      EXPECT_TRUE(c.generates) << spec.str();
      EXPECT_LE(c.step, 1) << spec.str();
    }
  }
}

// A proper subalgebra must be reported as non-generating.
TEST(SpanBasis, DetectsStagnation) {
  kf::SpanBasis span(2);
  EXPECT_TRUE(span.add(kf::unit_matrix(2, 1, 2)));
  EXPECT_FALSE(span.add(2.0 * kf::unit_matrix(2, 1, 2)));
  EXPECT_EQ(span.rank(), 1);
  EXPECT_NEAR(span.residual_norm(kf::unit_matrix(2, 2, 1)), 1.0, 1e-15);
  EXPECT_THROW(span.add(kf::zero_matrix(3)), std::invalid_argument);
}

TEST(BracketIdentities, XYCommutator) {
  for (int n = 2; n <= 5; ++n) {
    const auto f = kf::eigen_family(n);
    for (int r = 1; r <= kf::num_pairs(n); ++r) {
      const auto [p, q] = kf::index_pair(n, r);
      const SquareMatrix expected = 2.0 * (kf::unit_matrix(n, q, q) - kf::unit_matrix(n, p, p));
      EXPECT_EQ(kf::bracket(f.x[r - 1], f.y[r - 1]), expected) << "n=" << n << " r=" << r;
    }
  }
}

TEST(BracketIdentities, PairsWithLastIndexSumToTwoH) {
  for (int n = 2; n <= 6; ++n) {
    const auto f = kf::eigen_family(n);
    SquareMatrix sum = kf::zero_matrix(n);
    for (int i = 1; i <= n - 1; ++i) {
      const int r = kf::pair_index(n, i, n);
      sum += kf::bracket(f.x[r - 1], f.y[r - 1]);
    }
    EXPECT_EQ(sum, SquareMatrix(2.0 * f.h)) << "n=" << n;
  }
}

}  // namespace
