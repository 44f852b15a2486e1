// Independent reference computations for the test suites. Nothing here calls
// into the code paths it is used to check.
#ifndef KF_TESTS_ORACLES_HPP
#define KF_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

// Pairs (p,q), 1 <= p < q <= n, by nested loops.
inline std::vector<std::pair<int, int>> enumerate_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q) out.emplace_back(p, q);
  return out;
}

inline Mat unit(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i - 1, j - 1) = 1.0;
  return m;
}

// Four-case commutator formula for elementary matrices.
inline Mat elementary_commutator(int n, int i, int j, int k, int l) {
  if (i != l && j == k) return unit(n, i, l);
  if (i == l && j != k) return -unit(n, k, j);
  if (i == l && j == k) return unit(n, i, i) - unit(n, j, j);
  return Mat::Zero(n, n);
}

inline Vec flat(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

// Rank by Gaussian elimination with partial pivoting; pivots below `tol`
// count as zero.
inline int gaussian_rank(std::vector<Vec> rows, double tol = 1e-10) {
  if (rows.empty()) return 0;
  const auto cols = rows.front().size();
  int rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = rank;
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r)
      if (std::abs(rows[r](c)) > std::abs(rows[piv](c))) piv = r;
    if (std::abs(rows[piv](c)) <= tol) continue;
    std::swap(rows[piv], rows[rank]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      const double f = rows[r](c) / rows[rank](c);
      if (f != 0.0) rows[r] -= f * rows[rank];
    }
    ++rank;
  }
  return rank;
}

inline int matrix_rank(const Mat& m, double tol = 1e-10) {
  std::vector<Vec> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(m.row(i).transpose());
  return gaussian_rank(rows, tol);
}

inline int span_rank(const std::vector<Mat>& ms, double tol = 1e-10) {
  std::vector<Vec> rows;
  for (const auto& m : ms) rows.push_back(flat(m));
  return gaussian_rank(rows, tol);
}

// Brute-force Lie closure: bracket every pair of the current list, keep the
// brackets that raise the rank, repeat until nothing new appears. Returns the
// rank after each round.
inline std::vector<int> lie_closure_ranks(std::vector<Mat> list) {
  std::vector<int> ranks{span_rank(list)};
  for (;;) {
    const auto snapshot = list;
    for (const auto& a : snapshot) {
      for (const auto& b : snapshot) {
        Mat c = a * b - b * a;
        auto trial = list;
        trial.push_back(c);
        if (span_rank(trial) > span_rank(list)) list.push_back(std::move(c));
      }
    }
    const int r = span_rank(list);
    if (r == ranks.back()) return ranks;
    ranks.push_back(r);
  }
}

// Central differences of a scalar function of a matrix argument.
inline Mat central_difference(const std::function<double(const Mat&)>& f, const Mat& x,
                              double h = 1e-6) {
  Mat g(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      Mat xp = x, xm = x;
      xp(i, j) += h;
      xm(i, j) -= h;
      g(i, j) = (f(xp) - f(xm)) / (2 * h);
    }
  }
  return g;
}

// Metric Hamiltonian written straight from its definition: frame fields
// V_k(A) = A v_k, momenta P_k = <lambda, A v_k>, H = 1/2 sum g^{kl} P_k P_l
// with g_{kl} = tr(v_k v_l) inverted numerically.
inline double hamiltonian_by_definition(const std::vector<Mat>& frame, const Mat& a,
                                        const Mat& lambda) {
  const auto d = static_cast<Eigen::Index>(frame.size());
  Mat g(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) g(k, l) = (frame[k] * frame[l]).trace();
  const Mat ginv = g.inverse();
  Vec p(d);
  for (Eigen::Index k = 0; k < d; ++k) p(k) = lambda.cwiseProduct(a * frame[k]).sum();
  return 0.5 * p.dot(ginv * p);
}

// Classical RK4 on a state-matrix pair, for cross-checking the integrator.
template <class Field>
std::pair<Mat, Mat> rk4_step(const Field& f, const Mat& a, const Mat& l, double h) {
  const auto [ka1, kl1] = f(a, l);
  const auto [ka2, kl2] = f(a + 0.5 * h * ka1, l + 0.5 * h * kl1);
  const auto [ka3, kl3] = f(a + 0.5 * h * ka2, l + 0.5 * h * kl2);
  const auto [ka4, kl4] = f(a + h * ka3, l + h * kl3);
  return {a + h / 6 * (ka1 + 2 * ka2 + 2 * ka3 + ka4), l + h / 6 * (kl1 + 2 * kl2 + 2 * kl3 + kl4)};
}

}  // namespace oracle

#endif  // KF_TESTS_ORACLES_HPP
