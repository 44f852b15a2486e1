#ifndef KF_DISTRIBUTION_HPP
#define KF_DISTRIBUTION_HPP

#include "kf/eigen_structure.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace kf {

// Selects D_I = span{X_1.., Y_1.., Z_l : l in I} with I a subset of {1..n-2}.
class DistributionSpec {
 public:
  DistributionSpec() = default;

  DistributionSpec(int n, std::vector<int> subset) : n_(n) {
    require(n >= 2, "DistributionSpec: n must be >= 2");
    std::sort(subset.begin(), subset.end());
    for (std::size_t k = 0; k < subset.size(); ++k) {
      const int l = subset[k];
      require(l >= 1 && l <= n - 2,
              "DistributionSpec: member " + std::to_string(l) +
                  " outside {1,...," + std::to_string(n - 2) + "}");
      require(k == 0 || subset[k - 1] != l,
              "DistributionSpec: duplicate member " + std::to_string(l));
    }
    subset_ = std::move(subset);
  }

  static DistributionSpec full(int n) {
    std::vector<int> all;
    for (int l = 1; l <= n - 2; ++l) all.push_back(l);
    return {n, all};
  }

  int n() const { return n_; }
  const std::vector<int>& subset() const { return subset_; }
  int subset_size() const { return static_cast<int>(subset_.size()); }
  bool empty() const { return subset_.empty(); }
  bool contains(int l) const {
    return std::binary_search(subset_.begin(), subset_.end(), l);
  }

  int dim() const { return n_ * n_ - n_ + subset_size(); }
  int corank() const { return n_ - 1 - subset_size(); }
  int index() const { return num_pairs(n_); }

  std::string str() const {
    std::string s = "n=" + std::to_string(n_) + " I={";
    for (std::size_t k = 0; k < subset_.size(); ++k)
      s += (k ? "," : "") + std::to_string(subset_[k]);
    return s + "}";
  }

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

 private:
  int n_ = 2;
  std::vector<int> subset_;
};

// Every subset of {1..n-2}, in binary-counting order.
inline std::vector<DistributionSpec> all_specs(int n) {
  std::vector<DistributionSpec> out;
  const int m = std::max(n - 2, 0);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> s;
    for (int l = 1; l <= m; ++l)
      if (mask & (1u << (l - 1))) s.push_back(l);
    out.emplace_back(n, s);
  }
  return out;
}

struct LabeledMatrix {
  BasisLabel label;
  SquareMatrix matrix;
};

// C_I in the order X-block, Y-block, then Z_l for l in I ascending.
inline std::vector<LabeledMatrix> generating_set(const DistributionSpec& spec) {
  const EigenFamily f = eigen_family(spec.n());
  std::vector<LabeledMatrix> out;
  out.reserve(spec.dim());
  for (std::size_t r = 0; r < f.x.size(); ++r)
    out.push_back({BasisLabel::x(static_cast<int>(r) + 1), f.x[r]});
  for (std::size_t r = 0; r < f.y.size(); ++r)
    out.push_back({BasisLabel::y(static_cast<int>(r) + 1), f.y[r]});
  for (int l : spec.subset()) out.push_back({BasisLabel::z(l), f.z[l - 1]});
  return out;
}

inline std::vector<SquareMatrix> generator_matrices(const DistributionSpec& spec) {
  std::vector<SquareMatrix> out;
  for (auto& lm : generating_set(spec)) out.push_back(std::move(lm.matrix));
  return out;
}

struct RestrictedMetric {
  int dim = 0;
  SquareMatrix g;
  SquareMatrix g_inv;
  int index = 0;
  int corank = 0;
};

// block diag(2 Id, -2 Id, P_#I)
inline SquareMatrix restricted_metric_closed_form(const DistributionSpec& spec) {
  const int pairs = num_pairs(spec.n());
  const int m = spec.subset_size();
  SquareMatrix g = zero_matrix(spec.dim());
  g.block(0, 0, pairs, pairs).diagonal().setConstant(2.0);
  g.block(pairs, pairs, pairs, pairs).diagonal().setConstant(-2.0);
  if (m > 0) g.block(2 * pairs, 2 * pairs, m, m) = p_matrix(m);
  return g;
}

inline SquareMatrix restricted_metric_inverse(const DistributionSpec& spec) {
  const int pairs = num_pairs(spec.n());
  const int m = spec.subset_size();
  SquareMatrix gi = zero_matrix(spec.dim());
  gi.block(0, 0, pairs, pairs).diagonal().setConstant(0.5);
  gi.block(pairs, pairs, pairs, pairs).diagonal().setConstant(-0.5);
  if (m > 0) gi.block(2 * pairs, 2 * pairs, m, m) = p_matrix_inverse(m);
  return gi;
}

// The block form is cross-checked against pairwise trace_form over C_I; both
// are integer-valued so the comparison is exact.
inline RestrictedMetric restricted_metric(const DistributionSpec& spec) {
  RestrictedMetric rm;
  rm.dim = spec.dim();
  rm.g = restricted_metric_closed_form(spec);
  const SquareMatrix direct = gram_of(generator_matrices(spec));
  if (direct != rm.g) {
    throw consistency_error("restricted_metric: block form disagrees with "
                            "pairwise trace form for " + spec.str());
  }
  rm.g_inv = restricted_metric_inverse(spec);
  rm.index = spec.index();
  rm.corank = spec.corank();
  return rm;
}

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

inline Signature signature(const SquareMatrix& sym, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numeric_error("signature: eigensolver failed");
  Signature s;
  for (double v : solver.eigenvalues()) {
    if (v > tol) ++s.positive;
    else if (v < -tol) ++s.negative;
    else ++s.zero;
  }
  return s;
}

}  // namespace kf

#endif  // KF_DISTRIBUTION_HPP
