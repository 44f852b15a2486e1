#ifndef KF_SPAN_HPP
#define KF_SPAN_HPP

#include "kf/matrix.hpp"

#include <vector>

namespace kf {

// Incrementally grown orthonormal basis of a subspace of R^(n*n), matrices
// flattened row-major. A candidate joins the basis when the norm of its
// component orthogonal to the current span exceeds `threshold`.
class SpanBasis {
 public:
  explicit SpanBasis(int n, double threshold = 1e-10)
      : n_(n), threshold_(threshold) {}

  int n() const { return n_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vector>& vectors() const { return basis_; }

  SquareMatrix matrix(int k) const { return unflatten(basis_.at(k), n_); }

  // Component of v orthogonal to the span (two Gram-Schmidt passes).
  Vector orthogonal_part(const Vector& v) const {
    Vector r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis_) r -= b.dot(r) * b;
    }
    return r;
  }

  double residual_norm(const SquareMatrix& m) const {
    require(m.rows() == n_ && m.cols() == n_, "SpanBasis: dimension mismatch");
    return orthogonal_part(flatten(m)).norm();
  }

  // Returns true if m enlarged the span.
  bool add(const SquareMatrix& m) {
    require(m.rows() == n_ && m.cols() == n_, "SpanBasis: dimension mismatch");
    Vector r = orthogonal_part(flatten(m));
    const double norm = r.norm();
    if (norm <= threshold_) return false;
    basis_.push_back(r / norm);
    return true;
  }

 private:
  int n_;
  double threshold_;
  std::vector<Vector> basis_;
};

}  // namespace kf

#endif  // KF_SPAN_HPP
