#ifndef KF_MATRIX_HPP
#define KF_MATRIX_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kf {

// Dense real square matrix, row-major. Group elements, algebra elements,
// covectors and Gram matrices all live here.
using SquareMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Raised when a numeric routine cannot produce a trustworthy answer.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when two independent constructions of the same object disagree.
class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

inline bool is_square(const SquareMatrix& m) {
  return m.rows() == m.cols() && m.rows() > 0;
}

inline bool all_finite(const SquareMatrix& m) { return m.allFinite(); }

inline void require_same_dim(const SquareMatrix& a, const SquareMatrix& b,
                             const char* who) {
  if (!is_square(a) || !is_square(b) || a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
}

inline SquareMatrix zero_matrix(int n) { return SquareMatrix::Zero(n, n); }
inline SquareMatrix identity_matrix(int n) {
  return SquareMatrix::Identity(n, n);
}

// Row-major flattening into a vector of length dim².
inline Vector flatten(const SquareMatrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline SquareMatrix unflatten(const Vector& v, int n) {
  require(v.size() == static_cast<Eigen::Index>(n) * n,
          "unflatten: length is not n^2");
  return Eigen::Map<const SquareMatrix>(v.data(), n, n);
}

inline double max_abs(const SquareMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  return max_abs(a - b);
}

// |x - y| relative to the larger magnitude, floored at unit scale.
inline double rel_diff(double x, double y) {
  return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1.0});
}

}  // namespace kf

#endif  // KF_MATRIX_HPP
