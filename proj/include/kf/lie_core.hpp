#ifndef KF_LIE_CORE_HPP
#define KF_LIE_CORE_HPP

#include "kf/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kf {

// Symbolic name of a basis element of sl(n,R) or of a Gram eigenvector.
// Indices are 1-based, matching the mathematical numbering.
struct BasisLabel {
  enum class Kind { off_diag, diag, x, y, z, h };

  Kind kind = Kind::diag;
  int index = 1;  // r for off_diag/x/y, l for diag/z, unused for h
  int part = 0;   // 1 or 2 for off_diag, 0 otherwise

  static BasisLabel off_diag(int r, int part) {
    return {Kind::off_diag, r, part};
  }
  static BasisLabel diag(int l) { return {Kind::diag, l, 0}; }
  static BasisLabel x(int r) { return {Kind::x, r, 0}; }
  static BasisLabel y(int r) { return {Kind::y, r, 0}; }
  static BasisLabel z(int l) { return {Kind::z, l, 0}; }
  static BasisLabel h() { return {Kind::h, 0, 0}; }

  std::string str() const {
    switch (kind) {
      case Kind::off_diag:
        return "e_" + std::to_string(index) + "^" + std::to_string(part);
      case Kind::diag:
        return "e_" + std::to_string(index);
      case Kind::x:
        return "X_" + std::to_string(index);
      case Kind::y:
        return "Y_" + std::to_string(index);
      case Kind::z:
        return "Z_" + std::to_string(index);
      case Kind::h:
        return "H";
    }
    return "?";
  }

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

inline int num_pairs(int n) { return n * (n - 1) / 2; }
inline int algebra_dim(int n) { return n * n - 1; }

// E_{i,j}: a single 1 at row i, column j (1-based).
inline SquareMatrix unit_matrix(int n, int i, int j) {
  require(n >= 1, "unit_matrix: n must be positive");
  require(i >= 1 && i <= n && j >= 1 && j <= n,
          "unit_matrix: index (" + std::to_string(i) + "," +
              std::to_string(j) + ") out of range for n=" + std::to_string(n));
  SquareMatrix m = zero_matrix(n);
  m(i - 1, j - 1) = 1.0;
  return m;
}

// Row-by-row enumeration of pairs 1 <= p < q <= n:
// (1,2),(1,3),...,(1,n),(2,3),...,(n-1,n).
inline int pair_index(int n, int p, int q) {
  require(1 <= p && p < q && q <= n,
          "pair_index: need 1 <= p < q <= n, got p=" + std::to_string(p) +
              " q=" + std::to_string(q) + " n=" + std::to_string(n));
  return (p - 1) * n - p * (p - 1) / 2 + (q - p);
}

inline std::pair<int, int> index_pair(int n, int r) {
  require(n >= 2 && r >= 1 && r <= num_pairs(n),
          "index_pair: r=" + std::to_string(r) + " out of range for n=" +
              std::to_string(n));
  int p = 1;
  int first = 1;  // pair index of (p, p+1)
  while (first + (n - p) <= r) {
    first += n - p;
    ++p;
  }
  return {p, p + 1 + (r - first)};
}

struct OrderedBasis {
  int n = 0;
  std::vector<BasisLabel> labels;
  std::vector<SquareMatrix> matrices;

  std::size_t size() const { return matrices.size(); }
};

// e_r^1 = E_{p,q}, e_r^2 = E_{q,p} for r ascending, then e_l = E_{n,n} - E_{l,l}.
inline OrderedBasis build_basis(int n) {
  require(n >= 2, "build_basis: n must be >= 2");
  OrderedBasis b;
  b.n = n;
  b.labels.reserve(algebra_dim(n));
  b.matrices.reserve(algebra_dim(n));
  for (int r = 1; r <= num_pairs(n); ++r) {
    const auto [p, q] = index_pair(n, r);
    b.labels.push_back(BasisLabel::off_diag(r, 1));
    b.matrices.push_back(unit_matrix(n, p, q));
    b.labels.push_back(BasisLabel::off_diag(r, 2));
    b.matrices.push_back(unit_matrix(n, q, p));
  }
  for (int l = 1; l <= n - 1; ++l) {
    b.labels.push_back(BasisLabel::diag(l));
    b.matrices.push_back(unit_matrix(n, n, n) - unit_matrix(n, l, l));
  }
  return b;
}

// Coordinates of a traceless matrix in the ordered basis above. Each
// off-diagonal entry is one coordinate; since every e_l has -1 at (l,l) and
// +1 at (n,n), the diagonal coordinates are -A_{l,l}.
inline Vector basis_coordinates(const SquareMatrix& a) {
  require(is_square(a) && a.rows() >= 2, "basis_coordinates: need n >= 2");
  const int n = static_cast<int>(a.rows());
  Vector c(algebra_dim(n));
  for (int r = 1; r <= num_pairs(n); ++r) {
    const auto [p, q] = index_pair(n, r);
    c(2 * (r - 1)) = a(p - 1, q - 1);
    c(2 * (r - 1) + 1) = a(q - 1, p - 1);
  }
  for (int l = 1; l <= n - 1; ++l) c(2 * num_pairs(n) + l - 1) = -a(l - 1, l - 1);
  return c;
}

inline SquareMatrix bracket(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a, b, "bracket");
  return a * b - b * a;
}

// B(X,Y) = tr(XY); the Killing form of sl(n,R) is 2n times this.
inline double trace_form(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a, b, "trace_form");
  // tr(AB) = sum_ij A_ij B_ji
  return a.cwiseProduct(b.transpose()).sum();
}

inline double killing_form(const SquareMatrix& a, const SquareMatrix& b) {
  return 2.0 * static_cast<double>(a.rows()) * trace_form(a, b);
}

// Gram matrix of pairwise form values over an arbitrary ordered list.
inline SquareMatrix gram_of(const std::vector<SquareMatrix>& elems) {
  const auto d = static_cast<Eigen::Index>(elems.size());
  SquareMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      g(i, j) = g(j, i) = trace_form(elems[i], elems[j]);
    }
  }
  return g;
}

inline SquareMatrix gram_matrix(int n) { return gram_of(build_basis(n).matrices); }

// P_m: 2 on the diagonal, 1 elsewhere.
inline SquareMatrix p_matrix(int m) {
  require(m >= 1, "p_matrix: m must be >= 1");
  SquareMatrix p = SquareMatrix::Ones(m, m);
  p.diagonal().array() += 1.0;
  return p;
}

// Closed-form inverse: m/(m+1) on the diagonal, -1/(m+1) elsewhere.
inline double p_inverse_entry(int m, bool diagonal) {
  return diagonal ? static_cast<double>(m) / (m + 1) : -1.0 / (m + 1);
}

inline SquareMatrix p_matrix_inverse(int m) {
  require(m >= 1, "p_matrix_inverse: m must be >= 1");
  SquareMatrix p = SquareMatrix::Constant(m, m, p_inverse_entry(m, false));
  p.diagonal().setConstant(p_inverse_entry(m, true));
  return p;
}

}  // namespace kf

#endif  // KF_LIE_CORE_HPP
