#ifndef KF_EIGEN_STRUCTURE_HPP
#define KF_EIGEN_STRUCTURE_HPP

#include "kf/lie_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <vector>

namespace kf {

// Eigenvectors of the Gram matrix, written as matrices:
//   X_r = e_r^1 + e_r^2  (eigenvalue 1, symmetric)
//   Y_r = e_r^1 - e_r^2  (eigenvalue -1, antisymmetric)
//   Z_l = e_l - e_{n-1}  (eigenvalue 1, diagonal, l = 1..n-2)
//   H   = e_1 + ... + e_{n-1}  (eigenvalue n, diagonal)
struct EigenFamily {
  int n = 0;
  SquareMatrix h;
  std::vector<SquareMatrix> x;
  std::vector<SquareMatrix> y;
  std::vector<SquareMatrix> z;
};

inline EigenFamily eigen_family(int n) {
  const OrderedBasis b = build_basis(n);
  const int pairs = num_pairs(n);
  const auto& e = b.matrices;
  const auto diag = [&](int l) -> const SquareMatrix& { return e[2 * pairs + l - 1]; };

  EigenFamily f;
  f.n = n;
  f.x.reserve(pairs);
  f.y.reserve(pairs);
  for (int r = 0; r < pairs; ++r) {
    f.x.push_back(e[2 * r] + e[2 * r + 1]);
    f.y.push_back(e[2 * r] - e[2 * r + 1]);
  }
  for (int l = 1; l <= n - 2; ++l) f.z.push_back(diag(l) - diag(n - 1));
  f.h = zero_matrix(n);
  for (int l = 1; l <= n - 1; ++l) f.h += diag(l);
  return f;
}

struct EigenMember {
  BasisLabel label;
  SquareMatrix matrix;
  double eigenvalue = 0.0;
};

// Every family member with the eigenvalue it is claimed to carry.
inline std::vector<EigenMember> eigen_members(const EigenFamily& f) {
  std::vector<EigenMember> out;
  const double n = f.n;
  for (std::size_t r = 0; r < f.x.size(); ++r)
    out.push_back({BasisLabel::x(static_cast<int>(r) + 1), f.x[r], 1.0});
  for (std::size_t r = 0; r < f.y.size(); ++r)
    out.push_back({BasisLabel::y(static_cast<int>(r) + 1), f.y[r], -1.0});
  for (std::size_t l = 0; l < f.z.size(); ++l)
    out.push_back({BasisLabel::z(static_cast<int>(l) + 1), f.z[l], 1.0});
  out.push_back({BasisLabel::h(), f.h, n});
  return out;
}

struct EigenCluster {
  double value = 0.0;
  int multiplicity = 0;
};

struct SpectrumReport {
  int n = 0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<EigenCluster> multiplicities;  // ascending by value
  double max_residual = 0.0;  // max_v ||Gr v - lambda v||_inf over the family

  int multiplicity_of(double value, double tol = 1e-8) const {
    for (const auto& c : multiplicities)
      if (std::abs(c.value - value) <= tol) return c.multiplicity;
    return 0;
  }
};

inline double eigen_residual(const SquareMatrix& gram, const EigenMember& m) {
  const Vector v = basis_coordinates(m.matrix);
  return (gram * v - m.eigenvalue * v).cwiseAbs().maxCoeff();
}

// Diagonalizes the Gram matrix numerically and groups its eigenvalues.
inline SpectrumReport verify_spectrum(int n, double cluster_tol = 1e-8) {
  const SquareMatrix gram = gram_matrix(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("verify_spectrum: eigensolver failed for n=" +
                        std::to_string(n) + " (Gram matrix " +
                        std::to_string(gram.rows()) + "x" +
                        std::to_string(gram.cols()) + ")");
  }
  SpectrumReport rep;
  rep.n = n;
  const Vector& ev = solver.eigenvalues();
  rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());

  for (double v : rep.eigenvalues) {
    if (!rep.multiplicities.empty() &&
        std::abs(v - rep.multiplicities.back().value) <= cluster_tol) {
      auto& c = rep.multiplicities.back();
      c.value = (c.value * c.multiplicity + v) / (c.multiplicity + 1);
      ++c.multiplicity;
    } else {
      rep.multiplicities.push_back({v, 1});
    }
  }

  for (const auto& m : eigen_members(eigen_family(n)))
    rep.max_residual = std::max(rep.max_residual, eigen_residual(gram, m));
  return rep;
}

}  // namespace kf

#endif  // KF_EIGEN_STRUCTURE_HPP
