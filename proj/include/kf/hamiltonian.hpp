#ifndef KF_HAMILTONIAN_HPP
#define KF_HAMILTONIAN_HPP

#include "kf/distribution.hpp"
#include "kf/random.hpp"

#include <cmath>
#include <vector>

namespace kf {

// Phase-space point in the Euclidean coordinates of R^{n x n}: the group
// element a and the covector lambda, with lambda_{i,j} dual to d/da_{i,j}.
struct CotangentPoint {
  SquareMatrix a;
  SquareMatrix lambda;

  int n() const { return static_cast<int>(a.rows()); }

  void validate() const {
    require(is_square(a) && is_square(lambda) && a.rows() == lambda.rows(),
            "CotangentPoint: a and lambda must be square of equal dimension");
  }

  bool on_group(double tol) const { return std::abs(a.determinant() - 1.0) < tol; }
};

struct PhaseGradient {
  SquareMatrix d_a;       // dH/da_{s,t}
  SquareMatrix d_lambda;  // dH/dlambda_{s,t}

  PhaseGradient& operator+=(const PhaseGradient& o) {
    d_a += o.d_a;
    d_lambda += o.d_lambda;
    return *this;
  }
};

namespace detail {

inline void check_point(const DistributionSpec& spec, const CotangentPoint& pt,
                        const char* who) {
  pt.validate();
  require(pt.n() == spec.n(), std::string(who) + ": point dimension " +
                                  std::to_string(pt.n()) + " != spec n " +
                                  std::to_string(spec.n()));
}

// sum_i a_{i,p} lambda_{i,q}, 1-based p, q
inline double column_pairing(const CotangentPoint& pt, int p, int q) {
  return pt.a.col(p - 1).dot(pt.lambda.col(q - 1));
}

// sum_i (a_{i,l} lambda_{i,l} - a_{i,n-1} lambda_{i,n-1}) for each l in I
inline std::vector<double> z_momenta(const DistributionSpec& spec,
                                     const CotangentPoint& pt) {
  const int n = spec.n();
  std::vector<double> out;
  out.reserve(spec.subset().size());
  for (int l : spec.subset())
    out.push_back(column_pairing(pt, l, l) - column_pairing(pt, n - 1, n - 1));
  return out;
}

}  // namespace detail

// Momentum functions of the left-invariant fields A X_{p,q}, A Y_{p,q}, A Z_l.
inline double momentum_x(int p, int q, const CotangentPoint& pt) {
  pt.validate();
  require(1 <= p && p < q && q <= pt.n(), "momentum_x: need 1 <= p < q <= n");
  return detail::column_pairing(pt, q, p) + detail::column_pairing(pt, p, q);
}

inline double momentum_y(int p, int q, const CotangentPoint& pt) {
  pt.validate();
  require(1 <= p && p < q && q <= pt.n(), "momentum_y: need 1 <= p < q <= n");
  return detail::column_pairing(pt, q, p) - detail::column_pairing(pt, p, q);
}

inline double momentum_z(int l, const CotangentPoint& pt) {
  pt.validate();
  const int n = pt.n();
  require(1 <= l && l <= n - 2, "momentum_z: need 1 <= l <= n-2");
  return detail::column_pairing(pt, l, l) - detail::column_pairing(pt, n - 1, n - 1);
}

// Metric quadratic Hamiltonian assembled from momenta with the inverse
// restricted metric: 1/4 sum_r (P_X^2 - P_Y^2) + 1/2 sum p^{k,l} P_Zk P_Zl.
inline double hamiltonian_from_momenta(const DistributionSpec& spec,
                                       const CotangentPoint& pt) {
  detail::check_point(spec, pt, "hamiltonian_from_momenta");
  const int n = spec.n();
  double xy = 0.0;
  for (int r = 1; r <= num_pairs(n); ++r) {
    const auto [p, q] = index_pair(n, r);
    const double px = momentum_x(p, q, pt);
    const double py = momentum_y(p, q, pt);
    xy += px * px - py * py;
  }
  double zz = 0.0;
  const int m = spec.subset_size();
  for (int k : spec.subset())
    for (int l : spec.subset())
      zz += p_inverse_entry(m, k == l) * momentum_z(k, pt) * momentum_z(l, pt);
  return 0.25 * xy + 0.5 * zz;
}

// Z-only quadratic form in explicit coordinates.
inline double z_hamiltonian_coordinates(const DistributionSpec& spec,
                                        const CotangentPoint& pt) {
  const int n = spec.n();
  const int m = spec.subset_size();
  const auto& a = pt.a;
  const auto& lam = pt.lambda;
  const int c = n - 2;  // zero-based column n-1
  double z = 0.0;
  for (int k : spec.subset()) {
    for (int l : spec.subset()) {
      const double pkl = p_inverse_entry(m, k == l);
      for (int i = 0; i < n; ++i) {
        const double fi = a(i, k - 1) * lam(i, k - 1) - a(i, c) * lam(i, c);
        for (int j = 0; j < n; ++j) {
          z += pkl * fi * (a(j, l - 1) * lam(j, l - 1) - a(j, c) * lam(j, c));
        }
      }
    }
  }
  return 0.5 * z;
}

// Explicit coordinate form:
//   1/2 sum_{p != q} sum_{i,j} a_{i,p} a_{j,q} lambda_{j,p} lambda_{i,q}  + Z part.
inline double hamiltonian_coordinates(const DistributionSpec& spec,
                                      const CotangentPoint& pt) {
  detail::check_point(spec, pt, "hamiltonian_coordinates");
  const int n = spec.n();
  const auto& a = pt.a;
  const auto& lam = pt.lambda;
  double s = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += a(i, p) * a(j, q) * lam(j, p) * lam(i, q);
    }
  }
  return 0.5 * s + z_hamiltonian_coordinates(spec, pt);
}

struct HamiltonianEvaluation {
  double coordinates = 0.0;
  double momenta = 0.0;
};

inline HamiltonianEvaluation evaluate_both(const DistributionSpec& spec,
                                           const CotangentPoint& pt) {
  return {hamiltonian_coordinates(spec, pt), hamiltonian_from_momenta(spec, pt)};
}

// Evaluates the coordinate form and cross-checks it against the momentum
// assembly; throws consistency_error if they differ by more than `rel_tol`.
inline double hamiltonian_value(const DistributionSpec& spec,
                                const CotangentPoint& pt, double rel_tol = 1e-11) {
  const auto both = evaluate_both(spec, pt);
  if (rel_diff(both.coordinates, both.momenta) > rel_tol) {
    throw consistency_error(
        "hamiltonian_value: coordinate form " + std::to_string(both.coordinates) +
        " and momentum form " + std::to_string(both.momenta) + " disagree for " +
        spec.str());
  }
  return both.coordinates;
}

inline double z_hamiltonian_value(const DistributionSpec& spec,
                                  const CotangentPoint& pt) {
  require(!spec.empty(), "z_hamiltonian_value: I must be nonempty");
  detail::check_point(spec, pt, "z_hamiltonian_value");
  return z_hamiltonian_coordinates(spec, pt);
}

// Gradient of the X/Y part. With U = a^T lambda,
//   dH/da_{s,t}      = sum_{p != t} sum_i a_{i,p} lambda_{s,p} lambda_{i,t}
//   dH/dlambda_{s,t} = sum_{p != t} sum_i a_{i,t} a_{s,p} lambda_{i,p}
inline PhaseGradient empty_hamiltonian_gradient(const CotangentPoint& pt) {
  pt.validate();
  SquareMatrix u = pt.a.transpose() * pt.lambda;  // u(p,q) = sum_i a_{i,p} lambda_{i,q}
  u.diagonal().setZero();
  // d_a(s,t) = sum_{p != t} lambda(s,p) u(p,t); d_lambda(s,t) = sum_{p != t} a(s,p) u(t,p)
  return {pt.lambda * u, pt.a * u.transpose()};
}

// Gradient of the Z part, case by case on the column index t:
//   t in I:    lambda_{s,t} * sum_l p^{t,l} P_l   (resp. a_{s,t} * ...)
//   t = n-1:   lambda_{s,n-1}/2 * sum_{k,l} p^{k,l} (-P_k - P_l)
//   otherwise: 0
inline PhaseGradient z_hamiltonian_gradient(const DistributionSpec& spec,
                                            const CotangentPoint& pt) {
  detail::check_point(spec, pt, "z_hamiltonian_gradient");
  const int n = spec.n();
  PhaseGradient g{zero_matrix(n), zero_matrix(n)};
  if (spec.empty()) return g;

  const int m = spec.subset_size();
  const auto pz = detail::z_momenta(spec, pt);
  const auto& subset = spec.subset();

  for (std::size_t ti = 0; ti < subset.size(); ++ti) {
    const int t = subset[ti];
    double factor = 0.0;  // sum_l p^{t,l} P_l
    for (std::size_t li = 0; li < subset.size(); ++li)
      factor += p_inverse_entry(m, ti == li) * pz[li];
    g.d_a.col(t - 1) = factor * pt.lambda.col(t - 1);
    g.d_lambda.col(t - 1) = factor * pt.a.col(t - 1);
  }

  double last = 0.0;  // 1/2 sum_{k,l} p^{k,l} (-P_k - P_l)
  for (std::size_t ki = 0; ki < subset.size(); ++ki)
    for (std::size_t li = 0; li < subset.size(); ++li)
      last -= p_inverse_entry(m, ki == li) * (pz[ki] + pz[li]);
  last *= 0.5;
  g.d_a.col(n - 2) = last * pt.lambda.col(n - 2);
  g.d_lambda.col(n - 2) = last * pt.a.col(n - 2);
  return g;
}

inline PhaseGradient hamiltonian_gradient(const DistributionSpec& spec,
                                          const CotangentPoint& pt) {
  detail::check_point(spec, pt, "hamiltonian_gradient");
  PhaseGradient g = empty_hamiltonian_gradient(pt);
  if (!spec.empty()) g += z_hamiltonian_gradient(spec, pt);
  return g;
}

// Canonical bracket {F,G} = sum_{s,t} (dF/da dG/dlambda - dF/dlambda dG/da).
inline double poisson_bracket(const PhaseGradient& f, const PhaseGradient& g) {
  require(f.d_a.rows() == g.d_a.rows() && f.d_a.cols() == g.d_a.cols() &&
              f.d_lambda.rows() == g.d_lambda.rows(),
          "poisson_bracket: dimension mismatch");
  return f.d_a.cwiseProduct(g.d_lambda).sum() - f.d_lambda.cwiseProduct(g.d_a).sum();
}

// F and G are callables CotangentPoint -> PhaseGradient.
template <class GradF, class GradG>
double poisson_bracket(GradF&& grad_f, GradG&& grad_g, const CotangentPoint& pt) {
  return poisson_bracket(grad_f(pt), grad_g(pt));
}

// {H_empty, H_I^Z} at one point.
inline double empty_z_bracket(const DistributionSpec& spec, const CotangentPoint& pt) {
  require(!spec.empty(), "empty_z_bracket: I must be nonempty");
  return poisson_bracket(empty_hamiltonian_gradient(pt),
                         z_hamiltonian_gradient(spec, pt));
}

// Pullback of the covector under left translation by g: lambda' = g^{-T} lambda.
inline CotangentPoint left_translate(const SquareMatrix& g, const CotangentPoint& pt) {
  require_same_dim(g, pt.a, "left_translate");
  return {g * pt.a, g.inverse().transpose() * pt.lambda};
}

// Well-conditioned random point: a on SL(n), lambda uniform in [-1,1].
inline CotangentPoint random_point(SplitMix64& rng, int n) {
  CotangentPoint pt;
  pt.a = random_sl(rng, n);
  pt.lambda = random_matrix(rng, n);
  return pt;
}

}  // namespace kf

#endif  // KF_HAMILTONIAN_HPP
