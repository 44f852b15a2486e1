#ifndef KF_SL2_HPP
#define KF_SL2_HPP

#include "kf/hamiltonian.hpp"

#include <array>
#include <cmath>
#include <string_view>

namespace kf::sl2 {

// The five first integrals of the n = 2 flow. C1..C4 are the entries of
// a lambda^T (C1 = (1,1), C2 = (2,1), C3 = (1,2), C4 = (2,2)); C5 = M N.
struct Constants {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;

  std::array<double, 5> as_array() const { return {c1, c2, c3, c4, c5}; }
};

struct MN {
  double m = 0.0;
  double n = 0.0;
};

inline void require_dim2(const CotangentPoint& pt, const char* who) {
  pt.validate();
  require(pt.n() == 2, std::string(who) + ": requires n = 2");
}

// M = a11 l12 + a21 l22, N = a12 l11 + a22 l21.
inline MN mn_values(const CotangentPoint& pt) {
  require_dim2(pt, "mn_values");
  const auto& a = pt.a;
  const auto& l = pt.lambda;
  return {a(0, 0) * l(0, 1) + a(1, 0) * l(1, 1), a(0, 1) * l(0, 0) + a(1, 1) * l(1, 0)};
}

// H for n = 2, in the four-term expanded form.
inline double hamiltonian(const CotangentPoint& pt) {
  require_dim2(pt, "sl2::hamiltonian");
  const auto& a = pt.a;
  const auto& l = pt.lambda;
  return a(0, 0) * a(0, 1) * l(0, 0) * l(0, 1) + a(0, 0) * a(1, 1) * l(0, 1) * l(1, 0) +
         a(0, 1) * a(1, 0) * l(0, 0) * l(1, 1) + a(1, 0) * a(1, 1) * l(1, 0) * l(1, 1);
}

inline Constants conserved_constants(const CotangentPoint& pt) {
  require_dim2(pt, "conserved_constants");
  const auto& a = pt.a;
  const auto& l = pt.lambda;
  const MN mn = mn_values(pt);
  return {a(0, 0) * l(0, 0) + a(0, 1) * l(0, 1), a(1, 0) * l(0, 0) + a(1, 1) * l(0, 1),
          a(0, 0) * l(1, 0) + a(0, 1) * l(1, 1), a(1, 0) * l(1, 0) + a(1, 1) * l(1, 1),
          mn.m * mn.n};
}

// lambda from C1..C4 via the adjugate of a; exact inverse only when det a = 1.
inline SquareMatrix momenta_from_adjugate(const SquareMatrix& a, const Constants& c) {
  require(a.rows() == 2 && a.cols() == 2, "momenta_from_adjugate: a must be 2x2");
  SquareMatrix l(2, 2);
  l << c.c1 * a(1, 1) - c.c2 * a(0, 1), -c.c1 * a(1, 0) + c.c2 * a(0, 0),
      c.c3 * a(1, 1) - c.c4 * a(0, 1), -c.c3 * a(1, 0) + c.c4 * a(0, 0);
  return l;
}

inline SquareMatrix reconstruct_momenta(const SquareMatrix& a, const Constants& c) {
  require(a.rows() == 2 && a.cols() == 2, "reconstruct_momenta: a must be 2x2");
  require(std::abs(a.determinant() - 1.0) < 1e-8,
          "reconstruct_momenta: det a = " + std::to_string(a.determinant()) +
              " is not 1");
  return momenta_from_adjugate(a, c);
}

// Velocity of a after eliminating lambda with the first integrals.
inline SquareMatrix decoupled_rhs(const SquareMatrix& a, const Constants& c) {
  require(a.rows() == 2 && a.cols() == 2, "decoupled_rhs: a must be 2x2");
  const double a11 = a(0, 0), a12 = a(0, 1), a21 = a(1, 0), a22 = a(1, 1);
  const double m = (c.c4 - c.c1) * a11 * a21 + c.c2 * a11 * a11 - c.c3 * a21 * a21;
  const double n = (c.c1 - c.c4) * a12 * a22 - c.c2 * a12 * a12 + c.c3 * a22 * a22;
  SquareMatrix d(2, 2);
  d << a12 * m, a11 * n, a22 * m, a21 * n;
  return d;
}

enum class Family { hyperbolic, elliptic, constant };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::hyperbolic: return "hyperbolic";
    case Family::elliptic: return "elliptic";
    case Family::constant: return "constant";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  if (s == "hyperbolic") return Family::hyperbolic;
  if (s == "elliptic") return Family::elliptic;
  if (s == "constant") return Family::constant;
  throw std::invalid_argument("unknown family '" + std::string(s) +
                              "' (expected hyperbolic, elliptic or constant)");
}

// Exact solutions starting at the identity.
inline SquareMatrix closed_form(Family family, double c, double t) {
  SquareMatrix a(2, 2);
  switch (family) {
    case Family::hyperbolic:
      a << std::cosh(c * t), std::sinh(c * t), std::sinh(c * t), std::cosh(c * t);
      return a;
    case Family::elliptic:
      a << std::cos(c * t), -std::sin(c * t), std::sin(c * t), std::cos(c * t);
      return a;
    case Family::constant:
      return identity_matrix(2);
  }
  return a;
}

// Covector at the identity that selects each family:
//   hyperbolic [[k, C], [C, k]], elliptic [[k, C], [-C, k]],
//   constant   [[k, 0], [0, k + C]]  (C = C4 - C1, C2 = C3 = 0).
inline SquareMatrix initial_covector(Family family, double c, double k = 0.0) {
  SquareMatrix l(2, 2);
  switch (family) {
    case Family::hyperbolic: l << k, c, c, k; break;
    case Family::elliptic: l << k, c, -c, k; break;
    case Family::constant: l << k, 0.0, 0.0, k + c; break;
  }
  return l;
}

}  // namespace kf::sl2

#endif  // KF_SL2_HPP
