#ifndef KF_GEODESIC_FLOW_HPP
#define KF_GEODESIC_FLOW_HPP

#include "kf/hamiltonian.hpp"
#include "kf/sl2.hpp"
#include "kf/span.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace kf {

enum class Method { rk4_fixed, rk45_adaptive };

inline std::string_view to_string(Method m) {
  return m == Method::rk4_fixed ? "rk4_fixed" : "rk45_adaptive";
}

inline Method parse_method(std::string_view s) {
  if (s == "rk4_fixed" || s == "rk4") return Method::rk4_fixed;
  if (s == "rk45_adaptive" || s == "rk45") return Method::rk45_adaptive;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

// For rk4_fixed, `step` is the time step. For rk45_adaptive it is the initial
// step guess; in both cases samples are stored every `sample_stride * step`
// and at the horizon.
struct IntegratorConfig {
  double step = 1e-3;
  double horizon = 1.0;
  Method method = Method::rk4_fixed;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int sample_stride = 1;

  void validate() const {
    require(step > 0.0 && std::isfinite(step), "IntegratorConfig: step must be positive");
    require(horizon > 0.0 && std::isfinite(horizon),
            "IntegratorConfig: horizon must be positive");
    require(step <= horizon, "IntegratorConfig: step must not exceed horizon");
    require(abs_tol > 0.0 && rel_tol > 0.0, "IntegratorConfig: tolerances must be positive");
    require(sample_stride >= 1, "IntegratorConfig: sample_stride must be >= 1");
  }
};

struct Diagnostics {
  double hamiltonian = 0.0;
  double det_a = 0.0;
  std::optional<double> horizontality;        // unavailable when a is singular
  std::optional<std::array<double, 5>> sl2_constants;  // n = 2 only
};

struct Sample {
  double t = 0.0;
  CotangentPoint pt;
  Diagnostics diag;
};

enum class FlowStatus { ok, aborted_non_finite, aborted_solver };

struct Trajectory {
  DistributionSpec spec;
  std::vector<Sample> samples;
  FlowStatus status = FlowStatus::ok;
  std::string error;
  std::vector<std::string> warnings;

  bool ok() const { return status == FlowStatus::ok; }
  const Sample& back() const { return samples.back(); }
};

// Norm of the part of a^{-1} a_dot orthogonal (Frobenius) to span C_I.
class HorizontalityMeter {
 public:
  explicit HorizontalityMeter(const DistributionSpec& spec) : span_(spec.n()), spec_(spec) {
    for (const auto& g : generator_matrices(spec)) span_.add(g);
  }

  std::optional<double> operator()(const CotangentPoint& pt) const {
    const Eigen::PartialPivLU<SquareMatrix> lu(pt.a);
    if (std::abs(lu.determinant()) < 1e-8) return std::nullopt;
    const SquareMatrix velocity = hamiltonian_gradient(spec_, pt).d_lambda;
    return span_.residual_norm(lu.solve(velocity));
  }

 private:
  SpanBasis span_;
  DistributionSpec spec_;
};

inline Diagnostics diagnose(const DistributionSpec& spec, const HorizontalityMeter& meter,
                            const CotangentPoint& pt) {
  Diagnostics d;
  d.hamiltonian = hamiltonian_from_momenta(spec, pt);
  d.det_a = pt.a.determinant();
  d.horizontality = meter(pt);
  if (spec.n() == 2) d.sl2_constants = sl2::conserved_constants(pt).as_array();
  return d;
}

namespace detail {

using FlowState = std::vector<double>;

inline FlowState pack(const CotangentPoint& pt) {
  const auto nn = pt.a.size();
  FlowState x(2 * nn);
  std::copy(pt.a.data(), pt.a.data() + nn, x.begin());
  std::copy(pt.lambda.data(), pt.lambda.data() + nn, x.begin() + nn);
  return x;
}

inline CotangentPoint unpack(const FlowState& x, int n) {
  const auto nn = static_cast<std::size_t>(n) * n;
  CotangentPoint pt;
  pt.a = Eigen::Map<const SquareMatrix>(x.data(), n, n);
  pt.lambda = Eigen::Map<const SquareMatrix>(x.data() + nn, n, n);
  return pt;
}

inline bool finite(const FlowState& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

struct NonFinite {
  double t;
};

// a_dot = dH/dlambda, lambda_dot = -dH/da
struct HamiltonianField {
  DistributionSpec spec;

  void operator()(const FlowState& x, FlowState& dxdt, double t) const {
    if (!finite(x)) throw NonFinite{t};
    const int n = spec.n();
    const auto pt = unpack(x, n);
    const auto g = hamiltonian_gradient(spec, pt);
    const auto nn = static_cast<std::size_t>(n) * n;
    dxdt.resize(2 * nn);
    for (std::size_t k = 0; k < nn; ++k) {
      dxdt[k] = g.d_lambda.data()[k];
      dxdt[nn + k] = -g.d_a.data()[k];
    }
  }
};

}  // namespace detail

// Vector field of the Hamiltonian system at one point.
inline PhaseGradient flow_velocity(const DistributionSpec& spec, const CotangentPoint& pt) {
  const auto g = hamiltonian_gradient(spec, pt);
  return {g.d_lambda, -g.d_a};  // {a_dot, lambda_dot}
}

// Integrates the Hamiltonian system from `init`. No projection onto SL(n) is
// applied; the determinant drift is reported as a diagnostic.
inline Trajectory integrate(const DistributionSpec& spec, const CotangentPoint& init,
                            const IntegratorConfig& cfg) {
  namespace odeint = boost::numeric::odeint;
  using detail::FlowState;

  detail::check_point(spec, init, "integrate");
  cfg.validate();
  require(std::abs(init.a.determinant() - 1.0) < 1e-8,
          "integrate: initial a is not on SL(n) (det = " +
              std::to_string(init.a.determinant()) + ")");

  const int n = spec.n();
  const HorizontalityMeter meter(spec);
  const detail::HamiltonianField field{spec};

  Trajectory traj;
  traj.spec = spec;
  bool det_warned = false;

  auto record = [&](const FlowState& x, double t) {
    Sample s{t, detail::unpack(x, n), {}};
    s.diag = diagnose(spec, meter, s.pt);
    if (!det_warned && std::abs(s.diag.det_a - 1.0) > 1e-4) {
      det_warned = true;
      traj.warnings.push_back("det(a) drifted beyond 1e-4 at t=" + std::to_string(t));
    }
    traj.samples.push_back(std::move(s));
  };

  FlowState x = detail::pack(init);
  record(x, 0.0);

  try {
    if (cfg.method == Method::rk4_fixed) {
      odeint::runge_kutta4<FlowState> stepper;
      const auto steps =
          static_cast<long>(std::ceil(cfg.horizon / cfg.step - 1e-9));
      double t = 0.0;
      for (long k = 1; k <= steps; ++k) {
        const double t_next = (k == steps) ? cfg.horizon : static_cast<double>(k) * cfg.step;
        stepper.do_step(field, x, t, t_next - t);
        t = t_next;
        if (!detail::finite(x)) throw detail::NonFinite{t};
        if (k % cfg.sample_stride == 0 || k == steps) record(x, t);
      }
    } else {
      std::vector<double> times{0.0};
      const double spacing = cfg.step * cfg.sample_stride;
      for (long k = 1;; ++k) {
        const double t = static_cast<double>(k) * spacing;
        if (t >= cfg.horizon - 1e-12 * cfg.horizon) break;
        times.push_back(t);
      }
      times.push_back(cfg.horizon);
      auto stepper = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol,
                                               odeint::runge_kutta_dopri5<FlowState>());
      odeint::integrate_times(stepper, field, x, times.begin(), times.end(), cfg.step,
                              [&](const FlowState& xs, double t) {
                                if (t == 0.0) return;
                                if (!detail::finite(xs)) throw detail::NonFinite{t};
                                record(xs, t);
                              });
    }
  } catch (const detail::NonFinite& e) {
    traj.status = FlowStatus::aborted_non_finite;
    traj.error = "non-finite state encountered near t=" + std::to_string(e.t);
  } catch (const std::exception& e) {
    traj.status = FlowStatus::aborted_solver;
    traj.error = std::string("integrator failure: ") + e.what();
  }
  return traj;
}

struct DriftReport {
  double hamiltonian = 0.0;     // max |H(t) - H(0)|
  double determinant = 0.0;     // max |det a(t) - 1|
  double horizontality = 0.0;   // max residual over samples where available
  int horizontality_unavailable = 0;
  std::optional<std::array<double, 5>> sl2_constants;  // max |C_i(t) - C_i(0)|
};

inline DriftReport monitor_invariants(const Trajectory& traj) {
  require(!traj.samples.empty(), "monitor_invariants: empty trajectory");
  DriftReport r;
  const auto& d0 = traj.samples.front().diag;
  if (d0.sl2_constants) r.sl2_constants = std::array<double, 5>{};
  for (const auto& s : traj.samples) {
    r.hamiltonian = std::max(r.hamiltonian, std::abs(s.diag.hamiltonian - d0.hamiltonian));
    r.determinant = std::max(r.determinant, std::abs(s.diag.det_a - 1.0));
    if (s.diag.horizontality) {
      r.horizontality = std::max(r.horizontality, *s.diag.horizontality);
    } else {
      ++r.horizontality_unavailable;
    }
    if (r.sl2_constants && s.diag.sl2_constants) {
      for (int i = 0; i < 5; ++i) {
        (*r.sl2_constants)[i] = std::max((*r.sl2_constants)[i],
                                         std::abs((*s.diag.sl2_constants)[i] -
                                                  (*d0.sl2_constants)[i]));
      }
    }
  }
  return r;
}

// n = 2: max entrywise gap between lambda(t) and the covector rebuilt from a(t)
// and the initial first integrals.
inline double momenta_reconstruction_error(const Trajectory& traj) {
  require(traj.spec.n() == 2 && !traj.samples.empty(),
          "momenta_reconstruction_error: needs a non-empty n = 2 trajectory");
  const auto c0 = sl2::conserved_constants(traj.samples.front().pt);
  double err = 0.0;
  for (const auto& s : traj.samples) {
    // Drifted samples may sit outside reconstruct_momenta's det window.
    err = std::max(err, max_abs_diff(sl2::momenta_from_adjugate(s.pt.a, c0), s.pt.lambda));
  }
  return err;
}

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_header(int n) {
  std::string h = "t";
  for (const char* prefix : {"a", "l"})
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) h += "," + std::string(prefix) + std::to_string(i) + std::to_string(j);
  h += ",H,det,horiz_residual";
  if (n == 2) h += ",C1,C2,C3,C4,C5";
  return h;
}

// One row per stored sample, 17 significant digits; an unavailable
// horizontality residual is written as "nan".
inline void write_csv(std::ostream& os, const Trajectory& traj) {
  const int n = traj.spec.n();
  os << csv_header(n) << '\n';
  for (const auto& s : traj.samples) {
    std::string row = format_double(s.t);
    for (const SquareMatrix* m : {&s.pt.a, &s.pt.lambda})
      for (Eigen::Index k = 0; k < m->size(); ++k) row += "," + format_double(m->data()[k]);
    row += "," + format_double(s.diag.hamiltonian);
    row += "," + format_double(s.diag.det_a);
    row += "," + format_double(s.diag.horizontality.value_or(std::nan("")));
    if (s.diag.sl2_constants)
      for (double c : *s.diag.sl2_constants) row += "," + format_double(c);
    os << row << '\n';
  }
}

}  // namespace kf

#endif  // KF_GEODESIC_FLOW_HPP
