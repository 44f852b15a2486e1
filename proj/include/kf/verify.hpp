#ifndef KF_VERIFY_HPP
#define KF_VERIFY_HPP

#include "kf/bracket_generation.hpp"
#include "kf/geodesic_flow.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kf::verify {

struct CheckResult {
  std::string name;
  int n = 0;
  bool passed = false;
  double value = 0.0;      // worst observed metric
  double threshold = 0.0;  // pass if value < threshold (or exact checks: value == 0)
  std::string detail;
};

// Block pattern: n(n-1)/2 copies of [[0,1],[1,0]] followed by P_{n-1}.
inline SquareMatrix expected_gram(int n) {
  const int d = algebra_dim(n);
  SquareMatrix g = zero_matrix(d);
  for (int r = 0; r < num_pairs(n); ++r) g(2 * r, 2 * r + 1) = g(2 * r + 1, 2 * r) = 1.0;
  g.bottomRightCorner(n - 1, n - 1) = p_matrix(n - 1);
  return g;
}

inline CheckResult check_gram(int n) {
  const double diff = max_abs_diff(gram_matrix(n), expected_gram(n));
  return {"gram block pattern", n, diff == 0.0, diff, 0.0, "exact"};
}

inline CheckResult check_spectrum(int n) {
  const auto rep = verify_spectrum(n);
  const int pairs = num_pairs(n);
  bool ok = rep.multiplicity_of(n) == 1 && rep.multiplicity_of(1.0) == pairs + n - 2 &&
            rep.multiplicity_of(-1.0) == pairs && rep.max_residual < 1e-12;
  int counted = 0;
  for (const auto& c : rep.multiplicities) counted += c.multiplicity;
  ok = ok && rep.multiplicities.size() == 3 && counted == algebra_dim(n);
  return {"Gram spectrum {n,1,-1}", n, ok, rep.max_residual, 1e-12,
          std::to_string(rep.multiplicities.size()) + " distinct eigenvalues"};
}

inline CheckResult check_bracket_generation(int n) {
  int worst_step = 0;
  bool ok = true;
  for (const auto& spec : all_specs(n)) {
    const auto cert = bracket_generation_certificate(spec);
    ok = ok && cert.generates && cert.step <= 1 && cert.rank_trace.back() == algebra_dim(n);
    worst_step = std::max(worst_step, cert.step);
  }
  return {"bracket generation step <= 1", n, ok, static_cast<double>(worst_step), 1.0,
          std::to_string(all_specs(n).size()) + " subsets"};
}

inline CheckResult check_signature(int n) {
  bool ok = true;
  for (const auto& spec : all_specs(n)) {
    const auto rm = restricted_metric(spec);
    const auto sig = signature(rm.g);
    ok = ok && sig.negative == num_pairs(n) && sig.zero == 0 && rm.index == num_pairs(n) &&
         rm.corank == n - 1 - spec.subset_size() &&
         max_abs_diff(rm.g * rm.g_inv, identity_matrix(rm.dim)) < 1e-13;
  }
  return {"restricted metric index/corank", n, ok, 0.0, 0.0, "all subsets"};
}

inline CheckResult check_two_path(int n, std::uint64_t seed, int points = 100) {
  double worst = 0.0;
  SplitMix64 root(seed);
  for (const auto& spec : all_specs(n)) {
    for (int k = 0; k < points; ++k) {
      auto rng = root.split(static_cast<std::uint64_t>(k));
      const auto both = evaluate_both(spec, random_point(rng, n));
      worst = std::max(worst, rel_diff(both.coordinates, both.momenta));
    }
  }
  return {"Hamiltonian coordinate vs momentum form", n, worst < 1e-11, worst, 1e-11, ""};
}

// Central differences of hamiltonian_coordinates; worst normwise relative gap.
inline double gradient_fd_error(const DistributionSpec& spec, const CotangentPoint& pt,
                                double h = 1e-6) {
  const auto g = hamiltonian_gradient(spec, pt);
  const int n = spec.n();
  double worst = 0.0;
  for (int which = 0; which < 2; ++which) {
    SquareMatrix fd(n, n);
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        CotangentPoint plus = pt, minus = pt;
        (which == 0 ? plus.a : plus.lambda)(s, t) += h;
        (which == 0 ? minus.a : minus.lambda)(s, t) -= h;
        fd(s, t) = (hamiltonian_coordinates(spec, plus) - hamiltonian_coordinates(spec, minus)) / (2 * h);
      }
    }
    const SquareMatrix& an = which == 0 ? g.d_a : g.d_lambda;
    // relative 1e-6 with absolute floor 1e-9 <=> err < 1e-6 with scale max|fd| + 1e-3
    const double err = max_abs(an - fd) / (max_abs(fd) + 1e-3);
    worst = std::max(worst, err);
  }
  return worst;
}

inline CheckResult check_gradient(int n, std::uint64_t seed, int points = 20) {
  double worst = 0.0;
  SplitMix64 root(seed ^ 0x6772616469656e74ULL);
  for (const auto& spec : all_specs(n)) {
    for (int k = 0; k < points; ++k) {
      auto rng = root.split(static_cast<std::uint64_t>(k));
      worst = std::max(worst, gradient_fd_error(spec, random_point(rng, n)));
    }
  }
  return {"analytic gradient vs central differences", n, worst < 1e-6, worst, 1e-6, ""};
}

inline CheckResult check_poisson(int n, std::uint64_t seed, int points = 100) {
  double worst = 0.0;
  SplitMix64 root(seed ^ 0x706f6973736f6eULL);
  std::vector<DistributionSpec> specs;
  for (int l = 1; l <= n - 2; ++l) specs.emplace_back(n, std::vector<int>{l});
  specs.push_back(DistributionSpec::full(n));
  for (const auto& spec : specs) {
    for (int k = 0; k < points; ++k) {
      auto rng = root.split(static_cast<std::uint64_t>(k));
      worst = std::max(worst, std::abs(empty_z_bracket(spec, random_point(rng, n))));
    }
  }
  return {"{H_empty, H_Z} = 0", n, worst < 1e-9, worst, 1e-9, "singleton and full I"};
}

inline CheckResult check_left_invariance(int n, std::uint64_t seed, int points = 20) {
  double worst = 0.0;
  SplitMix64 root(seed ^ 0x6c656674ULL);
  for (const auto& spec : all_specs(n)) {
    for (int k = 0; k < points; ++k) {
      auto rng = root.split(static_cast<std::uint64_t>(k));
      const auto pt = random_point(rng, n);
      const SquareMatrix g = random_sl(rng, n);
      worst = std::max(worst, rel_diff(hamiltonian_from_momenta(spec, left_translate(g, pt)),
                                       hamiltonian_from_momenta(spec, pt)));
    }
  }
  return {"left invariance of H", n, worst < 1e-9, worst, 1e-9, ""};
}

inline CheckResult check_sl2_families() {
  double worst = 0.0;
  const DistributionSpec spec(2, {});
  IntegratorConfig cfg;
  for (auto fam : {sl2::Family::hyperbolic, sl2::Family::elliptic}) {
    const auto traj = integrate(spec, {identity_matrix(2), sl2::initial_covector(fam, 1.0)}, cfg);
    if (!traj.ok()) return {"n=2 closed-form families", 2, false, 0.0, 1e-8, traj.error};
    for (const auto& s : traj.samples)
      worst = std::max(worst, max_abs_diff(s.pt.a, sl2::closed_form(fam, 1.0, s.t)));
  }
  return {"n=2 closed-form families", 2, worst < 1e-8, worst, 1e-8, "rk4 step 1e-3"};
}

inline CheckResult check_sl2_decoupling(std::uint64_t seed, int points = 1000) {
  double worst = 0.0;
  SplitMix64 root(seed ^ 0x736c32ULL);
  const DistributionSpec spec(2, {});
  for (int k = 0; k < points; ++k) {
    auto rng = root.split(static_cast<std::uint64_t>(k));
    const auto pt = random_point(rng, 2);
    const SquareMatrix v = hamiltonian_gradient(spec, pt).d_lambda;
    const SquareMatrix d = sl2::decoupled_rhs(pt.a, sl2::conserved_constants(pt));
    worst = std::max(worst, max_abs(v - d) / std::max(1.0, max_abs(v)));
  }
  return {"n=2 decoupled system equals Hamiltonian velocity", 2, worst < 1e-11, worst, 1e-11, ""};
}

// Every check for n_min <= n <= n_max.
inline std::vector<CheckResult> run_all(int n_min, int n_max, std::uint64_t seed) {
  require(n_min >= 2 && n_max >= n_min, "verify: need 2 <= n_min <= n_max");
  std::vector<CheckResult> out;
  for (int n = n_min; n <= n_max; ++n) {
    out.push_back(check_gram(n));
    out.push_back(check_spectrum(n));
    out.push_back(check_bracket_generation(n));
    out.push_back(check_signature(n));
    out.push_back(check_two_path(n, seed));
    out.push_back(check_gradient(n, seed));
    out.push_back(check_left_invariance(n, seed));
    if (n >= 3) out.push_back(check_poisson(n, seed));
  }
  if (n_min == 2) {
    out.push_back(check_sl2_families());
    out.push_back(check_sl2_decoupling(seed));
  }
  return out;
}

}  // namespace kf::verify

#endif  // KF_VERIFY_HPP
