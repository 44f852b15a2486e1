// Command-line front end: structure, verify, geodesic, poisson, sl2-compare.

#include "kf/io.hpp"
#include "kf/verify.hpp"

#include "CLI11.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kNumericFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 2;
  std::vector<int> subset;
  std::uint64_t seed = 1;
  double step = 1e-3;
  double horizon = 1.0;
  std::string method = "rk4_fixed";
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int stride = 1;
  std::vector<double> lambda;
  std::string out;
  std::string format;
  int n_min = 2;
  int n_max = 4;
  int points = 100;
  std::string family = "hyperbolic";
  double c = 1.0;
  double k = 0.0;
};

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("kf");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("KF_LOG");
  const std::string level = env ? env : "info";
  if (level == "quiet") {
    spdlog::set_level(spdlog::level::off);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::info);
  }
}

// Writes to --out when given, stdout otherwise.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + o.out + "'");
  f << text;
  spdlog::info("wrote {}", o.out);
}

kf::IntegratorConfig integrator_config(const Options& o) {
  kf::IntegratorConfig cfg;
  cfg.step = o.step;
  cfg.horizon = o.horizon;
  cfg.method = kf::parse_method(o.method);
  cfg.abs_tol = o.abs_tol;
  cfg.rel_tol = o.rel_tol;
  cfg.sample_stride = o.stride;
  cfg.validate();
  return cfg;
}

int run_structure(const Options& o) {
  if (!o.format.empty() && o.format != "json")
    throw UsageError("structure only supports --format json");
  const kf::DistributionSpec spec(o.n, o.subset);
  spdlog::debug("building structure for {}", spec.str());
  emit(o, kf::structure_json(spec).dump(2) + "\n");
  return kOk;
}

int run_verify(const Options& o) {
  const auto results = kf::verify::run_all(o.n_min, o.n_max, o.seed);
  std::ostringstream os;
  int failed = 0;
  for (const auto& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  n=%d  %-48s worst=%.3e  threshold=%.1e  %s\n",
                  r.passed ? "PASS" : "FAIL", r.n, r.name.c_str(), r.value, r.threshold,
                  r.detail.c_str());
    os << line;
    if (!r.passed) ++failed;
  }
  os << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed\n"
                     : std::to_string(failed) + " of " + std::to_string(results.size()) +
                           " checks FAILED\n");
  emit(o, os.str());
  return failed == 0 ? kOk : kNumericFailure;
}

int run_geodesic(const Options& o) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format != "csv" && format != "json")
    throw UsageError("geodesic supports --format csv or json");
  const kf::DistributionSpec spec(o.n, o.subset);
  const auto cfg = integrator_config(o);

  kf::CotangentPoint init;
  if (!o.lambda.empty()) {
    if (static_cast<int>(o.lambda.size()) != o.n * o.n)
      throw UsageError("--lambda needs n^2 = " + std::to_string(o.n * o.n) + " entries");
    init.a = kf::identity_matrix(o.n);
    init.lambda = Eigen::Map<const kf::SquareMatrix>(o.lambda.data(), o.n, o.n);
  } else {
    kf::SplitMix64 rng(o.seed);
    init = kf::random_point(rng, o.n);
    spdlog::debug("random initial point from seed {}", o.seed);
  }

  const auto traj = kf::integrate(spec, init, cfg);
  for (const auto& w : traj.warnings) spdlog::warn("{}", w);

  if (format == "csv") {
    std::ostringstream os;
    kf::write_csv(os, traj);
    emit(o, os.str());
  } else {
    emit(o, kf::to_json(traj).dump(2) + "\n");
  }

  const auto drift = kf::monitor_invariants(traj);
  spdlog::info("samples={} H drift={:.3e} det drift={:.3e} horizontality={:.3e}",
               traj.samples.size(), drift.hamiltonian, drift.determinant, drift.horizontality);
  if (!traj.ok()) {
    spdlog::error("{}", traj.error);
    return kNumericFailure;
  }
  return kOk;
}

int run_poisson(const Options& o) {
  if (o.subset.empty() || o.n < 3)
    throw UsageError("poisson needs n >= 3 and a nonempty --I");
  if (o.points < 1) throw UsageError("--points must be positive");
  const kf::DistributionSpec spec(o.n, o.subset);
  kf::SplitMix64 root(o.seed);
  double worst = 0.0;
  for (int k = 0; k < o.points; ++k) {
    auto rng = root.split(static_cast<std::uint64_t>(k));
    worst = std::max(worst, std::abs(kf::empty_z_bracket(spec, kf::random_point(rng, o.n))));
  }
  if (!std::isfinite(worst)) {
    spdlog::error("non-finite Poisson bracket value");
    return kNumericFailure;
  }
  emit(o, spec.str() + " points=" + std::to_string(o.points) +
              " max|{H_empty,H_Z}|=" + kf::format_double(worst) + "\n");
  return kOk;
}

int run_sl2_compare(const Options& o) {
  const auto family = kf::sl2::parse_family(o.family);
  const auto cfg = integrator_config(o);
  const kf::DistributionSpec spec(2, {});
  const kf::CotangentPoint init{kf::identity_matrix(2),
                                kf::sl2::initial_covector(family, o.c, o.k)};
  const auto traj = kf::integrate(spec, init, cfg);
  double worst = 0.0;
  for (const auto& s : traj.samples)
    worst = std::max(worst, kf::max_abs_diff(s.pt.a, kf::sl2::closed_form(family, o.c, s.t)));
  emit(o, "family=" + std::string(kf::sl2::to_string(family)) + " C=" + kf::format_double(o.c) +
              " horizon=" + kf::format_double(o.horizon) + " step=" + kf::format_double(o.step) +
              " max_deviation=" + kf::format_double(worst) + "\n");
  if (!traj.ok()) {
    spdlog::error("{}", traj.error);
    return kNumericFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Sub-pseudo-Riemannian structures on SL(n,R) from the trace form"};
  app.require_subcommand(1);
  Options o;

  auto add_spec = [&](CLI::App* c, bool n_required) {
    auto* opt = c->add_option("--n", o.n, "matrix dimension n >= 2");
    if (n_required) opt->required();
    c->add_option("--I", o.subset, "subset of {1..n-2}, comma separated")->delimiter(',');
  };
  auto add_flow = [&](CLI::App* c) {
    c->add_option("--step", o.step, "time step (rk4) or initial step (rk45)");
    c->add_option("--horizon", o.horizon, "final time");
    c->add_option("--method", o.method, "rk4_fixed | rk45_adaptive");
    c->add_option("--atol", o.abs_tol, "rk45 absolute tolerance");
    c->add_option("--rtol", o.rel_tol, "rk45 relative tolerance");
    c->add_option("--stride", o.stride, "store every k-th step");
  };
  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_option("--format", o.format, "json | csv");
  };

  auto* structure = app.add_subcommand("structure", "basis, Gram matrix, eigenvectors, metric as JSON");
  add_spec(structure, true);
  add_out(structure);

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--n-min", o.n_min, "smallest n");
  verify->add_option("--n-max", o.n_max, "largest n");
  verify->add_option("--seed", o.seed, "random seed");
  add_out(verify);

  auto* geodesic = app.add_subcommand("geodesic", "integrate the Hamiltonian flow, write CSV");
  add_spec(geodesic, true);
  add_flow(geodesic);
  geodesic->add_option("--seed", o.seed, "seed for a random initial point");
  geodesic->add_option("--lambda", o.lambda, "initial covector at a = id, n^2 values row-major")
      ->delimiter(',');
  add_out(geodesic);

  auto* poisson = app.add_subcommand("poisson", "max |{H_empty, H_Z}| over seeded random points");
  add_spec(poisson, true);
  poisson->add_option("--seed", o.seed, "random seed");
  poisson->add_option("--points", o.points, "number of random points");
  add_out(poisson);

  auto* sl2 = app.add_subcommand("sl2-compare", "n = 2 flow against the closed-form family");
  sl2->add_option("--family", o.family, "hyperbolic | elliptic | constant");
  sl2->add_option("--C", o.c, "family constant C");
  sl2->add_option("--k", o.k, "diagonal covector entry k");
  add_flow(sl2);
  add_out(sl2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*structure) return run_structure(o);
    if (*verify) return run_verify(o);
    if (*geodesic) return run_geodesic(o);
    if (*poisson) return run_poisson(o);
    if (*sl2) return run_sl2_compare(o);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kNumericFailure;
  }
  return kUsage;
}
