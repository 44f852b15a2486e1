#ifndef KF_IO_HPP
#define KF_IO_HPP

#include "kf/bracket_generation.hpp"
#include "kf/geodesic_flow.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace kf {

using json = nlohmann::ordered_json;

// {"dim": n, "entries": [[row 1], ..., [row n]]}
inline json to_json(const SquareMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

inline SquareMatrix matrix_from_json(const json& j) {
  require(j.is_object() && j.contains("dim") && j.contains("entries"),
          "matrix JSON needs 'dim' and 'entries'");
  const int n = j.at("dim").get<int>();
  const auto& rows = j.at("entries");
  require(n >= 1 && rows.is_array() && static_cast<int>(rows.size()) == n,
          "matrix JSON: row count does not match dim");
  SquareMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    require(rows[i].is_array() && static_cast<int>(rows[i].size()) == n,
            "matrix JSON: row " + std::to_string(i) + " has wrong length");
    for (int k = 0; k < n; ++k) m(i, k) = rows[i][k].get<double>();
  }
  require(m.allFinite(), "matrix JSON: non-finite entry");
  return m;
}

inline json to_json(const BasisLabel& l) {
  using K = BasisLabel::Kind;
  switch (l.kind) {
    case K::off_diag:
      return {{"kind", "offdiag"}, {"r", l.index}, {"part", l.part}, {"name", l.str()}};
    case K::diag:
      return {{"kind", "diag"}, {"l", l.index}, {"name", l.str()}};
    case K::x:
      return {{"kind", "X"}, {"r", l.index}, {"name", l.str()}};
    case K::y:
      return {{"kind", "Y"}, {"r", l.index}, {"name", l.str()}};
    case K::z:
      return {{"kind", "Z"}, {"l", l.index}, {"name", l.str()}};
    case K::h:
      return {{"kind", "H"}, {"name", l.str()}};
  }
  return {};
}

inline BasisLabel label_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "offdiag") return BasisLabel::off_diag(j.at("r").get<int>(), j.at("part").get<int>());
  if (kind == "diag") return BasisLabel::diag(j.at("l").get<int>());
  if (kind == "X") return BasisLabel::x(j.at("r").get<int>());
  if (kind == "Y") return BasisLabel::y(j.at("r").get<int>());
  if (kind == "Z") return BasisLabel::z(j.at("l").get<int>());
  if (kind == "H") return BasisLabel::h();
  throw std::invalid_argument("unknown label kind '" + kind + "'");
}

inline json to_json(const SpectrumReport& r) {
  json mult = json::array();
  for (const auto& c : r.multiplicities)
    mult.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  return {{"n", r.n},
          {"eigenvalues", r.eigenvalues},
          {"multiplicities", std::move(mult)},
          {"max_residual", r.max_residual}};
}

inline json to_json(const BracketCertificate& c) {
  return {{"generates", c.generates}, {"step", c.step}, {"rank_trace", c.rank_trace}};
}

inline json to_json(const RestrictedMetric& m) {
  return {{"dim", m.dim},
          {"g", to_json(m.g)},
          {"g_inv", to_json(m.g_inv)},
          {"index", m.index},
          {"corank", m.corank}};
}

inline json to_json(const EigenFamily& f) {
  auto list = [](const std::vector<SquareMatrix>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(to_json(m));
    return a;
  };
  return {{"H", to_json(f.h)}, {"X", list(f.x)}, {"Y", list(f.y)}, {"Z", list(f.z)}};
}

// Everything the `structure` command emits for one distribution.
inline json structure_json(const DistributionSpec& spec) {
  const int n = spec.n();
  const OrderedBasis basis = build_basis(n);
  json basis_j = json::array();
  for (std::size_t k = 0; k < basis.size(); ++k)
    basis_j.push_back({{"label", to_json(basis.labels[k])}, {"matrix", to_json(basis.matrices[k])}});

  json gens = json::array();
  for (const auto& lm : generating_set(spec))
    gens.push_back({{"label", to_json(lm.label)}, {"matrix", to_json(lm.matrix)}});

  const RestrictedMetric rm = restricted_metric(spec);
  const Signature sig = signature(rm.g);

  return {{"n", n},
          {"I", spec.subset()},
          {"basis", std::move(basis_j)},
          {"gram", to_json(gram_matrix(n))},
          {"eigen_family", to_json(eigen_family(n))},
          {"spectrum", to_json(verify_spectrum(n))},
          {"generating_set", std::move(gens)},
          {"restricted_metric", to_json(rm)},
          {"signature", {{"positive", sig.positive}, {"negative", sig.negative}, {"zero", sig.zero}}},
          {"bracket_generation", to_json(bracket_generation_certificate(spec))}};
}

// Re-reads a structure document and compares it against freshly constructed
// objects. Returns one message per mismatch; empty means valid.
inline std::vector<std::string> validate_structure_json(const json& doc) {
  std::vector<std::string> bad;
  try {
    const DistributionSpec spec(doc.at("n").get<int>(), doc.at("I").get<std::vector<int>>());
    const int n = spec.n();

    const OrderedBasis basis = build_basis(n);
    const auto& bj = doc.at("basis");
    if (bj.size() != basis.size()) bad.push_back("basis: wrong length");
    for (std::size_t k = 0; k < std::min(bj.size(), basis.size()); ++k) {
      if (!(label_from_json(bj[k].at("label")) == basis.labels[k]))
        bad.push_back("basis[" + std::to_string(k) + "]: label mismatch");
      if (matrix_from_json(bj[k].at("matrix")) != basis.matrices[k])
        bad.push_back("basis[" + std::to_string(k) + "]: matrix mismatch");
    }

    if (matrix_from_json(doc.at("gram")) != gram_matrix(n)) bad.push_back("gram: mismatch");

    const auto gens = generating_set(spec);
    const auto& gj = doc.at("generating_set");
    if (gj.size() != gens.size()) bad.push_back("generating_set: wrong length");
    for (std::size_t k = 0; k < std::min(gj.size(), gens.size()); ++k) {
      if (!(label_from_json(gj[k].at("label")) == gens[k].label) ||
          matrix_from_json(gj[k].at("matrix")) != gens[k].matrix)
        bad.push_back("generating_set[" + std::to_string(k) + "]: mismatch");
    }

    const auto fam = eigen_family(n);
    const auto& fj = doc.at("eigen_family");
    if (matrix_from_json(fj.at("H")) != fam.h) bad.push_back("eigen_family.H: mismatch");
    for (const auto& [key, list] :
         {std::pair{"X", &fam.x}, std::pair{"Y", &fam.y}, std::pair{"Z", &fam.z}}) {
      const auto& arr = fj.at(key);
      if (arr.size() != list->size()) {
        bad.push_back(std::string("eigen_family.") + key + ": wrong length");
        continue;
      }
      for (std::size_t k = 0; k < arr.size(); ++k)
        if (matrix_from_json(arr[k]) != (*list)[k])
          bad.push_back(std::string("eigen_family.") + key + "[" + std::to_string(k) + "]: mismatch");
    }

    const RestrictedMetric rm = restricted_metric(spec);
    const auto& mj = doc.at("restricted_metric");
    if (matrix_from_json(mj.at("g")) != rm.g) bad.push_back("restricted_metric.g: mismatch");
    if (max_abs_diff(matrix_from_json(mj.at("g_inv")), rm.g_inv) > 0.0)
      bad.push_back("restricted_metric.g_inv: mismatch");
    if (mj.at("index").get<int>() != rm.index) bad.push_back("restricted_metric.index: mismatch");
    if (mj.at("corank").get<int>() != rm.corank) bad.push_back("restricted_metric.corank: mismatch");

    const auto cert = bracket_generation_certificate(spec);
    const auto& cj = doc.at("bracket_generation");
    if (cj.at("generates").get<bool>() != cert.generates ||
        cj.at("rank_trace").get<std::vector<int>>() != cert.rank_trace)
      bad.push_back("bracket_generation: mismatch");
  } catch (const std::exception& e) {
    bad.push_back(std::string("malformed document: ") + e.what());
  }
  return bad;
}

inline json to_json(const Trajectory& traj) {
  json samples = json::array();
  for (const auto& s : traj.samples) {
    json d = {{"H", s.diag.hamiltonian}, {"det", s.diag.det_a}};
    d["horiz_residual"] = s.diag.horizontality ? json(*s.diag.horizontality) : json(nullptr);
    if (s.diag.sl2_constants) d["C"] = *s.diag.sl2_constants;
    samples.push_back({{"t", s.t}, {"a", to_json(s.pt.a)}, {"lambda", to_json(s.pt.lambda)}, {"diagnostics", std::move(d)}});
  }
  return {{"n", traj.spec.n()},
          {"I", traj.spec.subset()},
          {"status", traj.ok() ? "ok" : "aborted"},
          {"error", traj.error},
          {"warnings", traj.warnings},
          {"samples", std::move(samples)}};
}

}  // namespace kf

#endif  // KF_IO_HPP
