#ifndef KF_BRACKET_GENERATION_HPP
#define KF_BRACKET_GENERATION_HPP

#include "kf/distribution.hpp"
#include "kf/span.hpp"

#include <vector>

namespace kf {

struct BracketCertificate {
  bool generates = false;
  int step = 0;                 // bracket depth at which the span became full
  std::vector<int> rank_trace;  // rank of S_0, S_1, ...
};

// S_0 = span C_I, S_{k+1} = S_k + [C_I, S_k]. Bracketing only against the
// generators suffices: the generated subalgebra is the closure under ad of
// the generators. Stops at full rank or when the rank stops growing.
inline BracketCertificate bracket_generation_certificate(
    const DistributionSpec& spec, double threshold = 1e-10) {
  const int n = spec.n();
  const int full = algebra_dim(n);
  const auto gens = generator_matrices(spec);

  SpanBasis span(n, threshold);
  for (const auto& g : gens) span.add(g);

  BracketCertificate cert;
  cert.rank_trace.push_back(span.rank());
  int step = 0;
  while (span.rank() < full) {
    std::vector<SquareMatrix> current;
    current.reserve(span.rank());
    for (int k = 0; k < span.rank(); ++k) current.push_back(span.matrix(k));
    const int before = span.rank();
    for (const auto& g : gens)
      for (const auto& s : current) span.add(bracket(g, s));
    ++step;
    cert.rank_trace.push_back(span.rank());
    if (span.rank() == before) {
      cert.generates = false;
      cert.step = step;
      return cert;
    }
  }
  cert.generates = true;
  cert.step = step;
  return cert;
}

}  // namespace kf

#endif  // KF_BRACKET_GENERATION_HPP
