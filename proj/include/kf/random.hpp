#ifndef KF_RANDOM_HPP
#define KF_RANDOM_HPP

#include "kf/matrix.hpp"

#include <cmath>
#include <cstdint>

namespace kf {

// SplitMix64: 64-bit state, cheap to split into independent per-point streams.
// Output is platform independent, so seeded runs are bit-reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Independent stream for sample `index` under the same seed.
  SplitMix64 split(std::uint64_t index) const {
    SplitMix64 mix(state_ ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return SplitMix64(mix.next());
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

inline SquareMatrix random_matrix(SplitMix64& rng, int n, double lo = -1.0,
                                  double hi = 1.0) {
  SquareMatrix m(n, n);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = rng.uniform(lo, hi);
  return m;
}

// Uniform [-1,1] entries, resampled until det > 0.1, then scaled by
// det^(-1/n) so the result lies on SL(n).
inline SquareMatrix random_sl(SplitMix64& rng, int n) {
  for (;;) {
    SquareMatrix a = random_matrix(rng, n);
    const double det = a.determinant();
    if (det > 0.1) return a * std::pow(det, -1.0 / n);
  }
}

// Random traceless matrix with entries in [-1,1].
inline SquareMatrix random_traceless(SplitMix64& rng, int n) {
  SquareMatrix m = random_matrix(rng, n);
  const double mean = m.trace() / n;
  m.diagonal().array() = (m.diagonal().array() - mean) / 2.0;
  return m;
}

}  // namespace kf

#endif  // KF_RANDOM_HPP
