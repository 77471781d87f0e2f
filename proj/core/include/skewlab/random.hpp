#pragma once

#include <cstdint>

#include "skewlab/quantum.hpp"

namespace skewlab {

struct Seed {
  std::uint64_t value = 0;
};

// Counter-based generator with a fixed algorithm so identical seeds
// reproduce identical objects on every standard library / platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  explicit SplitMix64(Seed seed) : state_(seed.value) {}

  std::uint64_t next();
  double uniform01();                  // [0, 1) with 53 bits
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);     // inclusive bounds
  double normal();                     // standard normal (polar method)
  Complex complex_normal();            // independent N(0,1) re/im

 private:
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// Independent stream for shard `index` of a run seeded with `parent`.
Seed child_seed(Seed parent, std::uint64_t index);

DensityMatrix ginibre_density(int d, Seed seed);
Observable random_hermitian(int d, Seed seed);
// d x d matrix with i.i.d. standard complex Gaussian entries (no symmetry).
Matrix random_operator(int d, Seed seed);
UnitaryOperator haar_unitary(int d, Seed seed);
// Isometry slicing: QR-orthonormalized Gaussian (n*d) x d columns cut into
// n blocks, so completeness holds by construction.
KrausChannel random_kraus_channel(int d, int n, Seed seed);

}  // namespace skewlab
