#include "skewlab/random.hpp"

#include <cmath>

namespace skewlab {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix ginibre(int rows, int cols, SplitMix64& rng) {
  Matrix g(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      g(r, c) = rng.complex_normal();
    }
  }
  return g;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

double SplitMix64::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

int SplitMix64::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

double SplitMix64::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  cached_ = v * factor;
  has_cached_ = true;
  return u * factor;
}

Complex SplitMix64::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im);
}

Seed child_seed(Seed parent, std::uint64_t index) {
  return Seed{mix64(parent.value + 0x9E3779B97F4A7C15ULL * (index + 1))};
}

DensityMatrix ginibre_density(int d, Seed seed) {
  SplitMix64 rng(seed);
  Matrix g = ginibre(d, d, rng);
  Matrix gram = g * g.adjoint();
  gram /= gram.trace().real();
  // Symmetrize away the last-bit asymmetry of the float product.
  gram = 0.5 * (gram + gram.adjoint().eval());
  return DensityMatrix::from_matrix(gram);
}

Observable random_hermitian(int d, Seed seed) {
  SplitMix64 rng(seed);
  Matrix g = ginibre(d, d, rng);
  return Observable(0.5 * (g + g.adjoint().eval()));
}

Matrix random_operator(int d, Seed seed) {
  SplitMix64 rng(seed);
  return ginibre(d, d, rng);
}

UnitaryOperator haar_unitary(int d, Seed seed) {
  SplitMix64 rng(seed);
  Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of R's diagonal makes the distribution Haar.
  for (int i = 0; i < d; ++i) {
    Complex rii = r(i, i);
    Complex phase = (std::abs(rii) == 0.0) ? Complex(1, 0) : rii / std::abs(rii);
    q.col(i) *= phase;
  }
  return UnitaryOperator(q);
}

KrausChannel random_kraus_channel(int d, int n, Seed seed) {
  if (d < 1 || n < 1) {
    throw InvalidParams("random_kraus_channel needs d >= 1 and n >= 1");
  }
  SplitMix64 rng(seed);
  Matrix g = ginibre(n * d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n * d, d);
  std::vector<Matrix> kraus;
  kraus.reserve(n);
  for (int i = 0; i < n; ++i) {
    kraus.push_back(q.block(i * d, 0, d, d));
  }
  return KrausChannel::create("random", std::move(kraus));
}

}  // namespace skewlab
