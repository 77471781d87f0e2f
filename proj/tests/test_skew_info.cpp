#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "skewlab/random.hpp"
#include "skewlab/skew_info.hpp"

using namespace skewlab;

namespace {

DensityMatrix diag_state() {
  Matrix m(2, 2);
  m << Complex(0.25, 0), Complex(0, 0), Complex(0, 0), Complex(0.75, 0);
  return DensityMatrix::from_matrix(m);
}

DensityMatrix pure_zero_state() {
  Matrix m(2, 2);
  m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0);
  return DensityMatrix::from_matrix(m);
}

}  // namespace

TEST_CASE("parameter validation") {
  REQUIRE_NOTHROW(SkewParams(0.5, 0.5, 0.5));
  REQUIRE_NOTHROW(SkewParams(0.0, 1.0, 0.0));
  REQUIRE_THROWS_AS(SkewParams(-0.1, 0.5, 0.5), InvalidParams);
  REQUIRE_THROWS_AS(SkewParams(0.5, -0.1, 0.5), InvalidParams);
  REQUIRE_THROWS_AS(SkewParams(0.7, 0.7, 0.5), InvalidParams);
  REQUIRE_THROWS_AS(SkewParams(0.5, 0.5, 1.5), InvalidParams);
  REQUIRE_THROWS_AS(SkewParams(0.5, 0.5, -0.5), InvalidParams);
}

TEST_CASE("tail exponent snaps the alpha + beta = 1 case to zero") {
  REQUIRE(SkewParams(0.3, 0.7, 0.5).tail_exponent() == 0.0);
  const double alpha = 0.1;
  REQUIRE(SkewParams(alpha, 1.0 - alpha, 0.2).tail_exponent() == 0.0);
  REQUIRE(std::abs(SkewParams(0.3, 0.3, 0.5).tail_exponent() - 0.2) < 1e-15);
}

TEST_CASE("pure basis state against the first Pauli gives exactly one") {
  const DensityMatrix rho = pure_zero_state();
  const Matrix e = pauli_matrix(1);
  for (double gamma : {0.0, 0.3, 1.0}) {
    const SkewParams p(0.5, 0.5, gamma);
    REQUIRE(std::abs(skew_info_operator(rho, e, p) - 1.0) < 1e-14);
    REQUIRE(std::abs(spectral_oracle(rho, e, p) - 1.0) < 1e-14);
  }
}

TEST_CASE("frozen value on a mixed diagonal state") {
  // Half-exponent value against sigma_1 for diag(1/4, 3/4): (2 - sqrt(3))/2.
  const double expected = (2.0 - std::sqrt(3.0)) / 2.0;
  const DensityMatrix rho = diag_state();
  const SkewParams p(0.5, 0.5, 0.5);
  REQUIRE(std::abs(skew_info_operator(rho, pauli_matrix(1), p) - expected) <
          1e-14);
  REQUIRE(std::abs(spectral_oracle(rho, pauli_matrix(1), p) - expected) <
          1e-14);
  REQUIRE(std::abs(wy(rho, pauli(1)) - expected) < 1e-14);
}

TEST_CASE("operator and spectral paths agree on fixed mixed instances") {
  for (int d : {2, 3, 4}) {
    const DensityMatrix rho = ginibre_density(d, Seed{static_cast<std::uint64_t>(7 + d)});
    const Matrix e = random_operator(d, Seed{static_cast<std::uint64_t>(17 + d)});
    for (const SkewParams& p :
         {SkewParams(0.3, 0.4, 0.6), SkewParams(0.0, 0.0, 0.5),
          SkewParams(1.0, 0.0, 0.25), SkewParams(0.2, 0.8, 0.0)}) {
      const double a = skew_info_operator(rho, e, p);
      const double b = spectral_oracle(rho, e, p);
      REQUIRE(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("swapping exponents while reflecting the mixing weight") {
  const DensityMatrix rho = ginibre_density(3, Seed{21});
  const Matrix e = random_operator(3, Seed{22});
  const SkewParams p(0.2, 0.5, 0.7);
  const SkewParams swapped(0.5, 0.2, 0.3);
  REQUIRE(std::abs(skew_info_operator(rho, e, p) -
                   skew_info_operator(rho, e, swapped)) < 1e-12);
}

TEST_CASE("named special cases collapse onto the general form") {
  const DensityMatrix rho = diag_state();
  const Observable a = pauli(2);
  const double alpha = 0.3;
  // gamma = 1/2 makes the convex weight the arithmetic mean.
  REQUIRE(ag_wwyd(rho, a, alpha, 0.5) == wwyd(rho, a, alpha));
  REQUIRE(ag_mwwyd(rho, a.matrix(), alpha, 0.5) ==
          mwwyd(rho, a.matrix(), alpha));
  // alpha = 1/2 collapses the mean onto the square root.
  REQUIRE(wwyd(rho, a, 0.5) == wy(rho, a));
  // Observable and operator forms coincide on Hermitian input.
  REQUIRE(skew_info_observable(rho, a, SkewParams(0.3, 0.7, 0.5)) ==
          skew_info_operator(rho, a.matrix(), SkewParams(0.3, 0.7, 0.5)));
}

TEST_CASE("weight operator limits") {
  const DensityMatrix rho = diag_state();
  const SkewParams left(0.3, 0.6, 0.0);
  REQUIRE((weight_operator(rho, left) - rho.power(0.3)).norm() == 0.0);
  const SkewParams right(0.3, 0.6, 1.0);
  REQUIRE((weight_operator(rho, right) - rho.power(0.6)).norm() == 0.0);
}

TEST_CASE("identity operator has zero skew information") {
  const DensityMatrix rho = ginibre_density(3, Seed{5});
  const SkewParams p(0.25, 0.5, 0.75);
  REQUIRE(skew_info_operator(rho, Matrix::Identity(3, 3), p) == 0.0);
}

TEST_CASE("channel value sums the per-operator values") {
  const DensityMatrix rho = ginibre_density(2, Seed{9});
  const KrausChannel ad = amplitude_damping(0.3);
  const SkewParams p(0.25, 0.75, 0.5);
  double by_hand = 0.0;
  for (const Matrix& k : ad.kraus()) {
    by_hand += skew_info_operator(rho, k, p);
  }
  REQUIRE(skew_info_channel(rho, ad, p) == by_hand);
}

TEST_CASE("pure states make the value independent of the exponents") {
  // For a rank-one state the fractional powers all equal the state itself,
  // so any (alpha, beta = 1 - alpha) pair gives the same number.
  const BlochVector r({std::sqrt(0.5), 0.0, std::sqrt(0.5)});
  const DensityMatrix rho = density_from_bloch(r);
  const Matrix e = pauli_matrix(2);
  const double at_02 = ag_mwwyd(rho, e, 0.2, 0.5);
  const double at_07 = ag_mwwyd(rho, e, 0.7, 0.5);
  const double at_half = mwwyd(rho, e, 0.5);
  REQUIRE(std::abs(at_02 - at_07) < 1e-12);
  REQUIRE(std::abs(at_02 - at_half) < 1e-12);
}

TEST_CASE("unitary input uses the same machinery as raw operators") {
  const DensityMatrix rho = ginibre_density(2, Seed{13});
  const UnitaryOperator u = haar_unitary(2, Seed{14});
  const SkewParams p(0.2, 0.3, 0.4);
  REQUIRE(skew_info_unitary(rho, u, p) ==
          skew_info_operator(rho, u.matrix(), p));
}

TEST_CASE("rejects dimension mismatches") {
  const DensityMatrix rho = diag_state();
  REQUIRE_THROWS_AS(
      skew_info_operator(rho, Matrix::Identity(3, 3), SkewParams(0.5, 0.5, 0.5)),
      DimMismatch);
}
