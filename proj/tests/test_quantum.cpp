#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "skewlab/quantum.hpp"

using namespace skewlab;

namespace {

constexpr double kRoot2 = 1.4142135623730951;

}  // namespace

TEST_CASE("density matrix validation") {
  Matrix good(2, 2);
  good << Complex(0.25, 0), Complex(0, 0), Complex(0, 0), Complex(0.75, 0);
  const DensityMatrix rho = DensityMatrix::from_matrix(good);
  REQUIRE(rho.dim() == 2);
  REQUIRE((rho.matrix() - good).norm() == 0.0);

  Matrix not_hermitian(2, 2);
  not_hermitian << Complex(0.5, 0), Complex(0.5, 0), Complex(0, 0),
      Complex(0.5, 0);
  REQUIRE_THROWS_AS(DensityMatrix::from_matrix(not_hermitian), NotHermitian);

  Matrix bad_trace = Matrix::Identity(2, 2);
  REQUIRE_THROWS(DensityMatrix::from_matrix(bad_trace));

  Matrix negative(2, 2);
  negative << Complex(1.5, 0), Complex(0, 0), Complex(0, 0), Complex(-0.5, 0);
  REQUIRE_THROWS_AS(DensityMatrix::from_matrix(negative), NegativeEigenvalue);
}

TEST_CASE("fractional powers of a density matrix use its spectrum") {
  Matrix diag(2, 2);
  diag << Complex(0.25, 0), Complex(0, 0), Complex(0, 0), Complex(0.75, 0);
  const DensityMatrix rho = DensityMatrix::from_matrix(diag);
  const Matrix root = rho.power(0.5);
  REQUIRE(std::abs(root(0, 0).real() - 0.5) < 1e-15);
  REQUIRE(std::abs(root(1, 1).real() - 0.8660254037844386) < 1e-15);
  REQUIRE((rho.power(0.0) - Matrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("bloch vector to density matrix") {
  // r = (sqrt(2)/2, 0, sqrt(2)/2) is a pure state on the tilted circle used
  // by the first worked example at theta = 0.
  const BlochVector r({kRoot2 / 2.0, 0.0, kRoot2 / 2.0});
  REQUIRE(std::abs(r.norm() - 1.0) < 1e-12);
  const DensityMatrix rho = density_from_bloch(r);
  REQUIRE(std::abs(rho.matrix()(0, 0).real() - (2.0 + kRoot2) / 4.0) < 1e-15);
  REQUIRE(std::abs(rho.matrix()(1, 1).real() - (2.0 - kRoot2) / 4.0) < 1e-15);
  REQUIRE(std::abs(rho.matrix()(0, 1).real() - kRoot2 / 4.0) < 1e-15);
  REQUIRE(std::abs(rho.matrix()(0, 1).imag()) == 0.0);
  // Purity: eigenvalues are {0, 1}.
  REQUIRE(std::abs((rho.matrix() * rho.matrix() - rho.matrix()).norm()) <
          1e-14);

  REQUIRE_THROWS_AS(BlochVector({0.8, 0.8, 0.8}), BlochNormExceeded);
}

TEST_CASE("pauli matrices") {
  REQUIRE(pauli_matrix(1)(0, 1) == Complex(1, 0));
  REQUIRE(pauli_matrix(1)(1, 0) == Complex(1, 0));
  REQUIRE(pauli_matrix(2)(0, 1) == Complex(0, -1));
  REQUIRE(pauli_matrix(2)(1, 0) == Complex(0, 1));
  REQUIRE(pauli_matrix(3)(0, 0) == Complex(1, 0));
  REQUIRE(pauli_matrix(3)(1, 1) == Complex(-1, 0));
  for (int j = 1; j <= 3; ++j) {
    REQUIRE((pauli_matrix(j) * pauli_matrix(j) - Matrix::Identity(2, 2))
                .norm() == 0.0);
  }
  REQUIRE_THROWS_AS(pauli(0), BadIndex);
  REQUIRE_THROWS_AS(pauli(4), BadIndex);
}

TEST_CASE("named channels are complete across the noise range") {
  for (int k = 0; k <= 9; ++k) {
    const double q = 0.1 * k;
    REQUIRE(validate_channel(amplitude_damping(q)) < 1e-12);
    REQUIRE(validate_channel(phase_damping(q)) < 1e-12);
    REQUIRE(validate_channel(bit_flip(q)) < 1e-12);
  }
  REQUIRE_THROWS_AS(amplitude_damping(-0.1), BadProbability);
  REQUIRE_THROWS_AS(amplitude_damping(1.0), BadProbability);
}

TEST_CASE("damping and flip operator entries") {
  const KrausChannel ad = amplitude_damping(0.3);
  REQUIRE(ad.size() == 2);
  REQUIRE(std::abs(ad.kraus()[0](0, 0).real() - 1.0) < 1e-15);
  REQUIRE(std::abs(ad.kraus()[0](1, 1).real() - std::sqrt(0.7)) < 1e-15);
  REQUIRE(std::abs(ad.kraus()[1](1, 1).real() - std::sqrt(0.3)) < 1e-15);
  REQUIRE(std::abs(ad.kraus()[1](0, 0)) == 0.0);

  const KrausChannel pd = phase_damping(0.3);
  REQUIRE(std::abs(pd.kraus()[1](0, 1).real() - std::sqrt(0.3)) < 1e-15);
  REQUIRE(std::abs(pd.kraus()[1](1, 1)) == 0.0);

  const KrausChannel bf = bit_flip(0.3);
  REQUIRE(std::abs(bf.kraus()[0](0, 0).real() - std::sqrt(0.3)) < 1e-15);
  REQUIRE(std::abs(bf.kraus()[1](0, 1).real() - std::sqrt(0.7)) < 1e-15);
}

TEST_CASE("completeness residual of a duplicated identity grows as sqrt(d)") {
  for (int d : {2, 3, 4}) {
    const std::vector<Matrix> twice = {Matrix::Identity(d, d),
                                       Matrix::Identity(d, d)};
    REQUIRE(std::abs(completeness_residual(twice) - std::sqrt(double(d))) <
            1e-12);
  }
}

TEST_CASE("channel creation rejects incomplete operator lists") {
  const std::vector<Matrix> half = {0.5 * Matrix::Identity(2, 2)};
  REQUIRE_THROWS_AS(KrausChannel::create("half", half), IncompleteChannel);
  const KrausChannel ok =
      KrausChannel::create("id", {Matrix::Identity(2, 2)});
  REQUIRE(ok.size() == 1);
  REQUIRE(ok.name() == "id");
}

TEST_CASE("operator wrappers validate their defining property") {
  Matrix not_unitary(2, 2);
  not_unitary << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
  REQUIRE_THROWS_AS(UnitaryOperator(not_unitary), NotUnitary);
  Matrix not_hermitian = not_unitary;
  REQUIRE_THROWS_AS(Observable(not_hermitian), NotHermitian);
  REQUIRE(Observable(pauli_matrix(1)).dim() == 2);
}

TEST_CASE("the three fixed rotations") {
  const double c = std::cos(M_PI / 8.0);
  const double s = std::sin(M_PI / 8.0);
  const auto def = rotation_unitaries();
  REQUIRE(std::abs(def[0].matrix()(0, 0).real() - c) < 1e-15);
  REQUIRE(std::abs(def[0].matrix()(0, 1).imag() - s) < 1e-15);
  REQUIRE(std::abs(def[1].matrix()(0, 1).real() - s) < 1e-15);
  REQUIRE(std::abs(def[1].matrix()(1, 0).real() + s) < 1e-15);
  // Default third rotation: diag(e^{i pi/8}, e^{-i pi/8}).
  REQUIRE(std::abs(def[2].matrix()(0, 0) - Complex(c, s)) < 1e-15);
  REQUIRE(std::abs(def[2].matrix()(1, 1) - Complex(c, -s)) < 1e-15);
  // Phased variant: diag(e^{i pi/8}, -e^{i pi/8}).
  const auto phased = rotation_unitaries(U3Variant::phased_sigma_z);
  REQUIRE(std::abs(phased[2].matrix()(1, 1) - Complex(-c, -s)) < 1e-15);
  // The first two rotations are shared.
  REQUIRE((phased[0].matrix() - def[0].matrix()).norm() == 0.0);
  REQUIRE((phased[1].matrix() - def[1].matrix()).norm() == 0.0);
}
