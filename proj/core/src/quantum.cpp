#include "skewlab/quantum.hpp"

#include <cmath>

namespace skewlab {

DensityMatrix DensityMatrix::from_matrix(const Matrix& m) {
  require_square(m);
  require_finite(m);
  if (hermiticity_defect(m) > kHermitianTol) {
    throw NotHermitian("density matrix is not Hermitian within tolerance");
  }
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol ||
      std::abs(m.trace().imag()) > kTraceTol) {
    throw InvalidParams("density matrix trace must be 1, got " +
                        std::to_string(trace));
  }
  HermitianEigen eig = hermitian_eigendecompose(m);
  if (eig.values.minCoeff() < -kEigenvalueClamp) {
    throw NegativeEigenvalue("density matrix has eigenvalue " +
                             std::to_string(eig.values.minCoeff()));
  }
  return DensityMatrix(m, std::move(eig));
}

Observable::Observable(Matrix m) : matrix_(std::move(m)) {
  require_square(matrix_);
  require_finite(matrix_);
  if (hermiticity_defect(matrix_) > kHermitianTol) {
    throw NotHermitian("observable is not Hermitian within tolerance");
  }
}

UnitaryOperator::UnitaryOperator(Matrix m) : matrix_(std::move(m)) {
  require_square(matrix_);
  require_finite(matrix_);
  if (unitarity_defect(matrix_) > kUnitaryTol) {
    throw NotUnitary("operator is not unitary within tolerance");
  }
}

KrausChannel KrausChannel::create(std::string name,
                                  std::vector<Matrix> kraus) {
  if (kraus.empty()) {
    throw TooFewElements("Kraus list must contain at least one operator");
  }
  for (const Matrix& e : kraus) {
    require_square(e);
    require_finite(e);
    require_same_dim(kraus.front(), e);
  }
  const double residual = completeness_residual(kraus);
  if (residual > kCompletenessTol) {
    throw IncompleteChannel("channel '" + name +
                            "' completeness residual " +
                            std::to_string(residual));
  }
  return KrausChannel(std::move(name), std::move(kraus));
}

BlochVector::BlochVector(std::array<double, 3> v) : r(v) {
  if (norm() > 1.0 + kBlochTol) {
    throw BlochNormExceeded("Bloch vector norm " + std::to_string(norm()) +
                            " exceeds 1");
  }
}

double BlochVector::norm() const {
  return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
}

DensityMatrix density_from_bloch(const BlochVector& r) {
  Matrix m = 0.5 * Matrix::Identity(2, 2);
  for (int j = 0; j < 3; ++j) {
    m += 0.5 * r.r[j] * pauli_matrix(j + 1);
  }
  return DensityMatrix::from_matrix(m);
}

Matrix pauli_matrix(int j) {
  Matrix m(2, 2);
  switch (j) {
    case 1:
      m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
      break;
    case 2:
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case 3:
      m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
      break;
    default:
      throw BadIndex("Pauli index must be 1, 2 or 3, got " +
                     std::to_string(j));
  }
  return m;
}

Observable pauli(int j) { return Observable(pauli_matrix(j)); }

static void require_probability(double q) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw BadProbability("damping parameter must satisfy 0 <= q < 1, got " +
                         std::to_string(q));
  }
}

KrausChannel amplitude_damping(double q) {
  require_probability(q);
  Matrix a1(2, 2), a2(2, 2);
  a1 << 1, 0, 0, std::sqrt(1.0 - q);
  a2 << 0, 0, 0, std::sqrt(q);
  return KrausChannel::create("amplitude_damping", {a1, a2});
}

KrausChannel phase_damping(double q) {
  require_probability(q);
  Matrix b1(2, 2), b2(2, 2);
  b1 << 1, 0, 0, std::sqrt(1.0 - q);
  b2 << 0, std::sqrt(q), 0, 0;
  return KrausChannel::create("phase_damping", {b1, b2});
}

KrausChannel bit_flip(double q) {
  require_probability(q);
  Matrix c1 = std::sqrt(q) * Matrix::Identity(2, 2);
  Matrix c2 = std::sqrt(1.0 - q) * pauli_matrix(1);
  return KrausChannel::create("bit_flip", {c1, c2});
}

double completeness_residual(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) return 0.0;
  const Eigen::Index d = kraus.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& e : kraus) {
    sum += e.adjoint() * e;
  }
  return std::sqrt(frobenius_norm_sq(sum - Matrix::Identity(d, d)));
}

double validate_channel(const KrausChannel& channel) {
  return completeness_residual(channel.kraus());
}

std::array<UnitaryOperator, 3> rotation_unitaries(U3Variant v) {
  const double c = std::cos(M_PI / 8.0);
  const double s = std::sin(M_PI / 8.0);
  Matrix u1(2, 2), u2(2, 2), u3(2, 2);
  u1 << Complex(c, 0), Complex(0, s), Complex(0, s), Complex(c, 0);
  u2 << Complex(c, 0), Complex(s, 0), Complex(-s, 0), Complex(c, 0);
  const Complex phase(c, s);  // e^{i*pi/8}
  if (v == U3Variant::z_rotation) {
    u3 << phase, Complex(0, 0), Complex(0, 0), std::conj(phase);
  } else {
    u3 << phase, Complex(0, 0), Complex(0, 0), -phase;
  }
  return {UnitaryOperator(u1), UnitaryOperator(u2), UnitaryOperator(u3)};
}

}  // namespace skewlab
