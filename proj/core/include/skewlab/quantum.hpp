#pragma once

#include <array>
#include <string>
#include <vector>

#include "skewlab/complex_matrix.hpp"

namespace skewlab {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-9;
inline constexpr double kBlochTol = 1e-12;

class DensityMatrix {
 public:
  // Validates Hermiticity (1e-10), unit trace (1e-10) and spectrum
  // >= -1e-12; caches the eigendecomposition for repeated fractional powers.
  static DensityMatrix from_matrix(const Matrix& m);

  const Matrix& matrix() const { return matrix_; }
  const HermitianEigen& eigen() const { return eigen_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  // rho^p via the cached spectrum (p = 0 gives the identity, 0^p = 0).
  Matrix power(double p) const { return matrix_power(eigen_, p); }

 private:
  DensityMatrix(Matrix m, HermitianEigen eig)
      : matrix_(std::move(m)), eigen_(std::move(eig)) {}
  Matrix matrix_;
  HermitianEigen eigen_;
};

class Observable {
 public:
  explicit Observable(Matrix m);  // requires Hermitian within 1e-10
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix m);  // requires U†U = I within 1e-10
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
};

class KrausChannel {
 public:
  // Rejects lists whose completeness residual ||sum E†E - I||_F exceeds
  // 1e-9. The operator order is preserved; nothing is renormalized.
  static KrausChannel create(std::string name, std::vector<Matrix> kraus);

  const std::string& name() const { return name_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  int dim() const { return static_cast<int>(kraus_.front().rows()); }
  int size() const { return static_cast<int>(kraus_.size()); }

 private:
  KrausChannel(std::string name, std::vector<Matrix> kraus)
      : name_(std::move(name)), kraus_(std::move(kraus)) {}
  std::string name_;
  std::vector<Matrix> kraus_;
};

struct BlochVector {
  std::array<double, 3> r;
  explicit BlochVector(std::array<double, 3> v);  // |r| <= 1 + 1e-12
  double norm() const;
};

DensityMatrix density_from_bloch(const BlochVector& r);

Observable pauli(int j);      // j in {1,2,3}
Matrix pauli_matrix(int j);

KrausChannel amplitude_damping(double q);  // 0 <= q < 1
KrausChannel phase_damping(double q);
KrausChannel bit_flip(double q);

// ||sum E†E - I||_F of a raw operator list (no validation applied).
double completeness_residual(const std::vector<Matrix>& kraus);
double validate_channel(const KrausChannel& channel);

// Two readings exist for the third rotation: the z-rotation
// exp(i*pi*sigma_z/8) = diag(e^{i pi/8}, e^{-i pi/8}), or the phased matrix
// e^{i pi/8} * sigma_z. Both are unitary; the default is the z-rotation and
// the phased variant stays available for comparison runs.
enum class U3Variant { z_rotation, phased_sigma_z };
std::array<UnitaryOperator, 3> rotation_unitaries(
    U3Variant v = U3Variant::z_rotation);

}  // namespace skewlab
