#pragma once

#include <Eigen/Dense>
#include <complex>

#include "skewlab/errors.hpp"

namespace skewlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Eigenvalues below this magnitude that come out slightly negative are
// treated as exact zeros (fractional powers of PSD matrices built from
// floating-point states would otherwise throw).
inline constexpr double kEigenvalueClamp = 1e-12;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, input = V diag(values) V†
};

void require_square(const Matrix& m);
void require_finite(const Matrix& m);
void require_same_dim(const Matrix& a, const Matrix& b);

// max-abs entry of M - M†
double hermiticity_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
double unitarity_defect(const Matrix& m);  // max-abs entry of U†U - I
bool is_unitary(const Matrix& m, double tol = kUnitaryTol);

HermitianEigen hermitian_eigendecompose(const Matrix& h,
                                        double tol = kHermitianTol);

// lambda^p with the conventions used throughout: p = 0 maps every value
// (including 0) to 1, and 0^p = 0 for p > 0. lambda must be >= 0.
double scalar_power(double lambda, double p);

// V diag(lambda_i^p) V† for PSD input; eigenvalues in [-1e-12, 0) are
// clamped to 0, anything more negative throws NegativeEigenvalue.
Matrix matrix_power(const Matrix& psd, double p);
Matrix matrix_power(const HermitianEigen& eig, double p);

Matrix commutator(const Matrix& x, const Matrix& y);
double frobenius_norm_sq(const Matrix& x);  // Tr(X†X)

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(Complex c, const Matrix& a);
Matrix adjoint(const Matrix& a);

Matrix identity(int dim);
Matrix zero(int dim);

}  // namespace skewlab
