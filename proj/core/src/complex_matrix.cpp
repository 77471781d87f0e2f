#include "skewlab/complex_matrix.hpp"

#include <cmath>

namespace skewlab {

void require_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimMismatch("matrix must be square with dim >= 1, got " +
                      std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()));
  }
}

void require_finite(const Matrix& m) {
  if (!m.allFinite()) {
    throw NonFiniteEntry("matrix contains NaN or Inf entries");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimMismatch("dimension mismatch: " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " +
                      std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
  }
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

double unitarity_defect(const Matrix& m) {
  Matrix g = m.adjoint() * m;
  return (g - Matrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix& m, double tol) {
  return m.rows() == m.cols() && unitarity_defect(m) <= tol;
}

HermitianEigen hermitian_eigendecompose(const Matrix& h, double tol) {
  require_square(h);
  require_finite(h);
  if (hermiticity_defect(h) > tol) {
    throw NotHermitian("matrix is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("Hermitian eigensolver failed to converge");
  }
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

double scalar_power(double lambda, double p) {
  if (p == 0.0) return 1.0;
  if (lambda <= 0.0) return 0.0;
  return std::pow(lambda, p);
}

static RealVector clamp_spectrum(const RealVector& values) {
  RealVector out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out[i] < -kEigenvalueClamp) {
      throw NegativeEigenvalue("eigenvalue " + std::to_string(out[i]) +
                               " below PSD tolerance");
    }
    if (out[i] < 0.0) out[i] = 0.0;
  }
  return out;
}

Matrix matrix_power(const HermitianEigen& eig, double p) {
  if (p < 0.0) {
    throw NegativeExponent("matrix_power exponent must be >= 0");
  }
  const Eigen::Index d = eig.values.size();
  if (p == 0.0) return Matrix::Identity(d, d);
  RealVector lambda = clamp_spectrum(eig.values);
  RealVector powered(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    powered[i] = scalar_power(lambda[i], p);
  }
  return eig.vectors * powered.asDiagonal() * eig.vectors.adjoint();
}

Matrix matrix_power(const Matrix& psd, double p) {
  if (p < 0.0) {
    throw NegativeExponent("matrix_power exponent must be >= 0");
  }
  HermitianEigen eig = hermitian_eigendecompose(psd);
  clamp_spectrum(eig.values);  // reject genuinely negative spectra early
  return matrix_power(eig, p);
}

Matrix commutator(const Matrix& x, const Matrix& y) {
  require_square(x);
  require_same_dim(x, y);
  return x * y - y * x;
}

double frobenius_norm_sq(const Matrix& x) { return x.squaredNorm(); }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimMismatch("matmul: inner dimensions differ");
  }
  return a * b;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  return a + b;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  return a - b;
}

Matrix scale(Complex c, const Matrix& a) { return c * a; }

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix zero(int dim) { return Matrix::Zero(dim, dim); }

}  // namespace skewlab
