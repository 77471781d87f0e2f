#include "skewlab/skew_info.hpp"

#include <cmath>

namespace skewlab {

namespace {

constexpr double kParamSlack = 1e-12;
constexpr double kTailSnap = 1e-13;
constexpr double kValueClamp = 1e-12;

double clamp_nonnegative(double v) {
  if (v >= 0.0) return v;
  if (v >= -kValueClamp) return 0.0;
  throw InvalidParams("skew information evaluated to " + std::to_string(v));
}

}  // namespace

SkewParams::SkewParams(double a, double b, double g)
    : alpha(a), beta(b), gamma(g) {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw InvalidParams("skew parameters require alpha >= 0 and beta >= 0");
  }
  if (alpha + beta > 1.0 + kParamSlack) {
    throw InvalidParams("skew parameters require alpha + beta <= 1, got " +
                        std::to_string(alpha + beta));
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InvalidParams("skew parameters require 0 <= gamma <= 1, got " +
                        std::to_string(gamma));
  }
}

double SkewParams::tail_exponent() const {
  const double t = 0.5 * (1.0 - alpha - beta);
  return (std::abs(t) <= kTailSnap) ? 0.0 : t;
}

Matrix weight_operator(const DensityMatrix& rho, const SkewParams& p) {
  return (1.0 - p.gamma) * rho.power(p.alpha) + p.gamma * rho.power(p.beta);
}

double skew_info_operator(const DensityMatrix& rho, const Matrix& e,
                          const SkewParams& p) {
  require_square(e);
  require_same_dim(rho.matrix(), e);
  require_finite(e);
  const Matrix w = weight_operator(rho, p);
  const Matrix tail = rho.power(p.tail_exponent());
  return clamp_nonnegative(0.5 * frobenius_norm_sq(commutator(w, e) * tail));
}

double skew_info_observable(const DensityMatrix& rho, const Observable& a,
                            const SkewParams& p) {
  return skew_info_operator(rho, a.matrix(), p);
}

double skew_info_unitary(const DensityMatrix& rho, const UnitaryOperator& u,
                         const SkewParams& p) {
  return skew_info_operator(rho, u.matrix(), p);
}

double skew_info_channel(const DensityMatrix& rho, const KrausChannel& c,
                         const SkewParams& p) {
  double sum = 0.0;
  for (const Matrix& e : c.kraus()) {
    sum += skew_info_operator(rho, e, p);
  }
  return sum;
}

double spectral_oracle(const DensityMatrix& rho, const Matrix& e,
                       const SkewParams& p) {
  require_square(e);
  require_same_dim(rho.matrix(), e);
  const int d = rho.dim();
  const HermitianEigen& eig = rho.eigen();

  // Clamped spectrum, then everything below is plain scalar arithmetic.
  std::vector<double> lambda(d);
  for (int i = 0; i < d; ++i) {
    lambda[i] = eig.values[i] < 0.0 ? 0.0 : eig.values[i];
  }

  // E in the eigenbasis, element by element.
  std::vector<std::vector<Complex>> et(d, std::vector<Complex>(d));
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      Complex acc(0, 0);
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          acc += std::conj(eig.vectors(a, k)) * e(a, b) * eig.vectors(b, j);
        }
      }
      et[k][j] = acc;
    }
  }

  const double tail_p = 2.0 * p.tail_exponent();  // exponent on lambda_j
  std::vector<double> pow_a(d), pow_b(d), pow_t(d);
  for (int i = 0; i < d; ++i) {
    pow_a[i] = scalar_power(lambda[i], p.alpha);
    pow_b[i] = scalar_power(lambda[i], p.beta);
    pow_t[i] = scalar_power(lambda[i], tail_p);
  }

  double sum = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      const double w = (1.0 - p.gamma) * (pow_a[k] - pow_a[j]) +
                       p.gamma * (pow_b[k] - pow_b[j]);
      sum += w * w * std::norm(et[k][j]) * pow_t[j];
    }
  }
  return 0.5 * sum;
}

double wy(const DensityMatrix& rho, const Observable& a) {
  return wwyd(rho, a, 0.5);
}

double wwyd(const DensityMatrix& rho, const Observable& a, double alpha) {
  return ag_wwyd(rho, a, alpha, 0.5);
}

double mwwyd(const DensityMatrix& rho, const Matrix& e, double alpha) {
  return ag_mwwyd(rho, e, alpha, 0.5);
}

double ag_wwyd(const DensityMatrix& rho, const Observable& a, double alpha,
               double gamma) {
  return ag_mwwyd(rho, a.matrix(), alpha, gamma);
}

double ag_mwwyd(const DensityMatrix& rho, const Matrix& e, double alpha,
                double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidParams("alpha must lie in [0, 1], got " +
                        std::to_string(alpha));
  }
  return skew_info_operator(rho, e, SkewParams(alpha, 1.0 - alpha, gamma));
}

}  // namespace skewlab
