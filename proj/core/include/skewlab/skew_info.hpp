#pragma once

#include "skewlab/quantum.hpp"

namespace skewlab {

// Parameter triple of the weighted skew-information family. The weight
// operator is (1-gamma)*rho^alpha + gamma*rho^beta and the residual state
// power rho^{(1-alpha-beta)/2} multiplies the commutator from the right.
struct SkewParams {
  double alpha;
  double beta;
  double gamma;

  // Requires alpha >= 0, beta >= 0, alpha + beta <= 1 (+1e-12 slack for
  // beta = 1 - alpha computed in floating point), 0 <= gamma <= 1.
  SkewParams(double alpha, double beta, double gamma);

  // (1 - alpha - beta) / 2, snapped to exactly 0 when |.| <= 1e-13 so the
  // "power 0 is the identity" convention kicks in for alpha + beta = 1.
  double tail_exponent() const;
};

// (1-gamma)*rho^alpha + gamma*rho^beta
Matrix weight_operator(const DensityMatrix& rho, const SkewParams& p);

// K = 1/2 * || [W, E] * rho^{(1-alpha-beta)/2} ||_F^2, clamped to >= 0.
double skew_info_operator(const DensityMatrix& rho, const Matrix& e,
                          const SkewParams& p);
double skew_info_observable(const DensityMatrix& rho, const Observable& a,
                            const SkewParams& p);
double skew_info_unitary(const DensityMatrix& rho, const UnitaryOperator& u,
                         const SkewParams& p);
// Sum of the per-operator values over the Kraus list.
double skew_info_channel(const DensityMatrix& rho, const KrausChannel& c,
                         const SkewParams& p);

// Independent evaluation path: scalar double sum over the eigenbasis of rho
// (no matrix powers, no matrix products), used to cross-check the operator
// implementation.
double spectral_oracle(const DensityMatrix& rho, const Matrix& e,
                       const SkewParams& p);

// Named special cases of the family.
double wy(const DensityMatrix& rho, const Observable& a);
double wwyd(const DensityMatrix& rho, const Observable& a, double alpha);
double mwwyd(const DensityMatrix& rho, const Matrix& e, double alpha);
double ag_wwyd(const DensityMatrix& rho, const Observable& a, double alpha,
               double gamma);
double ag_mwwyd(const DensityMatrix& rho, const Matrix& e, double alpha,
                double gamma);

}  // namespace skewlab
