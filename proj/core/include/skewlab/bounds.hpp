#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/skew_info.hpp"

namespace skewlab {

enum class WeightRegime { m_ge_l, l_ge_m, l_gt_m };

struct WeightParams {
  double M;
  double L;
  WeightRegime regime;
  // Requires M > 0, L > 0 and values consistent with the declared regime.
  WeightParams(double M, double L, WeightRegime regime);
};

struct WeightTriple {
  WeightParams w1;  // regime M >= L, used by bound family 1
  WeightParams w2;  // regime L >= M, used by bound family 2
  WeightParams w3;  // regime L > M, used by bound family 3
  // The worked examples use M=2, L=1 for family 1 and M=1, L=2 for the
  // other two.
  static WeightTriple defaults();
};

// Table of the quadratic quantities entering every bound: one value per
// element, per signed pair (t < s), and for the full sum. The same table
// shape serves skew-information values and raw squared vector norms — the
// bound expressions are homogeneous of degree one in the entries, so the
// inequalities read identically for both fillings.
struct PairwiseKTable {
  int n_elements = 0;
  std::vector<double> k_single;  // [t]
  std::vector<double> k_plus;    // packed t < s
  std::vector<double> k_minus;   // packed t < s
  double k_total = 0.0;

  static int pair_index(int t, int s, int n);
  double plus(int t, int s) const;
  double minus(int t, int s) const;
  double sum_single() const;
  void validate() const;  // sizes consistent, all entries >= 0
};

// Ordered map of bound values. Insertion order doubles as the tie-break
// order for winner(): the first entry attaining the maximum wins.
class BoundReport {
 public:
  void add(std::string id, double value);
  bool has(const std::string& id) const;
  double at(const std::string& id) const;
  const std::vector<std::pair<std::string, double>>& entries() const {
    return entries_;
  }
  const std::string& winner() const;
  double winner_value() const;
  double max_over(std::initializer_list<const char*> ids) const;

  std::string note;

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

BoundReport merge(const BoundReport& first, const BoundReport& second);

// The three tightened lower-bound families. Family 1 needs regime M >= L,
// family 2 needs L >= M, family 3 needs L > M (RegimeViolation otherwise).
double tightened_bound_1(const PairwiseKTable& t, const WeightParams& w);
double tightened_bound_2(const PairwiseKTable& t, const WeightParams& w);
double tightened_bound_3(const PairwiseKTable& t, const WeightParams& w);

// The earlier bounds the tightened ones are compared against. Family 1 is
// defined only for N > 2 (it divides by N - 2).
double prior_bound_1(const PairwiseKTable& t);
double prior_bound_2(const PairwiseKTable& t);
// Phase x = 0 puts the square-of-root aggregate on the plus pairs, x = 1 on
// the minus pairs; prior_bound_3 takes the max of the two phases.
double prior_bound_3_phase(const PairwiseKTable& t, int x);
double prior_bound_3(const PairwiseKTable& t);

// ids: lb1 (only when N > 2), lb2, lb3.
BoundReport prior_bounds_observables(const PairwiseKTable& t);
// ids: lbbar1, lbbar2, lbbar3, lbbar (their max).
BoundReport tightened_bounds_observables(const PairwiseKTable& t,
                                         const WeightTriple& w);
// ids: lb1?, lb2, lb3, lb, lbbar1, lbbar2, lbbar3, lbtilde. The prior
// entries are the observable-form inequalities evaluated on the unitary
// table; the report note records that they are reconstructed comparisons.
BoundReport unitary_bounds(const PairwiseKTable& t, const WeightTriple& w);

PairwiseKTable build_k_table(const DensityMatrix& rho,
                             const std::vector<Matrix>& elements,
                             const SkewParams& p);
PairwiseKTable build_table_observables(const DensityMatrix& rho,
                                       const std::vector<Observable>& a,
                                       const SkewParams& p);
PairwiseKTable build_table_unitaries(const DensityMatrix& rho,
                                     const std::vector<UnitaryOperator>& u,
                                     const SkewParams& p);

// Raw squared-norm filling for direct checks of the vector inequalities.
PairwiseKTable table_from_vectors(const std::vector<Eigen::VectorXcd>& u);

}  // namespace skewlab
