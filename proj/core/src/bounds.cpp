#include "skewlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skewlab {

namespace {

double sqrt_clamped(double v) { return std::sqrt(std::max(v, 0.0)); }

void require_regime(const WeightParams& w, WeightRegime expected,
                    const char* family) {
  if (w.regime != expected) {
    throw RegimeViolation(std::string("bound family ") + family +
                          " called with weights of the wrong regime");
  }
}

double pair_sqrt_sum_plus(const PairwiseKTable& t) {
  double s = 0.0;
  for (double v : t.k_plus) s += sqrt_clamped(v);
  return s;
}

double pair_sqrt_sum_minus(const PairwiseKTable& t) {
  double s = 0.0;
  for (double v : t.k_minus) s += sqrt_clamped(v);
  return s;
}

double pair_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

WeightParams::WeightParams(double m, double l, WeightRegime r)
    : M(m), L(l), regime(r) {
  if (!(M > 0.0) || !(L > 0.0)) {
    throw RegimeViolation("weights must satisfy M > 0 and L > 0");
  }
  switch (regime) {
    case WeightRegime::m_ge_l:
      if (!(M >= L)) throw RegimeViolation("regime requires M >= L");
      break;
    case WeightRegime::l_ge_m:
      if (!(L >= M)) throw RegimeViolation("regime requires L >= M");
      break;
    case WeightRegime::l_gt_m:
      if (!(L > M)) throw RegimeViolation("regime requires L > M");
      break;
  }
}

WeightTriple WeightTriple::defaults() {
  return WeightTriple{WeightParams(2.0, 1.0, WeightRegime::m_ge_l),
                      WeightParams(1.0, 2.0, WeightRegime::l_ge_m),
                      WeightParams(1.0, 2.0, WeightRegime::l_gt_m)};
}

int PairwiseKTable::pair_index(int t, int s, int n) {
  return t * (2 * n - t - 1) / 2 + (s - t - 1);
}

double PairwiseKTable::plus(int t, int s) const {
  return k_plus[pair_index(t, s, n_elements)];
}

double PairwiseKTable::minus(int t, int s) const {
  return k_minus[pair_index(t, s, n_elements)];
}

double PairwiseKTable::sum_single() const {
  double s = 0.0;
  for (double v : k_single) s += v;
  return s;
}

void PairwiseKTable::validate() const {
  const int n = n_elements;
  const size_t pairs = static_cast<size_t>(n) * (n - 1) / 2;
  if (n < 2) throw TooFewElements("pair table needs at least two elements");
  if (k_single.size() != static_cast<size_t>(n) || k_plus.size() != pairs ||
      k_minus.size() != pairs) {
    throw InvalidParams("pair table has inconsistent sizes");
  }
  auto nonneg = [](double v) { return v >= 0.0; };
  if (!std::all_of(k_single.begin(), k_single.end(), nonneg) ||
      !std::all_of(k_plus.begin(), k_plus.end(), nonneg) ||
      !std::all_of(k_minus.begin(), k_minus.end(), nonneg) ||
      k_total < 0.0) {
    throw InvalidParams("pair table entries must be nonnegative");
  }
}

void BoundReport::add(std::string id, double value) {
  entries_.emplace_back(std::move(id), value);
}

bool BoundReport::has(const std::string& id) const {
  for (const auto& [k, v] : entries_) {
    if (k == id) return true;
  }
  return false;
}

double BoundReport::at(const std::string& id) const {
  for (const auto& [k, v] : entries_) {
    if (k == id) return v;
  }
  throw BadIndex("no bound named '" + id + "' in report");
}

const std::string& BoundReport::winner() const {
  if (entries_.empty()) throw BadIndex("empty bound report has no winner");
  size_t best = 0;
  for (size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].second > entries_[best].second) best = i;
  }
  return entries_[best].first;
}

double BoundReport::winner_value() const { return at(winner()); }

double BoundReport::max_over(std::initializer_list<const char*> ids) const {
  double m = -std::numeric_limits<double>::infinity();
  for (const char* id : ids) {
    if (has(id)) m = std::max(m, at(id));
  }
  return m;
}

BoundReport merge(const BoundReport& first, const BoundReport& second) {
  BoundReport out = first;
  for (const auto& [k, v] : second.entries()) {
    out.add(k, v);
  }
  if (!second.note.empty()) {
    out.note = out.note.empty() ? second.note : out.note + "; " + second.note;
  }
  return out;
}

double tightened_bound_1(const PairwiseKTable& t, const WeightParams& w) {
  require_regime(w, WeightRegime::m_ge_l, "1");
  t.validate();
  const double n = t.n_elements;
  const double root_sum = pair_sqrt_sum_plus(t);
  const double numerator = 2.0 * w.L / (n * (n - 1.0)) * root_sum * root_sum +
                           w.M * pair_sum(t.k_minus) +
                           (w.M - w.L) * t.k_total;
  return numerator / (w.M * n + (n - 2.0) * w.L);
}

double tightened_bound_2(const PairwiseKTable& t, const WeightParams& w) {
  require_regime(w, WeightRegime::l_ge_m, "2");
  t.validate();
  const double n = t.n_elements;
  const double root_sum = pair_sqrt_sum_minus(t);
  const double numerator = 2.0 * w.M / (n * (n - 1.0)) * root_sum * root_sum +
                           w.L * pair_sum(t.k_plus) +
                           (w.M - w.L) * t.k_total;
  return numerator / (w.M * n + (n - 2.0) * w.L);
}

double tightened_bound_3(const PairwiseKTable& t, const WeightParams& w) {
  require_regime(w, WeightRegime::l_gt_m, "3");
  t.validate();
  const double n = t.n_elements;
  const double root_sum = pair_sqrt_sum_plus(t);
  const double numerator =
      (w.M - w.L) / ((n - 1.0) * (n - 1.0)) * root_sum * root_sum +
      w.M * pair_sum(t.k_minus) + w.L * pair_sum(t.k_plus);
  return numerator / (w.M * n + (n - 2.0) * w.L);
}

double prior_bound_1(const PairwiseKTable& t) {
  t.validate();
  if (t.n_elements <= 2) {
    throw TooFewElements("this bound family requires more than 2 elements");
  }
  const double n = t.n_elements;
  const double root_sum = pair_sqrt_sum_plus(t);
  return (pair_sum(t.k_plus) - root_sum * root_sum / ((n - 1.0) * (n - 1.0))) /
         (n - 2.0);
}

double prior_bound_2(const PairwiseKTable& t) {
  t.validate();
  const double n = t.n_elements;
  const double root_sum = pair_sqrt_sum_minus(t);
  return t.k_total / n + 2.0 / (n * n * (n - 1.0)) * root_sum * root_sum;
}

double prior_bound_3_phase(const PairwiseKTable& t, int x) {
  t.validate();
  if (x != 0 && x != 1) throw BadIndex("phase must be 0 or 1");
  const double n = t.n_elements;
  const double root_sum = (x == 0) ? pair_sqrt_sum_plus(t)
                                   : pair_sqrt_sum_minus(t);
  const double plain_sum = (x == 0) ? pair_sum(t.k_minus)
                                    : pair_sum(t.k_plus);
  return (2.0 / (n * (n - 1.0)) * root_sum * root_sum + plain_sum) /
         (2.0 * (n - 1.0));
}

double prior_bound_3(const PairwiseKTable& t) {
  return std::max(prior_bound_3_phase(t, 0), prior_bound_3_phase(t, 1));
}

BoundReport prior_bounds_observables(const PairwiseKTable& t) {
  t.validate();
  BoundReport report;
  if (t.n_elements > 2) {
    report.add("lb1", prior_bound_1(t));
  }
  report.add("lb2", prior_bound_2(t));
  report.add("lb3", prior_bound_3(t));
  return report;
}

BoundReport tightened_bounds_observables(const PairwiseKTable& t,
                                         const WeightTriple& w) {
  BoundReport report;
  report.add("lbbar1", tightened_bound_1(t, w.w1));
  report.add("lbbar2", tightened_bound_2(t, w.w2));
  report.add("lbbar3", tightened_bound_3(t, w.w3));
  report.add("lbbar", report.max_over({"lbbar1", "lbbar2", "lbbar3"}));
  return report;
}

BoundReport unitary_bounds(const PairwiseKTable& t, const WeightTriple& w) {
  BoundReport report = prior_bounds_observables(t);
  report.add("lb", report.max_over({"lb1", "lb2", "lb3"}));
  report.add("lbbar1", tightened_bound_1(t, w.w1));
  report.add("lbbar2", tightened_bound_2(t, w.w2));
  report.add("lbbar3", tightened_bound_3(t, w.w3));
  report.add("lbtilde", report.max_over({"lbbar1", "lbbar2", "lbbar3"}));
  report.note =
      "prior entries reconstructed by evaluating the observable-form "
      "inequalities on the unitary table";
  return report;
}

PairwiseKTable build_k_table(const DensityMatrix& rho,
                             const std::vector<Matrix>& elements,
                             const SkewParams& p) {
  const int n = static_cast<int>(elements.size());
  if (n < 2) throw TooFewElements("need at least two elements");
  for (const Matrix& e : elements) {
    require_same_dim(rho.matrix(), e);
  }
  PairwiseKTable table;
  table.n_elements = n;
  table.k_single.reserve(n);
  Matrix total = Matrix::Zero(rho.dim(), rho.dim());
  for (const Matrix& e : elements) {
    table.k_single.push_back(skew_info_operator(rho, e, p));
    total += e;
  }
  for (int t = 0; t < n; ++t) {
    for (int s = t + 1; s < n; ++s) {
      table.k_plus.push_back(
          skew_info_operator(rho, elements[t] + elements[s], p));
      table.k_minus.push_back(
          skew_info_operator(rho, elements[t] - elements[s], p));
    }
  }
  table.k_total = skew_info_operator(rho, total, p);
  return table;
}

PairwiseKTable build_table_observables(const DensityMatrix& rho,
                                       const std::vector<Observable>& a,
                                       const SkewParams& p) {
  std::vector<Matrix> mats;
  mats.reserve(a.size());
  for (const Observable& obs : a) mats.push_back(obs.matrix());
  return build_k_table(rho, mats, p);
}

PairwiseKTable build_table_unitaries(const DensityMatrix& rho,
                                     const std::vector<UnitaryOperator>& u,
                                     const SkewParams& p) {
  std::vector<Matrix> mats;
  mats.reserve(u.size());
  for (const UnitaryOperator& op : u) mats.push_back(op.matrix());
  return build_k_table(rho, mats, p);
}

PairwiseKTable table_from_vectors(const std::vector<Eigen::VectorXcd>& u) {
  const int n = static_cast<int>(u.size());
  if (n < 2) throw TooFewElements("need at least two vectors");
  PairwiseKTable table;
  table.n_elements = n;
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(u.front().size());
  for (const auto& v : u) {
    table.k_single.push_back(v.squaredNorm());
    total += v;
  }
  for (int t = 0; t < n; ++t) {
    for (int s = t + 1; s < n; ++s) {
      table.k_plus.push_back((u[t] + u[s]).squaredNorm());
      table.k_minus.push_back((u[t] - u[s]).squaredNorm());
    }
  }
  table.k_total = total.squaredNorm();
  return table;
}

}  // namespace skewlab
