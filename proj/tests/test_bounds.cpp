#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "skewlab/bounds.hpp"
#include "skewlab/random.hpp"

using namespace skewlab;

namespace {

PairwiseKTable zero_table(int n) {
  PairwiseKTable t;
  t.n_elements = n;
  t.k_single.assign(n, 0.0);
  t.k_plus.assign(n * (n - 1) / 2, 0.0);
  t.k_minus.assign(n * (n - 1) / 2, 0.0);
  t.k_total = 0.0;
  return t;
}

PairwiseKTable fixed_table3() {
  // Hand-picked nonnegative entries exercising every term.
  PairwiseKTable t = zero_table(3);
  t.k_single = {0.5, 1.25, 0.75};
  t.k_plus = {2.0, 1.0, 0.5};
  t.k_minus = {0.25, 0.75, 1.5};
  t.k_total = 3.5;
  return t;
}

}  // namespace

TEST_CASE("pair index packs the upper triangle row by row") {
  REQUIRE(PairwiseKTable::pair_index(0, 1, 4) == 0);
  REQUIRE(PairwiseKTable::pair_index(0, 2, 4) == 1);
  REQUIRE(PairwiseKTable::pair_index(0, 3, 4) == 2);
  REQUIRE(PairwiseKTable::pair_index(1, 2, 4) == 3);
  REQUIRE(PairwiseKTable::pair_index(1, 3, 4) == 4);
  REQUIRE(PairwiseKTable::pair_index(2, 3, 4) == 5);
}

TEST_CASE("weight parameter regimes are enforced") {
  REQUIRE_NOTHROW(WeightParams(2.0, 1.0, WeightRegime::m_ge_l));
  REQUIRE_NOTHROW(WeightParams(1.0, 1.0, WeightRegime::m_ge_l));
  REQUIRE_THROWS_AS(WeightParams(1.0, 2.0, WeightRegime::m_ge_l),
                    RegimeViolation);
  REQUIRE_THROWS_AS(WeightParams(2.0, 1.0, WeightRegime::l_ge_m),
                    RegimeViolation);
  REQUIRE_THROWS_AS(WeightParams(1.0, 1.0, WeightRegime::l_gt_m),
                    RegimeViolation);
  REQUIRE_THROWS_AS(WeightParams(0.0, 1.0, WeightRegime::l_ge_m),
                    RegimeViolation);
  REQUIRE_THROWS_AS(WeightParams(2.0, -1.0, WeightRegime::m_ge_l),
                    RegimeViolation);
}

TEST_CASE("table validation") {
  PairwiseKTable t = fixed_table3();
  REQUIRE_NOTHROW(t.validate());
  t.k_minus[1] = -0.5;
  REQUIRE_THROWS_AS(t.validate(), InvalidParams);
  PairwiseKTable wrong = fixed_table3();
  wrong.k_plus.pop_back();
  REQUIRE_THROWS_AS(wrong.validate(), InvalidParams);
  PairwiseKTable tiny = zero_table(2);
  tiny.n_elements = 1;
  tiny.k_single = {1.0};
  tiny.k_plus.clear();
  tiny.k_minus.clear();
  REQUIRE_THROWS_AS(tiny.validate(), TooFewElements);
}

TEST_CASE("orthonormal pair attains the first bound exactly") {
  Eigen::VectorXcd u1(2), u2(2);
  u1 << Complex(1, 0), Complex(0, 0);
  u2 << Complex(0, 0), Complex(1, 0);
  const PairwiseKTable t = table_from_vectors({u1, u2});
  const double bound =
      tightened_bound_1(t, WeightParams(1.0, 1.0, WeightRegime::m_ge_l));
  REQUIRE(std::abs(bound - 2.0) < 1e-15);
  REQUIRE(std::abs(t.sum_single() - 2.0) < 1e-15);
}

TEST_CASE("identical elements saturate the first bound at N times k") {
  const DensityMatrix rho = ginibre_density(3, Seed{41});
  const Matrix a = random_hermitian(3, Seed{42}).matrix();
  const SkewParams p(0.25, 0.5, 0.75);
  const PairwiseKTable t = build_k_table(rho, {a, a, a}, p);
  const double k = t.k_single[0];
  for (const WeightParams& w :
       {WeightParams(2.0, 1.0, WeightRegime::m_ge_l),
        WeightParams(5.0, 0.5, WeightRegime::m_ge_l),
        WeightParams(1.0, 1.0, WeightRegime::m_ge_l)}) {
    REQUIRE(std::abs(tightened_bound_1(t, w) - 3.0 * k) <
            1e-12 * std::max(1.0, 3.0 * k));
  }
}

TEST_CASE("third bound value on a hand-evaluated table") {
  // N = 2, single pair with k_plus = k_minus = 1, M = 1, L = 2:
  // numerator (M-L)*1 + M*1 + L*1 = 2, denominator M*N = 2, value 1.
  PairwiseKTable t = zero_table(2);
  t.k_plus = {1.0};
  t.k_minus = {1.0};
  const double v =
      tightened_bound_3(t, WeightParams(1.0, 2.0, WeightRegime::l_gt_m));
  REQUIRE(std::abs(v - 1.0) < 1e-15);
}

TEST_CASE("zero tables give zero bounds") {
  for (int n : {2, 3, 5}) {
    const PairwiseKTable t = zero_table(n);
    REQUIRE(tightened_bound_1(t, WeightParams(2, 1, WeightRegime::m_ge_l)) ==
            0.0);
    REQUIRE(tightened_bound_2(t, WeightParams(1, 2, WeightRegime::l_ge_m)) ==
            0.0);
    REQUIRE(tightened_bound_3(t, WeightParams(1, 2, WeightRegime::l_gt_m)) ==
            0.0);
    if (n > 2) REQUIRE(prior_bound_1(t) == 0.0);
    REQUIRE(prior_bound_2(t) == 0.0);
    REQUIRE(prior_bound_3(t) == 0.0);
  }
}

TEST_CASE("first prior bound needs more than two elements") {
  REQUIRE_THROWS_AS(prior_bound_1(zero_table(2)), TooFewElements);
}

TEST_CASE("bounds called with the wrong regime are rejected") {
  const PairwiseKTable t = fixed_table3();
  REQUIRE_THROWS_AS(
      tightened_bound_1(t, WeightParams(1.0, 2.0, WeightRegime::l_ge_m)),
      RegimeViolation);
  REQUIRE_THROWS_AS(
      tightened_bound_3(t, WeightParams(1.0, 2.0, WeightRegime::l_ge_m)),
      RegimeViolation);
}

TEST_CASE("equal weights collapse the weighted families onto the phase forms") {
  const PairwiseKTable t = fixed_table3();
  for (double c : {0.5, 1.0, 3.0}) {
    const double t1 =
        tightened_bound_1(t, WeightParams(c, c, WeightRegime::m_ge_l));
    const double t2 =
        tightened_bound_2(t, WeightParams(c, c, WeightRegime::l_ge_m));
    REQUIRE(std::abs(t1 - prior_bound_3_phase(t, 0)) < 1e-12);
    REQUIRE(std::abs(t2 - prior_bound_3_phase(t, 1)) < 1e-12);
  }
  REQUIRE(prior_bound_3(t) == std::max(prior_bound_3_phase(t, 0),
                                       prior_bound_3_phase(t, 1)));
}

TEST_CASE("antipodal pair saturates the second prior bound") {
  Eigen::VectorXcd u(3);
  u << Complex(1, 2), Complex(0, -1), Complex(0.5, 0);
  Eigen::VectorXcd v = -u;
  const PairwiseKTable t = table_from_vectors({u, v});
  const double sum = t.sum_single();
  REQUIRE(std::abs(prior_bound_2(t) - sum) < 1e-12 * sum);
  REQUIRE(t.k_plus[0] == 0.0);
  REQUIRE(std::abs(t.k_minus[0] - 4.0 * u.squaredNorm()) < 1e-12);
}

TEST_CASE("bound report winner prefers the first maximal entry") {
  BoundReport r;
  r.add("a", 1.0);
  r.add("b", 2.0);
  r.add("c", 2.0);
  REQUIRE(r.winner() == "b");
  REQUIRE(r.winner_value() == 2.0);
  REQUIRE(r.max_over({"a", "missing", "c"}) == 2.0);
  REQUIRE(r.has("a"));
  REQUIRE(!r.has("z"));
  REQUIRE_THROWS_AS(r.at("z"), BadIndex);
}

TEST_CASE("report merge keeps both entry sets and notes") {
  BoundReport a;
  a.add("x", 1.0);
  a.note = "left";
  BoundReport b;
  b.add("y", 2.0);
  b.note = "right";
  const BoundReport m = merge(a, b);
  REQUIRE(m.at("x") == 1.0);
  REQUIRE(m.at("y") == 2.0);
  REQUIRE(m.note == "left; right");
}

TEST_CASE("observable reports carry the documented ids") {
  const DensityMatrix rho = ginibre_density(2, Seed{61});
  std::vector<Matrix> elems = {pauli_matrix(1), pauli_matrix(2),
                               pauli_matrix(3)};
  const SkewParams p(1.0 / 3.0, 2.0 / 3.0, 0.5);
  const PairwiseKTable t = build_k_table(rho, elems, p);
  const BoundReport priors = prior_bounds_observables(t);
  REQUIRE(priors.has("lb1"));
  REQUIRE(priors.has("lb2"));
  REQUIRE(priors.has("lb3"));
  const BoundReport tight =
      tightened_bounds_observables(t, WeightTriple::defaults());
  REQUIRE(tight.at("lbbar") ==
          tight.max_over({"lbbar1", "lbbar2", "lbbar3"}));
  // Dominance of the uncertainty sum over every reported bound.
  const double sum = t.sum_single();
  for (const auto& [id, value] : merge(priors, tight).entries()) {
    REQUIRE(sum >= value - 1e-9);
  }
  // Two elements only: the first prior bound is dropped.
  const PairwiseKTable t2 =
      build_k_table(rho, {pauli_matrix(1), pauli_matrix(2)}, p);
  REQUIRE(!prior_bounds_observables(t2).has("lb1"));
}

TEST_CASE("unitary report reconstructs prior entries and tags the note") {
  const DensityMatrix rho = ginibre_density(2, Seed{71});
  const auto us = rotation_unitaries();
  std::vector<UnitaryOperator> list = {us[0], us[1], us[2]};
  const SkewParams p(0.2, 0.8, 0.5);
  const PairwiseKTable t = build_table_unitaries(rho, list, p);
  const BoundReport r = unitary_bounds(t, WeightTriple::defaults());
  for (const char* id : {"lb1", "lb2", "lb3", "lb", "lbbar1", "lbbar2",
                         "lbbar3", "lbtilde"}) {
    REQUIRE(r.has(id));
  }
  REQUIRE(r.at("lbtilde") == r.max_over({"lbbar1", "lbbar2", "lbbar3"}));
  REQUIRE(r.at("lb") == r.max_over({"lb1", "lb2", "lb3"}));
  REQUIRE(!r.note.empty());
  REQUIRE(t.sum_single() >= r.at("lbtilde") - 1e-9);
}

TEST_CASE("table builders agree across input wrappers") {
  const DensityMatrix rho = ginibre_density(2, Seed{81});
  const SkewParams p(0.3, 0.3, 0.25);
  std::vector<Observable> obs = {pauli(1), pauli(3)};
  std::vector<Matrix> mats = {pauli_matrix(1), pauli_matrix(3)};
  const PairwiseKTable a = build_table_observables(rho, obs, p);
  const PairwiseKTable b = build_k_table(rho, mats, p);
  REQUIRE(a.k_single == b.k_single);
  REQUIRE(a.k_plus == b.k_plus);
  REQUIRE(a.k_minus == b.k_minus);
  REQUIRE(a.k_total == b.k_total);
}

TEST_CASE("table builders reject undersized input") {
  const DensityMatrix rho = ginibre_density(2, Seed{91});
  REQUIRE_THROWS_AS(
      build_k_table(rho, {pauli_matrix(1)}, SkewParams(0.5, 0.5, 0.5)),
      TooFewElements);
  REQUIRE_THROWS_AS(table_from_vectors({Eigen::VectorXcd::Ones(2)}),
                    TooFewElements);
}
