#include "skewlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <utility>

#include <json.hpp>

#include "json_detail.hpp"
#include "skewlab/bounds.hpp"
#include "skewlab/channel_bounds.hpp"
#include "skewlab/csv.hpp"
#include "skewlab/random.hpp"

namespace skewlab {

namespace {

struct CheckFailed {
  std::string detail;
};

void require_close(double left, double right, double tol, const char* what,
                   nlohmann::json& dump) {
  if (std::abs(left - right) <= tol) return;
  dump["check"] = what;
  dump["left"] = left;
  dump["right"] = right;
  dump["tolerance"] = tol;
  throw CheckFailed{std::string(what) + ": |" + format_double(left) + " - " +
                    format_double(right) + "| > " + format_double(tol)};
}

void require_at_least(double value, double floor, double slack,
                      const char* what, nlohmann::json& dump) {
  if (value >= floor - slack) return;
  dump["check"] = what;
  dump["value"] = value;
  dump["floor"] = floor;
  dump["slack"] = slack;
  throw CheckFailed{std::string(what) + ": " + format_double(value) + " < " +
                    format_double(floor) + " - " + format_double(slack)};
}

void require_at_most(double value, double cap, const char* what,
                     nlohmann::json& dump) {
  if (value <= cap) return;
  dump["check"] = what;
  dump["value"] = value;
  dump["cap"] = cap;
  throw CheckFailed{std::string(what) + ": " + format_double(value) + " > " +
                    format_double(cap)};
}

void dump_matrix(nlohmann::json& dump, const char* key, const Matrix& m) {
  dump[key] = detail::matrix_to_json(m);
}

int pick(SplitMix64& rng, const std::vector<int>& values) {
  return values[rng.uniform_int(0, static_cast<int>(values.size()) - 1)];
}

SkewParams random_params(SplitMix64& rng, nlohmann::json& dump) {
  const double alpha = rng.uniform(0.0, 1.0);
  const double beta = rng.uniform(0.0, 1.0 - alpha);
  const double gamma = rng.uniform(0.0, 1.0);
  dump["alpha"] = alpha;
  dump["beta"] = beta;
  dump["gamma"] = gamma;
  return SkewParams(alpha, beta, gamma);
}

WeightTriple random_weights(SplitMix64& rng, nlohmann::json& dump) {
  const double l1 = rng.uniform(0.1, 3.0);
  const double m1 = l1 + rng.uniform(0.0, 3.0);
  const double m2 = rng.uniform(0.1, 3.0);
  const double l2 = m2 + rng.uniform(0.0, 3.0);
  const double m3 = rng.uniform(0.1, 3.0);
  const double l3 = m3 + rng.uniform(0.01, 3.0);
  dump["weights"] = {{"M1", m1}, {"L1", l1}, {"M2", m2},
                     {"L2", l2}, {"M3", m3}, {"L3", l3}};
  return WeightTriple{WeightParams(m1, l1, WeightRegime::m_ge_l),
                      WeightParams(m2, l2, WeightRegime::l_ge_m),
                      WeightParams(m3, l3, WeightRegime::l_gt_m)};
}

std::vector<int> random_permutation(SplitMix64& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.uniform_int(0, i)]);
  }
  return perm;
}

using CaseFn = std::function<void(int, Seed, nlohmann::json&)>;

PropertyResult run_family(const VerifyOptions& opt, std::uint64_t family_index,
                          const std::string& name, int cases,
                          const CaseFn& run_case) {
  PropertyResult result;
  result.family = name;
  result.cases = cases;
  const auto start = std::chrono::steady_clock::now();
  const Seed family_seed = child_seed(Seed{opt.seed}, family_index);
  for (int i = 0; i < cases; ++i) {
    nlohmann::json dump;
    dump["family"] = name;
    dump["case"] = i;
    dump["run_seed"] = opt.seed;
    try {
      run_case(i, child_seed(family_seed, static_cast<std::uint64_t>(i)),
               dump);
    } catch (const CheckFailed& f) {
      result.detail = "case " + std::to_string(i) + ": " + f.detail;
    } catch (const std::exception& e) {
      result.detail =
          "case " + std::to_string(i) + " threw: " + std::string(e.what());
    }
    if (!result.detail.empty()) {
      const std::filesystem::path path =
          std::filesystem::path(opt.out_dir) /
          ("counterexample_" + name + ".json");
      write_text_file(path.string(), dump.dump(2) + "\n");
      result.counterexample_path = path.string();
      break;
    }
  }
  result.passed = result.detail.empty();
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

double direct_norm_sq_half(const Matrix& w, const Matrix& e) {
  return 0.5 * (w * e - e * w).squaredNorm();
}

}  // namespace

std::vector<PropertyResult> run_verification(const VerifyOptions& opt) {
  if (opt.count < 1) throw InvalidParams("verification count must be >= 1");
  if (opt.dims.empty()) throw InvalidParams("verification needs dimensions");
  for (int d : opt.dims) {
    if (d < 2) throw InvalidParams("verification dimensions must be >= 2");
  }
  if (opt.n_min < 2 || opt.n_max < opt.n_min) {
    throw InvalidParams("verification needs 2 <= n_min <= n_max");
  }
  std::filesystem::create_directories(opt.out_dir);

  const int full = opt.count;
  const int most = std::max(1, 2 * opt.count / 5);
  const int half = std::max(1, opt.count / 2);
  const int some = std::max(1, 3 * opt.count / 5);
  const int few = std::max(1, opt.count / 10);

  std::vector<std::pair<std::string, std::pair<int, CaseFn>>> families;
  auto add = [&](const std::string& name, int cases, CaseFn fn) {
    families.emplace_back(name, std::make_pair(cases, std::move(fn)));
  };

  add("eigen-reconstruction", half, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = pick(rng, opt.dims);
    const Observable h = random_hermitian(d, Seed{rng.next()});
    dump_matrix(dump, "hermitian", h.matrix());
    const HermitianEigen eig = hermitian_eigendecompose(h.matrix());
    const Matrix recon =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
    const double scale = std::max(1.0, h.matrix().norm());
    require_at_most((recon - h.matrix()).norm(), 1e-10 * scale,
                    "eigendecomposition reconstructs the matrix", dump);
    require_at_most(unitarity_defect(eig.vectors), 1e-10,
                    "eigenvector matrix is unitary", dump);
    // Eigen sorts its spectrum; downstream code relies on a full basis, not
    // on order, so only verify the values are finite and complete.
    if (static_cast<int>(eig.values.size()) != d) {
      throw CheckFailed{"spectrum has the wrong length"};
    }
  });

  add("matrix-power-laws", half, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = pick(rng, opt.dims);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    const double a = rng.uniform(0.05, 0.95);
    const double b = rng.uniform(0.05, 0.95);
    dump["a"] = a;
    dump["b"] = b;
    require_at_most((rho.power(a) * rho.power(b) - rho.power(a + b)).norm(),
                    1e-10, "powers compose additively", dump);
    require_at_most((rho.power(0.5) * rho.power(0.5) - rho.matrix()).norm(),
                    1e-10, "square root squares back", dump);
    require_at_most((rho.power(1.0) - rho.matrix()).norm(), 1e-12,
                    "first power is the matrix", dump);
    require_at_most(
        (rho.power(0.0) - Matrix::Identity(d, d)).norm(), 0.0,
        "zeroth power is exactly the identity", dump);
  });

  add("unitary-invariance", most, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = pick(rng, opt.dims);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    const Matrix e = random_operator(d, Seed{rng.next()});
    const UnitaryOperator u = haar_unitary(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    dump_matrix(dump, "e", e);
    dump_matrix(dump, "u", u.matrix());
    const SkewParams p = random_params(rng, dump);
    const double base = skew_info_operator(rho, e, p);
    const Matrix rotated_rho = u.matrix() * rho.matrix() * u.matrix().adjoint();
    const Matrix rotated_e = u.matrix() * e * u.matrix().adjoint();
    const double rotated =
        skew_info_operator(DensityMatrix::from_matrix(rotated_rho), rotated_e, p);
    require_close(base, rotated,
                  std::max(1e-12, 1e-9 * std::max(base, rotated)),
                  "conjugating state and operator preserves the value", dump);
  });

  add("commutator-antisymmetry", half,
      [&](int, Seed seed, nlohmann::json& dump) {
        SplitMix64 rng(seed);
        const int d = pick(rng, opt.dims);
        const Matrix a = random_operator(d, Seed{rng.next()});
        const Matrix b = random_operator(d, Seed{rng.next()});
        dump_matrix(dump, "a", a);
        dump_matrix(dump, "b", b);
        require_at_most((commutator(a, b) + commutator(b, a)).norm(), 0.0,
                        "commutator is exactly antisymmetric", dump);
        const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
        dump_matrix(dump, "rho", rho.matrix());
        const SkewParams p = random_params(rng, dump);
        require_at_most(
            skew_info_operator(rho, Matrix::Identity(d, d), p), 0.0,
            "identity operator carries exactly zero uncertainty", dump);
      });

  add("generator-validity", half, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = pick(rng, opt.dims);
    const int n = rng.uniform_int(1, 4);
    dump["dim"] = d;
    dump["kraus_count"] = n;
    const KrausChannel c = random_kraus_channel(d, n, Seed{rng.next()});
    require_at_most(completeness_residual(c.kraus()), 1e-9,
                    "random channel is complete", dump);
    const UnitaryOperator u = haar_unitary(d, Seed{rng.next()});
    require_at_most(unitarity_defect(u.matrix()), 1e-10,
                    "random unitary is unitary", dump);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    require_close(rho.matrix().trace().real(), 1.0, 1e-12,
                  "random density has unit trace", dump);
    require_at_most(std::abs(rho.matrix().trace().imag()), 1e-12,
                    "random density has a real trace", dump);
    require_at_least(rho.eigen().values.minCoeff(), 0.0, 0.0,
                     "random density spectrum is clamped nonnegative", dump);
  });

  add("oracle-equivalence", full, [&](int i, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = pick(rng, opt.dims);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    const Matrix e = random_operator(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    dump_matrix(dump, "e", e);
    const SkewParams p = random_params(rng, dump);
    double operator_value = skew_info_operator(rho, e, p);
    const double oracle_value = spectral_oracle(rho, e, p);
    if (opt.inject_failure && i == 0) {
      dump["injected_offset"] = 1e-3;
      operator_value += 1e-3;
    }
    const double magnitude = std::max(std::abs(operator_value),
                                      std::abs(oracle_value));
    const double tol = (magnitude < 1e-8) ? 1e-12 : 1e-10 * magnitude;
    require_close(operator_value, oracle_value, tol,
                  "operator evaluation matches the spectral sum", dump);
  });

  add("reduction-chain", most, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = pick(rng, opt.dims);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    const Observable a = random_hermitian(d, Seed{rng.next()});
    const Matrix e = random_operator(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    dump_matrix(dump, "a", a.matrix());
    dump_matrix(dump, "e", e);
    const double alpha = rng.uniform(0.0, 1.0);
    const double gamma = rng.uniform(0.0, 1.0);
    dump["alpha"] = alpha;
    dump["gamma"] = gamma;
    const Matrix pow_alpha = rho.power(alpha);
    const Matrix pow_rest = rho.power(1.0 - alpha);
    // Directly built specializations of the weight operator, evaluated
    // without the general residual-power machinery.
    const Matrix convex = (1.0 - gamma) * pow_alpha + gamma * pow_rest;
    const Matrix mean = 0.5 * (pow_alpha + pow_rest);
    require_close(ag_wwyd(rho, a, alpha, gamma),
                  direct_norm_sq_half(convex, a.matrix()), 1e-12,
                  "general form at beta = 1 - alpha gives the convex form",
                  dump);
    require_close(ag_mwwyd(rho, e, alpha, gamma),
                  direct_norm_sq_half(convex, e), 1e-12,
                  "general operator form reduces to the convex form", dump);
    require_close(mwwyd(rho, e, alpha), direct_norm_sq_half(mean, e), 1e-12,
                  "half-weighted form uses the arithmetic mean", dump);
    require_close(wwyd(rho, a, alpha),
                  direct_norm_sq_half(mean, a.matrix()), 1e-12,
                  "observable form uses the arithmetic mean", dump);
    require_close(wy(rho, a),
                  direct_norm_sq_half(rho.power(0.5), a.matrix()), 1e-12,
                  "alpha = 1/2 gives the square-root form", dump);
  });

  add("parameter-symmetry", most, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = pick(rng, opt.dims);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    const Matrix e = random_operator(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    dump_matrix(dump, "e", e);
    const SkewParams p = random_params(rng, dump);
    const SkewParams swapped(p.beta, p.alpha, 1.0 - p.gamma);
    require_close(skew_info_operator(rho, e, p),
                  skew_info_operator(rho, e, swapped), 1e-12,
                  "swapping exponents and reflecting the weight is neutral",
                  dump);
  });

  add("quadratic-scaling", most, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = pick(rng, opt.dims);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    const Matrix e = random_operator(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    dump_matrix(dump, "e", e);
    const SkewParams p = random_params(rng, dump);
    const double magnitude = rng.uniform(-3.0, 3.0);
    const double phase = rng.uniform(0.0, 6.283185307179586);
    const Complex c = magnitude * Complex(std::cos(phase), std::sin(phase));
    dump["scale_re"] = c.real();
    dump["scale_im"] = c.imag();
    const double scaled = skew_info_operator(rho, c * e, p);
    const double expected = std::norm(c) * skew_info_operator(rho, e, p);
    require_close(scaled, expected, std::max(1e-12, 1e-10 * expected),
                  "scaling the operator scales the value quadratically",
                  dump);
  });

  add("phase-invariance", most, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = pick(rng, opt.dims);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    const UnitaryOperator u = haar_unitary(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    dump_matrix(dump, "u", u.matrix());
    const SkewParams p = random_params(rng, dump);
    const double direct = skew_info_unitary(rho, u, p);
    const KrausChannel as_channel =
        KrausChannel::create("single", {u.matrix()});
    require_close(skew_info_channel(rho, as_channel, p), direct, 0.0,
                  "single-element channel equals the unitary value", dump);
    const double phi = rng.uniform(0.0, 6.283185307179586);
    dump["phi"] = phi;
    const UnitaryOperator phased(Complex(std::cos(phi), std::sin(phi)) *
                                 u.matrix());
    require_close(skew_info_unitary(rho, phased, p), direct,
                  std::max(1e-12, 1e-12 * direct),
                  "a global phase does not change the value", dump);
  });

  add("vector-inequalities", full, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int n = rng.uniform_int(2, 5);
    const int dim = rng.uniform_int(1, 20);
    dump["n"] = n;
    dump["dim"] = dim;
    std::vector<Eigen::VectorXcd> vectors;
    vectors.reserve(n);
    for (int t = 0; t < n; ++t) {
      Eigen::VectorXcd v(dim);
      for (int k = 0; k < dim; ++k) v(k) = rng.complex_normal();
      vectors.push_back(std::move(v));
    }
    const PairwiseKTable table = table_from_vectors(vectors);
    const double total = table.sum_single();
    dump["sum"] = total;
    const WeightTriple w = random_weights(rng, dump);
    require_at_least(total, tightened_bound_1(table, w.w1), 1e-12,
                     "norm sum dominates weighted bound 1", dump);
    require_at_least(total, tightened_bound_2(table, w.w2), 1e-12,
                     "norm sum dominates weighted bound 2", dump);
    require_at_least(total, tightened_bound_3(table, w.w3), 1e-12,
                     "norm sum dominates weighted bound 3", dump);
    if (n > 2) {
      require_at_least(total, prior_bound_1(table), 1e-12,
                       "norm sum dominates unweighted bound 1", dump);
    }
    require_at_least(total, prior_bound_2(table), 1e-12,
                     "norm sum dominates unweighted bound 2", dump);
    require_at_least(total, prior_bound_3(table), 1e-12,
                     "norm sum dominates unweighted bound 3", dump);
  });

  add("observable-dominance", full, [&](int, Seed seed,
                                        nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = rng.uniform_int(2, 3);
    const int n = rng.uniform_int(opt.n_min, opt.n_max);
    dump["dim"] = d;
    dump["n"] = n;
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    std::vector<Matrix> elements;
    nlohmann::json element_dump = nlohmann::json::array();
    for (int t = 0; t < n; ++t) {
      elements.push_back(random_hermitian(d, Seed{rng.next()}).matrix());
      element_dump.push_back(detail::matrix_to_json(elements.back()));
    }
    dump["elements"] = element_dump;
    const SkewParams p = random_params(rng, dump);
    const WeightTriple w = random_weights(rng, dump);
    const PairwiseKTable table = build_k_table(rho, elements, p);
    const double sum = table.sum_single();
    dump["sum"] = sum;
    const BoundReport priors = prior_bounds_observables(table);
    const BoundReport tight = tightened_bounds_observables(table, w);
    for (const auto& [id, value] : priors.entries()) {
      require_at_least(sum, value, 1e-9,
                       ("uncertainty sum dominates " + id).c_str(), dump);
    }
    for (const auto& [id, value] : tight.entries()) {
      require_at_least(sum, value, 1e-9,
                       ("uncertainty sum dominates " + id).c_str(), dump);
    }
    require_at_least(tight.at("lbbar"),
                     priors.max_over({"lb1", "lb2", "lb3"}), 1e-9,
                     "weighted composite dominates the unweighted composite",
                     dump);
  });

  add("weight-collapse", most, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = rng.uniform_int(2, 3);
    const int n = rng.uniform_int(opt.n_min, opt.n_max);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    std::vector<Matrix> elements;
    for (int t = 0; t < n; ++t) {
      elements.push_back(random_hermitian(d, Seed{rng.next()}).matrix());
    }
    const SkewParams p = random_params(rng, dump);
    const PairwiseKTable table = build_k_table(rho, elements, p);
    const double c = rng.uniform(0.1, 5.0);
    dump["weight"] = c;
    const double t1 =
        tightened_bound_1(table, WeightParams(c, c, WeightRegime::m_ge_l));
    const double t2 =
        tightened_bound_2(table, WeightParams(c, c, WeightRegime::l_ge_m));
    require_close(t1, prior_bound_3_phase(table, 0),
                  std::max(1e-12, 1e-12 * std::abs(t1)),
                  "equal weights collapse bound 1 to the phase-0 form", dump);
    require_close(t2, prior_bound_3_phase(table, 1),
                  std::max(1e-12, 1e-12 * std::abs(t2)),
                  "equal weights collapse bound 2 to the phase-1 form", dump);
  });

  add("weight-monotonicity", most, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = rng.uniform_int(2, 3);
    const int n = rng.uniform_int(opt.n_min, opt.n_max);
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    std::vector<Matrix> elements;
    for (int t = 0; t < n; ++t) {
      elements.push_back(random_hermitian(d, Seed{rng.next()}).matrix());
    }
    const SkewParams p = random_params(rng, dump);
    const PairwiseKTable table = build_k_table(rho, elements, p);
    const double l = rng.uniform(0.1, 2.0);
    const double m_low = l + rng.uniform(0.0, 2.0);
    const double m_high = m_low + rng.uniform(0.01, 2.0);
    dump["family1"] = {{"L", l}, {"M_low", m_low}, {"M_high", m_high}};
    const double f1_low =
        tightened_bound_1(table, WeightParams(m_low, l, WeightRegime::m_ge_l));
    const double f1_high = tightened_bound_1(
        table, WeightParams(m_high, l, WeightRegime::m_ge_l));
    require_at_least(f1_high, f1_low,
                     std::max(1e-12, 1e-12 * std::abs(f1_low)),
                     "bound 1 improves with a larger first weight", dump);
    const double m = rng.uniform(0.1, 2.0);
    const double l_low = m + rng.uniform(0.0, 2.0);
    const double l_high = l_low + rng.uniform(0.01, 2.0);
    dump["family2"] = {{"M", m}, {"L_low", l_low}, {"L_high", l_high}};
    const double f2_low =
        tightened_bound_2(table, WeightParams(m, l_low, WeightRegime::l_ge_m));
    const double f2_high = tightened_bound_2(
        table, WeightParams(m, l_high, WeightRegime::l_ge_m));
    require_at_least(f2_high, f2_low,
                     std::max(1e-12, 1e-12 * std::abs(f2_low)),
                     "bound 2 improves with a larger second weight", dump);
  });

  add("channel-dominance", some, [&](int, Seed seed, nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int d = rng.uniform_int(2, 3);
    const int n_channels = rng.uniform_int(2, 3);
    dump["dim"] = d;
    dump["channels"] = n_channels;
    std::vector<KrausChannel> channels;
    nlohmann::json channel_dump = nlohmann::json::array();
    for (int t = 0; t < n_channels; ++t) {
      channels.push_back(random_kraus_channel(d, 2, Seed{rng.next()}));
      nlohmann::json ops = nlohmann::json::array();
      for (const Matrix& k : channels.back().kraus()) {
        ops.push_back(detail::matrix_to_json(k));
      }
      channel_dump.push_back(ops);
    }
    dump["kraus"] = channel_dump;
    const DensityMatrix rho = ginibre_density(d, Seed{rng.next()});
    dump_matrix(dump, "rho", rho.matrix());
    const SkewParams p = random_params(rng, dump);
    const WeightTriple w = random_weights(rng, dump);
    const ChannelBoundEvaluator ev(rho, channels, p);
    const double sum = ev.sum_k();
    dump["sum"] = sum;
    const SearchOptions options;
    const ChannelBoundReport priors = prior_channel_bounds(ev, options);
    const ChannelBoundReport slots = slotwise_channel_bounds(ev, w, options);
    const ChannelBoundReport pools = pooled_channel_bounds(ev, w, options);
    const ChannelBoundReport best = optimal_channel_bound(ev, w, options);
    for (const ChannelBoundReport* report : {&priors, &slots, &pools, &best}) {
      for (const ChannelBoundEntry& entry : report->entries) {
        require_at_least(sum, entry.value, 1e-9,
                         ("channel sum dominates " + entry.id).c_str(), dump);
      }
    }
    require_at_least(best.at("lbbar").value, priors.at("lb").value, 1e-9,
                     "optimized weighted bound dominates the unweighted one",
                     dump);
  });

  add("search-canonicalization", few, [&](int, Seed seed,
                                          nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int variant = rng.uniform_int(0, 2);
    const int n_kraus = (variant == 2) ? 3 : 2;
    const int n_channels = (variant == 1) ? 3 : 2;
    dump["kraus_count"] = n_kraus;
    dump["channels"] = n_channels;
    std::vector<KrausChannel> channels;
    for (int t = 0; t < n_channels; ++t) {
      channels.push_back(random_kraus_channel(2, n_kraus, Seed{rng.next()}));
    }
    const DensityMatrix rho = ginibre_density(2, Seed{rng.next()});
    const SkewParams p = random_params(rng, dump);
    const ChannelBoundEvaluator ev(rho, channels, p);
    SearchOptions canonical;
    SearchOptions unrestricted;
    unrestricted.canonical = false;
    const WeightParams w2(1.0, 2.0, WeightRegime::l_ge_m);
    const std::vector<std::pair<const char*, ChannelBoundFn>> bounds = {
        {"prior3", [](const ChannelKTable& t) { return channel_prior_3(t); }},
        {"pool2",
         [w2](const ChannelKTable& t) { return channel_pooled_2(t, w2); }}};
    for (const auto& [id, fn] : bounds) {
      const SearchOutcome with_fixed =
          maximize_over_assignments(ev, fn, canonical);
      const SearchOutcome without_fixed =
          maximize_over_assignments(ev, fn, unrestricted);
      dump[id] = {{"canonical", with_fixed.value},
                  {"unrestricted", without_fixed.value}};
      require_close(with_fixed.value, without_fixed.value, 0.0,
                    "fixing the first permutation loses nothing", dump);
    }
  });

  add("relabeling-invariance", few, [&](int, Seed seed,
                                        nlohmann::json& dump) {
    SplitMix64 rng(seed);
    const int n_kraus = rng.uniform_int(2, 3);
    const int n_channels = rng.uniform_int(2, 3);
    std::vector<KrausChannel> channels;
    for (int t = 0; t < n_channels; ++t) {
      channels.push_back(random_kraus_channel(2, n_kraus, Seed{rng.next()}));
    }
    const DensityMatrix rho = ginibre_density(2, Seed{rng.next()});
    const SkewParams p = random_params(rng, dump);
    const ChannelBoundEvaluator ev(rho, channels, p);
    PermutationAssignment a = identity_assignment(n_channels, n_kraus);
    for (auto& perm : a.perms) perm = random_permutation(rng, n_kraus);
    const std::vector<int> sigma = random_permutation(rng, n_kraus);
    PermutationAssignment b = a;
    for (int t = 0; t < n_channels; ++t) {
      for (int i = 0; i < n_kraus; ++i) {
        b.perms[t][i] = a.perms[t][sigma[i]];
      }
    }
    dump["assignment"] = a.to_string();
    dump["relabeled"] = b.to_string();
    const ChannelKTable ta = ev.table(a);
    const ChannelKTable tb = ev.table(b);
    const WeightParams w1(2.0, 1.0, WeightRegime::m_ge_l);
    require_close(channel_prior_2(ta), channel_prior_2(tb), 0.0,
                  "relabeling positions preserves unweighted bound 2", dump);
    require_close(channel_prior_3(ta), channel_prior_3(tb), 0.0,
                  "relabeling positions preserves unweighted bound 3", dump);
    require_close(channel_slotwise_1(ta, w1), channel_slotwise_1(tb, w1), 0.0,
                  "relabeling positions preserves the slotwise form", dump);
    require_close(channel_pooled_1(ta, w1), channel_pooled_1(tb, w1), 0.0,
                  "relabeling positions preserves the pooled form", dump);
  });

  add("aggregation-distinctness", few, [&](int, Seed seed,
                                           nlohmann::json& dump) {
    SplitMix64 rng(seed);
    // Single-slot channels: the slotwise and pooled aggregates coincide.
    {
      std::vector<KrausChannel> singles;
      for (int t = 0; t < 2; ++t) {
        singles.push_back(KrausChannel::create(
            "u", {haar_unitary(2, Seed{rng.next()}).matrix()}));
      }
      const DensityMatrix rho = ginibre_density(2, Seed{rng.next()});
      const SkewParams p = random_params(rng, dump);
      const ChannelBoundEvaluator ev(rho, singles, p);
      const ChannelKTable t = ev.table(identity_assignment(2, 1));
      const WeightParams w1(2.0, 1.0, WeightRegime::m_ge_l);
      require_close(channel_slotwise_1(t, w1), channel_pooled_1(t, w1), 1e-12,
                    "one slot makes slotwise and pooled coincide", dump);
    }
    // A single channel pair also collapses the two aggregates: the root-sum
    // over pairs has one term, so squaring it undoes the root either way.
    {
      std::vector<KrausChannel> channels;
      for (int t = 0; t < 2; ++t) {
        channels.push_back(random_kraus_channel(2, 2, Seed{rng.next()}));
      }
      const DensityMatrix rho = ginibre_density(2, Seed{rng.next()});
      const SkewParams p(0.3, 0.4, 0.6);
      const ChannelBoundEvaluator ev(rho, channels, p);
      const ChannelKTable t = ev.table(identity_assignment(2, 2));
      const WeightParams w1(2.0, 1.0, WeightRegime::m_ge_l);
      require_close(channel_slotwise_1(t, w1), channel_pooled_1(t, w1), 1e-12,
                    "one pair makes slotwise and pooled coincide", dump);
    }
    // Three channels with two slots each: generically the aggregates differ.
    double best_gap = 0.0;
    for (int attempt = 0; attempt < 3; ++attempt) {
      std::vector<KrausChannel> channels;
      for (int t = 0; t < 3; ++t) {
        channels.push_back(random_kraus_channel(2, 2, Seed{rng.next()}));
      }
      const DensityMatrix rho = ginibre_density(2, Seed{rng.next()});
      const SkewParams p(0.3, 0.4, 0.6);
      const ChannelBoundEvaluator ev(rho, channels, p);
      const ChannelKTable t = ev.table(identity_assignment(3, 2));
      const WeightParams w1(2.0, 1.0, WeightRegime::m_ge_l);
      best_gap = std::max(best_gap, std::abs(channel_slotwise_1(t, w1) -
                                             channel_pooled_1(t, w1)));
    }
    dump["largest_gap"] = best_gap;
    require_at_least(best_gap, 1e-9, 0.0,
                     "three channels separate slotwise from pooled", dump);
  });

  std::vector<PropertyResult> results;
  std::uint64_t family_index = 0;
  for (const auto& [name, body] : families) {
    const std::uint64_t index = family_index++;
    if (!opt.only.empty() && name != opt.only) continue;
    results.push_back(run_family(opt, index, name, body.first, body.second));
  }
  if (!opt.only.empty() && results.empty()) {
    throw InvalidParams("no verification family named '" + opt.only + "'");
  }
  return results;
}

bool all_passed(const std::vector<PropertyResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.passed; });
}

}  // namespace skewlab
