// Command-line front end: reproduces the three worked examples, runs
// user-supplied sweep scenarios, and executes the randomized property
// verification suite.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewlab/json_io.hpp"
#include "skewlab/scenario.hpp"
#include "skewlab/verify.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct WeightFlags {
  double M1 = 2.0, L1 = 1.0;
  double M2 = 1.0, L2 = 2.0;
  double M3 = 1.0, L3 = 2.0;
};

void add_weight_flags(CLI::App* cmd, WeightFlags& w) {
  cmd->add_option("--M1", w.M1, "Weight M of bound family 1 (needs M >= L)")
      ->capture_default_str();
  cmd->add_option("--L1", w.L1, "Weight L of bound family 1 (needs M >= L)")
      ->capture_default_str();
  cmd->add_option("--M2", w.M2, "Weight M of bound family 2 (needs L >= M)")
      ->capture_default_str();
  cmd->add_option("--L2", w.L2, "Weight L of bound family 2 (needs L >= M)")
      ->capture_default_str();
  cmd->add_option("--M3", w.M3, "Weight M of bound family 3 (needs L > M)")
      ->capture_default_str();
  cmd->add_option("--L3", w.L3, "Weight L of bound family 3 (needs L > M)")
      ->capture_default_str();
}

skewlab::WeightTriple make_weights(const WeightFlags& w) {
  return skewlab::WeightTriple{
      skewlab::WeightParams(w.M1, w.L1, skewlab::WeightRegime::m_ge_l),
      skewlab::WeightParams(w.M2, w.L2, skewlab::WeightRegime::l_ge_m),
      skewlab::WeightParams(w.M3, w.L3, skewlab::WeightRegime::l_gt_m)};
}

const char* kind_label(skewlab::ScenarioKind kind) {
  switch (kind) {
    case skewlab::ScenarioKind::observables:
      return "observables";
    case skewlab::ScenarioKind::channels:
      return "channels";
    case skewlab::ScenarioKind::unitaries:
      return "unitaries";
  }
  return "unknown";
}

nlohmann::json grid_meta(const skewlab::GridSpec& grid) {
  nlohmann::json j;
  j["points"] = grid.points.size();
  if (!grid.points.empty()) {
    j["first"] = grid.points.front();
    j["last"] = grid.points.back();
  }
  return j;
}

nlohmann::json config_meta(const skewlab::ScenarioConfig& c) {
  nlohmann::json meta;
  meta["name"] = c.name;
  meta["kind"] = kind_label(c.kind);
  meta["alpha_grid"] = grid_meta(c.alpha_grid);
  if (c.orbit) {
    meta["theta_grid"] = grid_meta(c.theta_grid);
    meta["orbit"] = {{"rxy", c.orbit->rxy}, {"rz", c.orbit->rz}};
  }
  if (c.beta) {
    meta["beta"] = *c.beta;
  } else {
    meta["beta"] = "1 - alpha";
  }
  meta["gamma"] = c.gamma;
  meta["weights"] = {{"M1", c.weights.w1.M}, {"L1", c.weights.w1.L},
                     {"M2", c.weights.w2.M}, {"L2", c.weights.w2.L},
                     {"M3", c.weights.w3.M}, {"L3", c.weights.w3.L}};
  meta["csv"] = c.csv_name;
  return meta;
}

// Runs one configured sweep and writes CSV (+ optional SVG) plus a small
// metadata sidecar describing the grids and parameters that produced it.
void run_and_write(skewlab::ScenarioConfig config,
                   const std::filesystem::path& out_dir, bool force_svg) {
  std::filesystem::create_directories(out_dir);
  config.violation_dir = out_dir.string();
  const skewlab::SweepResult result = skewlab::run_scenario(config);
  const std::filesystem::path csv_path = out_dir / result.csv_name;
  skewlab::write_text_file(csv_path.string(), result.to_csv());
  std::cout << "wrote " << csv_path.string() << " (" << result.rows.size()
            << " rows)" << std::endl;
  if (result.want_svg || force_svg) {
    const std::filesystem::path svg_path = out_dir / result.svg_name;
    skewlab::write_text_file(svg_path.string(), result.to_svg(config.name));
    std::cout << "wrote " << svg_path.string() << std::endl;
  }
  std::filesystem::path meta_path = csv_path;
  meta_path.replace_extension(".meta.json");
  skewlab::write_text_file(meta_path.string(),
                           config_meta(config).dump(2) + "\n");
}

int run_verify_command(const skewlab::VerifyOptions& options,
                       bool expect_fail) {
  std::vector<skewlab::PropertyResult> results =
      skewlab::run_verification(options);
  for (const skewlab::PropertyResult& r : results) {
    char timing[64];
    std::snprintf(timing, sizeof(timing), "%.2f s", r.seconds);
    if (r.passed) {
      std::cout << "PASS " << r.family << " (" << r.cases << " cases, "
                << timing << ")" << std::endl;
    } else {
      std::cout << "FAIL " << r.family << " (" << r.cases << " cases, "
                << timing << "): " << r.detail
                << " [counterexample: " << r.counterexample_path << "]"
                << std::endl;
    }
  }
  if (!expect_fail) {
    return skewlab::all_passed(results) ? 0 : 1;
  }

  // Failure-injection self test: exactly the instrumented family must fail,
  // and its counterexample dump must round-trip through the matrix wire
  // format byte for byte.
  const skewlab::PropertyResult* failed = nullptr;
  for (const skewlab::PropertyResult& r : results) {
    if (r.passed) continue;
    if (failed != nullptr) {
      std::cerr << "expected exactly one failing family, saw more"
                << std::endl;
      return 1;
    }
    failed = &r;
  }
  if (failed == nullptr || failed->family != "oracle-equivalence") {
    std::cerr << "expected the oracle-equivalence family to fail"
              << std::endl;
    return 1;
  }
  const std::string text = skewlab::read_text_file(failed->counterexample_path);
  const nlohmann::json dump = nlohmann::json::parse(text);
  for (const char* key : {"rho", "e"}) {
    if (!dump.contains(key)) {
      std::cerr << "counterexample dump is missing '" << key << "'"
                << std::endl;
      return 1;
    }
    const std::string wire = dump.at(key).dump();
    const skewlab::Matrix m = skewlab::matrix_from_json_text(wire);
    if (skewlab::matrix_to_json_text(m) != wire) {
      std::cerr << "matrix '" << key << "' did not round-trip" << std::endl;
      return 1;
    }
  }
  std::cout << "expected failure confirmed; counterexample round-trips"
            << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "skewlab: weighted skew-information sums for observables, channels "
      "and unitaries, with tightened lower bounds"};
  app.require_subcommand(1);

  int exit_code = 0;

  // --- example1 -----------------------------------------------------------
  auto* ex1 = app.add_subcommand(
      "example1",
      "Pauli triple on a tilted circle of pure states: full (theta, alpha) "
      "grid plus a fixed-alpha slice with all bound curves");
  double ex1_alpha = 1.0 / 3.0;
  int ex1_theta_steps = 200;
  int ex1_alpha_steps = 49;
  double ex1_gamma = 0.5;
  std::optional<double> ex1_beta;
  std::string ex1_out = "out";
  bool ex1_svg = false;
  WeightFlags ex1_w;
  ex1->add_option("--alpha", ex1_alpha, "Alpha of the emitted slice")
      ->capture_default_str();
  ex1->add_option("--theta-steps", ex1_theta_steps,
                  "Theta subdivisions of [0, 2*pi]")
      ->capture_default_str();
  ex1->add_option("--alpha-steps", ex1_alpha_steps,
                  "Alpha subdivisions of [0.01, 0.99] for the grid")
      ->capture_default_str();
  ex1->add_option("--beta", ex1_beta,
                  "Fix the second exponent (default: 1 - alpha per row)");
  ex1->add_option("--gamma", ex1_gamma, "Weight-operator mixing parameter")
      ->capture_default_str();
  ex1->add_option("--out", ex1_out, "Output directory")
      ->capture_default_str();
  ex1->add_flag("--svg", ex1_svg,
                "Also render the grid sweep as an SVG (the slice always "
                "gets one)");
  add_weight_flags(ex1, ex1_w);
  ex1->callback([&] {
    const skewlab::WeightTriple w = make_weights(ex1_w);
    // Validate the slice parameters up front so a bad flag fails before the
    // full grid is computed.
    skewlab::SkewParams(ex1_alpha, ex1_beta.value_or(1.0 - ex1_alpha),
                        ex1_gamma);
    const skewlab::GridSpec theta =
        skewlab::GridSpec::linspace(0.0, 2.0 * kPi, ex1_theta_steps);
    const skewlab::GridSpec alphas =
        skewlab::GridSpec::linspace(0.01, 0.99, ex1_alpha_steps);
    skewlab::ScenarioConfig grid =
        skewlab::example1_grid_config(alphas, theta, w);
    grid.beta = ex1_beta ? ex1_beta : grid.beta;
    grid.gamma = ex1_gamma;
    run_and_write(std::move(grid), ex1_out, ex1_svg);
    skewlab::ScenarioConfig slice =
        skewlab::example1_slice_config(ex1_alpha, theta, w);
    slice.beta = ex1_beta ? ex1_beta : slice.beta;
    slice.gamma = ex1_gamma;
    run_and_write(std::move(slice), ex1_out, ex1_svg);
  });

  // --- example2 -----------------------------------------------------------
  auto* ex2 = app.add_subcommand(
      "example2",
      "Damping, dephasing and flip channels on an equatorial circle, with "
      "permutation-optimized channel bounds and difference columns");
  double ex2_alpha = 0.25;
  double ex2_q = 0.3;
  int ex2_theta_steps = 200;
  double ex2_gamma = 0.5;
  std::optional<double> ex2_beta;
  std::string ex2_out = "out";
  std::uint64_t ex2_seed = 0;
  bool ex2_svg = false;
  WeightFlags ex2_w;
  ex2->add_option("--alpha", ex2_alpha, "First exponent")
      ->capture_default_str();
  ex2->add_option("--q", ex2_q, "Channel noise parameter in [0, 1)")
      ->capture_default_str();
  ex2->add_option("--theta-steps", ex2_theta_steps,
                  "Theta subdivisions of [0, 2*pi]")
      ->capture_default_str();
  ex2->add_option("--beta", ex2_beta,
                  "Fix the second exponent (default: 1 - alpha)");
  ex2->add_option("--gamma", ex2_gamma, "Weight-operator mixing parameter")
      ->capture_default_str();
  ex2->add_option("--seed", ex2_seed,
                  "Seed for the assignment search (heuristic mode only)")
      ->envname("SKEWLAB_SEED")
      ->capture_default_str();
  ex2->add_option("--out", ex2_out, "Output directory")
      ->capture_default_str();
  ex2->add_flag("--svg", ex2_svg, "Force SVG emission");
  add_weight_flags(ex2, ex2_w);
  ex2->callback([&] {
    const skewlab::WeightTriple w = make_weights(ex2_w);
    const skewlab::GridSpec theta =
        skewlab::GridSpec::linspace(0.0, 2.0 * kPi, ex2_theta_steps);
    skewlab::SearchOptions search;
    search.seed = ex2_seed;
    skewlab::ScenarioConfig config =
        skewlab::example2_config(ex2_alpha, ex2_q, theta, w, search);
    config.beta = ex2_beta ? ex2_beta : config.beta;
    config.gamma = ex2_gamma;
    run_and_write(std::move(config), ex2_out, ex2_svg);
  });

  // --- example3 -----------------------------------------------------------
  auto* ex3 = app.add_subcommand(
      "example3",
      "Three fixed rotations on an equatorial circle of mixed states; "
      "without --alpha both default exponents (1/3 and 1/5) are emitted");
  double ex3_alpha = 1.0 / 3.0;
  int ex3_theta_steps = 200;
  double ex3_gamma = 0.5;
  std::optional<double> ex3_beta;
  bool ex3_printed_u3 = false;
  std::string ex3_out = "out";
  bool ex3_svg = false;
  WeightFlags ex3_w;
  auto* ex3_alpha_opt =
      ex3->add_option("--alpha", ex3_alpha,
                      "Run a single exponent instead of the default pair");
  ex3->add_option("--theta-steps", ex3_theta_steps,
                  "Theta subdivisions of [0, 2*pi]")
      ->capture_default_str();
  ex3->add_option("--beta", ex3_beta,
                  "Fix the second exponent (default: 1 - alpha)");
  ex3->add_option("--gamma", ex3_gamma, "Weight-operator mixing parameter")
      ->capture_default_str();
  ex3->add_flag("--use-printed-u3", ex3_printed_u3,
                "Use the phased-sigma-z reading of the third rotation");
  ex3->add_option("--out", ex3_out, "Output directory")
      ->capture_default_str();
  ex3->add_flag("--svg", ex3_svg, "Force SVG emission");
  add_weight_flags(ex3, ex3_w);
  ex3->callback([&] {
    const skewlab::WeightTriple w = make_weights(ex3_w);
    const skewlab::GridSpec theta =
        skewlab::GridSpec::linspace(0.0, 2.0 * kPi, ex3_theta_steps);
    const skewlab::U3Variant variant = ex3_printed_u3
                                           ? skewlab::U3Variant::phased_sigma_z
                                           : skewlab::U3Variant::z_rotation;
    auto configure = [&](double alpha) {
      skewlab::ScenarioConfig c =
          skewlab::example3_config(alpha, theta, variant, w);
      c.beta = ex3_beta ? ex3_beta : c.beta;
      c.gamma = ex3_gamma;
      return c;
    };
    if (ex3_alpha_opt->count() > 0) {
      run_and_write(configure(ex3_alpha), ex3_out, ex3_svg);
      return;
    }
    skewlab::ScenarioConfig first = configure(1.0 / 3.0);
    first.name += "-alpha-1-3";
    first.csv_name = "example3_alpha_1_3.csv";
    first.svg_name = "example3_alpha_1_3.svg";
    run_and_write(std::move(first), ex3_out, ex3_svg);
    skewlab::ScenarioConfig second = configure(0.2);
    second.name += "-alpha-1-5";
    second.csv_name = "example3_alpha_1_5.csv";
    second.svg_name = "example3_alpha_1_5.svg";
    run_and_write(std::move(second), ex3_out, ex3_svg);
  });

  // --- run ----------------------------------------------------------------
  auto* run = app.add_subcommand(
      "run", "Run a sweep described by a scenario JSON file");
  std::string run_scenario_path;
  std::string run_out = "out";
  bool run_svg = false;
  std::optional<std::uint64_t> run_seed;
  run->add_option("--scenario", run_scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Output directory")
      ->capture_default_str();
  run->add_flag("--svg", run_svg, "Emit an SVG even if the scenario or its "
                                  "defaults do not ask for one");
  run->add_option("--seed", run_seed,
                  "Override the assignment-search seed from the scenario")
      ->envname("SKEWLAB_SEED");
  run->callback([&] {
    skewlab::ScenarioConfig config =
        skewlab::parse_scenario_file(run_scenario_path);
    if (run_seed) config.search.seed = *run_seed;
    run_and_write(std::move(config), run_out, run_svg);
  });

  // --- verify -------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify",
      "Run the randomized property suite; one PASS/FAIL line per family");
  skewlab::VerifyOptions vopt;
  bool expect_fail = false;
  verify->add_option("--seed", vopt.seed, "Base seed of the run")
      ->envname("SKEWLAB_SEED")
      ->capture_default_str();
  verify->add_option("--count", vopt.count, "Case budget of the largest families")
      ->capture_default_str();
  verify
      ->add_option("--dims", vopt.dims,
                   "State dimensions to sample (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  verify->add_option("--n-min", vopt.n_min, "Smallest element count")
      ->capture_default_str();
  verify->add_option("--n-max", vopt.n_max, "Largest element count")
      ->capture_default_str();
  verify->add_option("--only", vopt.only, "Run a single family by name");
  verify->add_option("--out", vopt.out_dir,
                     "Directory for counterexample dumps")
      ->capture_default_str();
  verify->add_flag(
      "--expect-fail", expect_fail,
      "Inject a known failure and require the suite to catch and dump it");
  verify->callback([&] {
    vopt.inject_failure = expect_fail;
    exit_code = run_verify_command(vopt, expect_fail);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const skewlab::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return exit_code;
}
