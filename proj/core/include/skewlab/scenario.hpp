#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewlab/channel_bounds.hpp"
#include "skewlab/csv.hpp"
#include "skewlab/svg.hpp"

namespace skewlab {

enum class ScenarioKind { observables, channels, unitaries };

// Family of qubit states rho(theta) with Bloch vector
// (rxy cos(theta), rxy sin(theta), rz).
struct OrbitState {
  double rxy = 0.0;
  double rz = 0.0;
};

struct GridSpec {
  std::vector<double> points;
  // steps + 1 evenly spaced points from a to b inclusive.
  static GridSpec linspace(double a, double b, int steps);
  static GridSpec single(double v);
};

struct ScenarioConfig {
  std::string name;
  ScenarioKind kind = ScenarioKind::observables;
  // Exactly one of orbit / fixed_state describes the input state.
  std::optional<OrbitState> orbit;
  std::optional<Matrix> fixed_state;
  std::vector<Matrix> elements;        // observables or unitaries
  std::vector<KrausChannel> channels;  // channels kind only
  GridSpec theta_grid;                 // used only with an orbit
  GridSpec alpha_grid;
  std::optional<double> beta;  // per-row default: 1 - alpha
  double gamma = 0.5;
  WeightTriple weights = WeightTriple::defaults();
  SearchOptions search;
  std::string csv_name = "scenario.csv";
  std::string svg_name = "scenario.svg";
  bool want_svg = false;
  // Where the diagnostic dump lands if a computed bound ever exceeds the
  // uncertainty sum it is supposed to stay below.
  std::string violation_dir = ".";
};

// One evaluated sweep: a header, rows in (alpha outer, theta inner) order,
// and enough shape information to plot itself.
struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::string csv_name;
  std::string svg_name;
  bool want_svg = false;
  ScenarioKind kind = ScenarioKind::observables;
  bool has_theta = false;

  std::string to_csv() const;
  std::string to_svg(const std::string& title) const;
  size_t column_index(const std::string& column) const;
  double number_at(size_t row, const std::string& column) const;
};

DensityMatrix state_on_orbit(const OrbitState& orbit, double theta);

// Evaluates the sum of skew informations and every applicable lower bound on
// the whole grid. Throws DominanceViolation (after dumping the offending
// inputs as JSON) if any bound exceeds the sum by more than 1e-9.
SweepResult run_scenario(const ScenarioConfig& config);

// The three worked setups: Pauli triple on a tilted circle of pure states,
// damping/dephasing/flip channels on an equatorial circle, and three fixed
// rotations on an equatorial circle of mixed states.
ScenarioConfig example1_grid_config(const GridSpec& alpha_grid,
                                    const GridSpec& theta_grid,
                                    const WeightTriple& w);
ScenarioConfig example1_slice_config(double alpha, const GridSpec& theta_grid,
                                     const WeightTriple& w);
ScenarioConfig example2_config(double alpha, double q,
                               const GridSpec& theta_grid,
                               const WeightTriple& w,
                               const SearchOptions& search);
ScenarioConfig example3_config(double alpha, const GridSpec& theta_grid,
                               U3Variant variant, const WeightTriple& w);

ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig parse_scenario_file(const std::string& path);

}  // namespace skewlab
