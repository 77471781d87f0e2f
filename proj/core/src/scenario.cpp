#include "skewlab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <utility>

#include <json.hpp>

#include "json_detail.hpp"
#include "skewlab/bounds.hpp"

namespace skewlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
// A reported bound may exceed the uncertainty sum by at most this much
// before the run aborts with a diagnostic dump.
constexpr double kDominanceTol = 1e-9;

const char* kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::observables: return "observables";
    case ScenarioKind::channels: return "channels";
    case ScenarioKind::unitaries: return "unitaries";
  }
  return "unknown";
}

}  // namespace

GridSpec GridSpec::linspace(double a, double b, int steps) {
  if (steps < 1) throw InvalidParams("grid needs at least one step");
  GridSpec g;
  g.points.reserve(static_cast<size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    g.points.push_back(a + (b - a) * static_cast<double>(k) /
                               static_cast<double>(steps));
  }
  return g;
}

GridSpec GridSpec::single(double v) {
  GridSpec g;
  g.points.push_back(v);
  return g;
}

DensityMatrix state_on_orbit(const OrbitState& orbit, double theta) {
  return density_from_bloch(BlochVector({orbit.rxy * std::cos(theta),
                                         orbit.rxy * std::sin(theta),
                                         orbit.rz}));
}

std::string SweepResult::to_csv() const { return skewlab::to_csv(columns, rows); }

size_t SweepResult::column_index(const std::string& column) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column) return i;
  }
  throw BadIndex("no column named '" + column + "'");
}

double SweepResult::number_at(size_t row, const std::string& column) const {
  const Cell& cell = rows.at(row).at(column_index(column));
  if (const double* d = std::get_if<double>(&cell)) return *d;
  throw BadIndex("column '" + column + "' is not numeric");
}

std::string SweepResult::to_svg(const std::string& title) const {
  std::vector<std::string> series_columns;
  switch (kind) {
    case ScenarioKind::observables:
      series_columns = {"sum_k", "lbbar", "lb1", "lb2", "lb3"};
      break;
    case ScenarioKind::channels:
      series_columns = {"lbbar_minus_lb", "lbbar_minus_lb3",
                        "lbbar_minus_lb2"};
      break;
    case ScenarioKind::unitaries:
      series_columns = {"sum_k", "lbtilde", "lb"};
      break;
  }
  series_columns.erase(
      std::remove_if(series_columns.begin(), series_columns.end(),
                     [&](const std::string& c) {
                       return std::find(columns.begin(), columns.end(), c) ==
                              columns.end();
                     }),
      series_columns.end());

  const std::string x_column = has_theta ? "theta" : "alpha";
  // With a two-dimensional grid, plot the theta profile of the first alpha
  // value; rows are ordered alpha-outer so that is a prefix of the rows.
  size_t row_count = rows.size();
  if (has_theta && !rows.empty()) {
    const size_t alpha_col = column_index("alpha");
    const double first_alpha = std::get<double>(rows.front().at(alpha_col));
    size_t prefix = 0;
    while (prefix < rows.size() &&
           std::get<double>(rows[prefix].at(alpha_col)) == first_alpha) {
      ++prefix;
    }
    row_count = prefix;
  }

  PlotSpec spec;
  spec.title = title;
  spec.x_label = x_column;
  spec.y_label = "value";
  for (const std::string& column : series_columns) {
    Series s;
    s.label = column;
    s.x.reserve(row_count);
    s.y.reserve(row_count);
    for (size_t r = 0; r < row_count; ++r) {
      s.x.push_back(number_at(r, x_column));
      s.y.push_back(number_at(r, column));
    }
    spec.series.push_back(std::move(s));
  }
  return render_line_plot(spec);
}

namespace {

struct RowValues {
  double sum_k = 0.0;
  // (id, value) pairs in report order; ids absent for a given setup are
  // simply missing.
  std::vector<std::pair<std::string, double>> bounds;
  std::string assignment;  // channels only

  bool has(const std::string& id) const {
    for (const auto& [k, v] : bounds) {
      if (k == id) return true;
    }
    return false;
  }
  double at(const std::string& id) const {
    for (const auto& [k, v] : bounds) {
      if (k == id) return v;
    }
    throw BadIndex("no bound named '" + id + "' for this row");
  }
};

std::string pick_winner(const RowValues& row) {
  static const char* const candidates[] = {"lb1",    "lb2",    "lb3",
                                           "lbbar1", "lbbar2", "lbbar3"};
  const char* best = nullptr;
  double best_value = 0.0;
  for (const char* id : candidates) {
    if (!row.has(id)) continue;
    const double v = row.at(id);
    if (best == nullptr || v > best_value) {
      best = id;
      best_value = v;
    }
  }
  if (best == nullptr) throw BadIndex("row has no candidate bounds");
  return best;
}

void check_dominance(const ScenarioConfig& config, const RowValues& row,
                     const DensityMatrix& rho, double alpha, double beta,
                     std::optional<double> theta) {
  for (const auto& [id, value] : row.bounds) {
    if (value <= row.sum_k + kDominanceTol) continue;
    nlohmann::json dump;
    dump["scenario"] = config.name;
    dump["kind"] = kind_name(config.kind);
    dump["alpha"] = alpha;
    dump["beta"] = beta;
    dump["gamma"] = config.gamma;
    if (theta) dump["theta"] = *theta;
    dump["state"] = detail::matrix_to_json(rho.matrix());
    dump["bound"] = id;
    dump["bound_value"] = value;
    dump["sum_k"] = row.sum_k;
    if (!row.assignment.empty()) dump["assignment"] = row.assignment;
    const std::filesystem::path path =
        std::filesystem::path(config.violation_dir) /
        "dominance_violation.json";
    write_text_file(path.string(), dump.dump(2) + "\n");
    throw DominanceViolation("bound '" + id + "' exceeds the uncertainty sum (" +
                             format_double(value) + " > " +
                             format_double(row.sum_k) + "); inputs dumped to " +
                             path.string());
  }
}

RowValues evaluate_row(const ScenarioConfig& config, const DensityMatrix& rho,
                       const SkewParams& p) {
  RowValues row;
  switch (config.kind) {
    case ScenarioKind::observables: {
      const PairwiseKTable table = build_k_table(rho, config.elements, p);
      row.sum_k = table.sum_single();
      const BoundReport report =
          merge(prior_bounds_observables(table),
                tightened_bounds_observables(table, config.weights));
      row.bounds = report.entries();
      break;
    }
    case ScenarioKind::unitaries: {
      const PairwiseKTable table = build_k_table(rho, config.elements, p);
      row.sum_k = table.sum_single();
      const BoundReport report = unitary_bounds(table, config.weights);
      row.bounds = report.entries();
      break;
    }
    case ScenarioKind::channels: {
      const ChannelBoundEvaluator ev(rho, config.channels, p);
      row.sum_k = ev.sum_k();
      const ChannelBoundReport priors =
          prior_channel_bounds(ev, config.search);
      const ChannelBoundReport tight =
          optimal_channel_bound(ev, config.weights, config.search);
      for (const auto& e : priors.entries) row.bounds.emplace_back(e.id, e.value);
      for (const auto& e : tight.entries) row.bounds.emplace_back(e.id, e.value);
      row.assignment = tight.at("lbbar").assignment.to_string();
      break;
    }
  }
  return row;
}

std::vector<std::string> make_columns(const ScenarioConfig& config,
                                      bool has_theta, bool lb1_present) {
  std::vector<std::string> columns;
  if (has_theta) columns.push_back("theta");
  columns.push_back("alpha");
  columns.push_back("sum_k");
  if (lb1_present) columns.push_back("lb1");
  columns.push_back("lb2");
  columns.push_back("lb3");
  switch (config.kind) {
    case ScenarioKind::observables:
      columns.insert(columns.end(), {"lbbar1", "lbbar2", "lbbar3", "lbbar"});
      if (lb1_present) columns.push_back("lbbar_minus_lb1");
      columns.insert(columns.end(), {"lbbar_minus_lb2", "lbbar_minus_lb3"});
      break;
    case ScenarioKind::channels:
      columns.insert(columns.end(),
                     {"lb", "lbbar1", "lbbar2", "lbbar3", "lbbar",
                      "lbbar_minus_lb", "lbbar_minus_lb2", "lbbar_minus_lb3"});
      break;
    case ScenarioKind::unitaries:
      columns.insert(columns.end(), {"lb", "lbbar1", "lbbar2", "lbbar3",
                                     "lbtilde", "lbtilde_minus_lb"});
      break;
  }
  columns.push_back("winner");
  if (config.kind == ScenarioKind::channels) columns.push_back("assignment");
  return columns;
}

}  // namespace

SweepResult run_scenario(const ScenarioConfig& config) {
  if (config.orbit.has_value() == config.fixed_state.has_value()) {
    throw InvalidParams(
        "scenario needs exactly one of an orbit or a fixed state");
  }
  if (config.alpha_grid.points.empty()) {
    throw InvalidParams("scenario needs at least one alpha value");
  }
  const bool has_theta = config.orbit.has_value();
  if (has_theta && config.theta_grid.points.empty()) {
    throw InvalidParams("orbit scenarios need at least one theta value");
  }
  int n_elements = 0;
  if (config.kind == ScenarioKind::channels) {
    if (config.channels.size() < 2) {
      throw TooFewChannels("channel scenarios need at least two channels");
    }
    if (!config.elements.empty()) {
      throw InvalidParams("channel scenarios take channels, not elements");
    }
    n_elements = static_cast<int>(config.channels.size());
  } else {
    if (config.elements.size() < 2) {
      throw TooFewElements("scenario needs at least two elements");
    }
    if (!config.channels.empty()) {
      throw InvalidParams("only channel scenarios take channels");
    }
    n_elements = static_cast<int>(config.elements.size());
  }
  const bool lb1_present = n_elements > 2;

  SweepResult result;
  result.kind = config.kind;
  result.has_theta = has_theta;
  result.csv_name = config.csv_name;
  result.svg_name = config.svg_name;
  result.want_svg = config.want_svg;
  result.columns = make_columns(config, has_theta, lb1_present);

  std::optional<DensityMatrix> fixed;
  if (config.fixed_state) {
    fixed = DensityMatrix::from_matrix(*config.fixed_state);
  }
  const std::vector<double> thetas =
      has_theta ? config.theta_grid.points : std::vector<double>{0.0};

  result.rows.reserve(config.alpha_grid.points.size() * thetas.size());
  for (double alpha : config.alpha_grid.points) {
    const double beta = config.beta.value_or(1.0 - alpha);
    const SkewParams p(alpha, beta, config.gamma);
    for (double theta : thetas) {
      const DensityMatrix rho =
          has_theta ? state_on_orbit(*config.orbit, theta) : *fixed;
      const RowValues row = evaluate_row(config, rho, p);
      check_dominance(config, row, rho, alpha, beta,
                      has_theta ? std::optional<double>(theta) : std::nullopt);

      std::vector<Cell> cells;
      cells.reserve(result.columns.size());
      for (const std::string& column : result.columns) {
        if (column == "theta") {
          cells.emplace_back(theta);
        } else if (column == "alpha") {
          cells.emplace_back(alpha);
        } else if (column == "sum_k") {
          cells.emplace_back(row.sum_k);
        } else if (column == "winner") {
          cells.emplace_back(pick_winner(row));
        } else if (column == "assignment") {
          cells.emplace_back(row.assignment);
        } else if (column.rfind("lbbar_minus_", 0) == 0) {
          cells.emplace_back(row.at("lbbar") -
                             row.at(column.substr(12)));
        } else if (column.rfind("lbtilde_minus_", 0) == 0) {
          cells.emplace_back(row.at("lbtilde") -
                             row.at(column.substr(14)));
        } else {
          cells.emplace_back(row.at(column));
        }
      }
      result.rows.push_back(std::move(cells));
    }
  }
  return result;
}

ScenarioConfig example1_grid_config(const GridSpec& alpha_grid,
                                    const GridSpec& theta_grid,
                                    const WeightTriple& w) {
  ScenarioConfig c;
  c.name = "pauli-triple-grid";
  c.kind = ScenarioKind::observables;
  c.orbit = OrbitState{std::sqrt(2.0) / 2.0, std::sqrt(2.0) / 2.0};
  c.elements = {pauli_matrix(1), pauli_matrix(2), pauli_matrix(3)};
  c.theta_grid = theta_grid;
  c.alpha_grid = alpha_grid;
  c.weights = w;
  c.csv_name = "example1_grid.csv";
  c.svg_name = "example1_grid.svg";
  c.want_svg = false;
  return c;
}

ScenarioConfig example1_slice_config(double alpha, const GridSpec& theta_grid,
                                     const WeightTriple& w) {
  ScenarioConfig c = example1_grid_config(GridSpec::single(alpha), theta_grid, w);
  c.name = "pauli-triple-slice";
  c.csv_name = "example1_slice.csv";
  c.svg_name = "example1_slice.svg";
  c.want_svg = true;
  return c;
}

ScenarioConfig example2_config(double alpha, double q,
                               const GridSpec& theta_grid,
                               const WeightTriple& w,
                               const SearchOptions& search) {
  ScenarioConfig c;
  c.name = "qubit-channels";
  c.kind = ScenarioKind::channels;
  c.orbit = OrbitState{std::sqrt(3.0) / 2.0, 0.0};
  c.channels = {amplitude_damping(q), phase_damping(q), bit_flip(q)};
  c.theta_grid = theta_grid;
  c.alpha_grid = GridSpec::single(alpha);
  c.weights = w;
  c.search = search;
  c.csv_name = "example2.csv";
  c.svg_name = "example2.svg";
  c.want_svg = true;
  return c;
}

ScenarioConfig example3_config(double alpha, const GridSpec& theta_grid,
                               U3Variant variant, const WeightTriple& w) {
  ScenarioConfig c;
  c.name = "qubit-rotations";
  c.kind = ScenarioKind::unitaries;
  c.orbit = OrbitState{std::sqrt(2.0) / 2.0, 0.0};
  for (const UnitaryOperator& u : rotation_unitaries(variant)) {
    c.elements.push_back(u.matrix());
  }
  c.theta_grid = theta_grid;
  c.alpha_grid = GridSpec::single(alpha);
  c.weights = w;
  c.csv_name = "example3.csv";
  c.svg_name = "example3.svg";
  c.want_svg = true;
  return c;
}

namespace {

GridSpec parse_grid(const nlohmann::json& j, const char* what) {
  if (j.is_number()) return GridSpec::single(j.get<double>());
  if (j.is_object()) {
    if (j.contains("values")) {
      const auto& values = j.at("values");
      if (!values.is_array() || values.empty()) {
        throw ConfigParse(std::string(what) +
                          ".values must be a non-empty array");
      }
      GridSpec g;
      for (const auto& v : values) {
        if (!v.is_number()) {
          throw ConfigParse(std::string(what) + ".values must be numbers");
        }
        g.points.push_back(v.get<double>());
      }
      return g;
    }
    if (j.contains("start") && j.contains("stop") && j.contains("steps")) {
      return GridSpec::linspace(j.at("start").get<double>(),
                                j.at("stop").get<double>(),
                                j.at("steps").get<int>());
    }
  }
  throw ConfigParse(std::string(what) +
                    " must be a number, {values:[..]} or "
                    "{start,stop,steps}");
}

Matrix parse_matrix_field(const nlohmann::json& j, const char* what) {
  if (!j.is_object() || !j.contains("matrix")) {
    throw ConfigParse(std::string(what) +
                      " entries must be named strings or {matrix: ...}");
  }
  return detail::matrix_from_json(j.at("matrix"));
}

std::vector<Matrix> parse_observables(const nlohmann::json& list) {
  std::vector<Matrix> out;
  for (const auto& item : list) {
    if (item.is_string()) {
      const std::string name = item.get<std::string>();
      if (name == "pauli1" || name == "pauli2" || name == "pauli3") {
        out.push_back(pauli_matrix(name.back() - '0'));
      } else {
        throw ConfigParse("unknown observable '" + name + "'");
      }
    } else {
      out.push_back(Observable(parse_matrix_field(item, "elements")).matrix());
    }
  }
  return out;
}

std::vector<Matrix> parse_unitaries(const nlohmann::json& list) {
  std::vector<Matrix> out;
  for (const auto& item : list) {
    if (item.is_string()) {
      const std::string name = item.get<std::string>();
      if (name == "u1") {
        out.push_back(rotation_unitaries()[0].matrix());
      } else if (name == "u2") {
        out.push_back(rotation_unitaries()[1].matrix());
      } else if (name == "u3") {
        out.push_back(rotation_unitaries()[2].matrix());
      } else if (name == "u3_printed") {
        out.push_back(rotation_unitaries(U3Variant::phased_sigma_z)[2].matrix());
      } else {
        throw ConfigParse("unknown unitary '" + name + "'");
      }
    } else {
      out.push_back(
          UnitaryOperator(parse_matrix_field(item, "unitaries")).matrix());
    }
  }
  return out;
}

std::vector<KrausChannel> parse_channels(const nlohmann::json& list) {
  std::vector<KrausChannel> out;
  for (const auto& item : list) {
    if (!item.is_object()) {
      throw ConfigParse("channels entries must be objects");
    }
    if (item.contains("name")) {
      const std::string name = item.at("name").get<std::string>();
      if (!item.contains("q")) {
        throw ConfigParse("named channel '" + name + "' needs a parameter q");
      }
      const double q = item.at("q").get<double>();
      if (name == "AD" || name == "amplitude_damping") {
        out.push_back(amplitude_damping(q));
      } else if (name == "PD" || name == "phase_damping") {
        out.push_back(phase_damping(q));
      } else if (name == "BF" || name == "bit_flip") {
        out.push_back(bit_flip(q));
      } else {
        throw ConfigParse("unknown channel '" + name + "'");
      }
    } else if (item.contains("kraus")) {
      const auto& kraus_list = item.at("kraus");
      if (!kraus_list.is_array() || kraus_list.empty()) {
        throw ConfigParse("channel kraus must be a non-empty array");
      }
      std::vector<Matrix> kraus;
      for (const auto& k : kraus_list) {
        kraus.push_back(detail::matrix_from_json(k));
      }
      out.push_back(KrausChannel::create(
          item.value("label", std::string("custom")), std::move(kraus)));
    } else {
      throw ConfigParse("channels entries need a name or a kraus list");
    }
  }
  return out;
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigParse(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigParse("scenario must be a JSON object");

  ScenarioConfig c;
  try {
    c.name = j.value("name", std::string("scenario"));
    if (!j.contains("kind")) throw ConfigParse("scenario needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "observables") {
      c.kind = ScenarioKind::observables;
    } else if (kind == "channels") {
      c.kind = ScenarioKind::channels;
    } else if (kind == "unitaries") {
      c.kind = ScenarioKind::unitaries;
    } else {
      throw ConfigParse("kind must be observables, channels or unitaries");
    }

    if (!j.contains("state")) throw ConfigParse("scenario needs a state");
    const auto& st = j.at("state");
    if (st.is_object() && st.contains("orbit")) {
      const auto& orbit = st.at("orbit");
      c.orbit = OrbitState{orbit.at("rxy").get<double>(),
                           orbit.at("rz").get<double>()};
    } else if (st.is_object() && st.contains("bloch")) {
      const auto& r = st.at("bloch");
      if (!r.is_array() || r.size() != 3) {
        throw ConfigParse("state.bloch must be an array of three numbers");
      }
      c.fixed_state = density_from_bloch(
                          BlochVector({r.at(0).get<double>(),
                                       r.at(1).get<double>(),
                                       r.at(2).get<double>()}))
                          .matrix();
    } else if (st.is_object() && st.contains("matrix")) {
      c.fixed_state = detail::matrix_from_json(st.at("matrix"));
    } else {
      throw ConfigParse("state needs one of orbit, bloch or matrix");
    }

    switch (c.kind) {
      case ScenarioKind::observables:
        if (!j.contains("elements")) {
          throw ConfigParse("observable scenarios need elements");
        }
        c.elements = parse_observables(j.at("elements"));
        break;
      case ScenarioKind::unitaries:
        if (j.contains("unitaries")) {
          c.elements = parse_unitaries(j.at("unitaries"));
        } else if (j.contains("elements")) {
          c.elements = parse_unitaries(j.at("elements"));
        } else {
          throw ConfigParse("unitary scenarios need unitaries");
        }
        break;
      case ScenarioKind::channels:
        if (!j.contains("channels")) {
          throw ConfigParse("channel scenarios need channels");
        }
        c.channels = parse_channels(j.at("channels"));
        break;
    }

    if (j.contains("theta")) {
      if (!c.orbit) {
        throw ConfigParse("a theta grid requires an orbit state");
      }
      c.theta_grid = parse_grid(j.at("theta"), "theta");
    } else if (c.orbit) {
      c.theta_grid = GridSpec::linspace(0.0, 2.0 * kPi, 200);
    }

    if (j.contains("alpha")) {
      c.alpha_grid = parse_grid(j.at("alpha"), "alpha");
    } else {
      c.alpha_grid = GridSpec::linspace(0.01, 0.99, 49);
    }
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    c.gamma = j.value("gamma", 0.5);

    if (j.contains("weights")) {
      const auto& w = j.at("weights");
      auto weight = [&](const char* id, WeightRegime regime) {
        const auto& entry = w.at(id);
        return WeightParams(entry.at("M").get<double>(),
                            entry.at("L").get<double>(), regime);
      };
      c.weights = WeightTriple{weight("w1", WeightRegime::m_ge_l),
                               weight("w2", WeightRegime::l_ge_m),
                               weight("w3", WeightRegime::l_gt_m)};
    }

    if (j.contains("search")) {
      const auto& s = j.at("search");
      c.search.seed = s.value("seed", c.search.seed);
      c.search.restarts = s.value("restarts", c.search.restarts);
      c.search.exhaustive_limit =
          s.value("exhaustive_limit", c.search.exhaustive_limit);
      c.search.max_evaluations =
          s.value("max_evaluations", c.search.max_evaluations);
    }

    c.csv_name = j.value("csv", std::string("scenario.csv"));
    std::string default_svg = c.csv_name;
    const size_t dot = default_svg.rfind(".csv");
    if (dot != std::string::npos && dot == default_svg.size() - 4) {
      default_svg = default_svg.substr(0, dot) + ".svg";
    } else {
      default_svg = "scenario.svg";
    }
    c.svg_name = j.value("svg", default_svg);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParse(std::string("bad scenario field: ") + e.what());
  }
  return c;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
  try {
    return parse_scenario_text(read_text_file(path));
  } catch (const ConfigParse& e) {
    throw ConfigParse(path + ": " + e.what());
  }
}

}  // namespace skewlab
