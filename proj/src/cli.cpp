#include "dwg/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "dwg/classical.hpp"
#include "dwg/errors.hpp"
#include "dwg/model.hpp"
#include "dwg/qbound.hpp"
#include "dwg/qscatter.hpp"

namespace dwg::cli {

using nlohmann::json;

std::vector<double> GridSpec::linspace() const {
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  g.back() = hi;
  return g;
}

std::vector<double> GridSpec::cell_centers() const {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * (i + 0.5) / n;
  return g;
}

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("grid '" + text + "' must have the form lo:hi:n");
  GridSpec g;
  std::size_t pos = 0;
  try {
    g.lo = std::stod(parts[0], &pos);
    if (pos != parts[0].size()) throw std::invalid_argument("");
    g.hi = std::stod(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument("");
    g.n = std::stoi(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("grid '" + text + "' must have the form lo:hi:n");
  }
  if (g.n < 1) throw std::invalid_argument("grid '" + text + "' is empty");
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi)) throw std::invalid_argument("grid bounds must be finite");
  if (g.n > 1 && !(g.hi > g.lo)) throw std::invalid_argument("grid '" + text + "' must have hi > lo");
  return g;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_escape(table.columns[i]);
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) os << format_double(v);
            else if constexpr (std::is_same_v<T, long long>) os << v;
            else os << csv_escape(v);
          },
          row[i]);
    }
    os << '\n';
  }
}

void write_json(const Table& table, std::ostream& os) {
  json doc;
  doc["meta"] = table.meta;
  doc["columns"] = table.columns;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const auto& cell : row) std::visit([&](const auto& v) { r.push_back(v); }, cell);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(1) << '\n';
}

namespace {

// Raised for failures that map to a specific exit code.
struct CommandError : std::runtime_error {
  CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

struct CommonOptions {
  std::string kind;
  std::optional<double> v0;
  std::optional<double> a0;
  double half_width = 1.0;
  std::string format = "csv";
  std::string output = "-";
  unsigned jobs = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool kind_required = true) {
  auto* kind = cmd->add_option("--kind", o.kind, "Well type")->check(CLI::IsMember({"electric", "magnetic"}));
  if (kind_required) kind->required();
  cmd->add_option("--v0", o.v0, "Electric well depth (negative: barrier)");
  cmd->add_option("--a0", o.a0, "Magnetic well strength (negative: barrier)");
  cmd->add_option("--half-width", o.half_width, "Half-width h of the well")->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output,-o", o.output, "Output file, '-' for stdout (relative paths honour DWG_OUTPUT_DIR)");
  cmd->add_option("--jobs,-j", o.jobs, "Worker threads for sweeps")->check(CLI::Range(1u, 1024u));
}

WellKind parse_kind(const CommonOptions& o) { return o.kind == "electric" ? WellKind::Electric : WellKind::Magnetic; }

std::string strength_name(WellKind kind) { return kind == WellKind::Electric ? "v0" : "a0"; }

double require_strength(const CommonOptions& o) {
  const WellKind kind = parse_kind(o);
  const auto& s = kind == WellKind::Electric ? o.v0 : o.a0;
  if (!s) throw CommandError(kUsage, "--" + strength_name(kind) + " is required for a " + o.kind + " well");
  return *s;
}

WellConfig make_well(const CommonOptions& o) {
  WellConfig w{parse_kind(o), require_strength(o), o.half_width};
  w.validate();
  return w;
}

GridSpec grid_flag(const std::string& text, const std::string& flag) {
  try {
    return parse_grid(text);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, flag + ": " + e.what());
  }
}

json base_meta(const std::string& command, const CommonOptions& o) {
  json m;
  m["tool"] = "dwg";
  m["version"] = kVersion;
  m["command"] = command;
  m["units"] = "hbar = v_F = 1; energies and momenta in inverse length; well occupies |x| < half_width";
  json flags;
  flags["kind"] = o.kind;
  if (o.v0) flags["v0"] = *o.v0;
  if (o.a0) flags["a0"] = *o.a0;
  flags["half_width"] = o.half_width;
  m["flags"] = flags;
  return m;
}

void emit(const Table& table, const CommonOptions& o, std::ostream& out) {
  if (o.output == "-") {
    if (o.format == "json") write_json(table, out);
    else write_csv(table, out);
    return;
  }
  std::filesystem::path path(o.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("DWG_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw CommandError(kUsage, "cannot open output file '" + path.string() + "'");
  if (o.format == "json") write_json(table, file);
  else write_csv(table, file);
  if (!file) throw CommandError(kUsage, "failed writing '" + path.string() + "'");
}

// ---------------------------------------------------------------- commands

struct RegionsOptions {
  CommonOptions common;
  std::string plane = "E-k";
  std::optional<double> k;
  std::string e_grid = "-4:4:160";
  std::string param_grid = "-4:4:160";
};

Table cmd_classical_regions(const RegionsOptions& o) {
  const WellKind kind = parse_kind(o.common);
  const bool k_plane = o.plane == "E-k";
  classical::MaskSpec spec;
  spec.kind = kind;
  spec.half_width = o.common.half_width;
  if (k_plane) {
    spec.fixed = classical::FixedParameter::Strength;
    spec.fixed_value = require_strength(o.common);
  } else {
    if (!o.k) throw CommandError(kUsage, "--k is required for the E-" + strength_name(kind) + " plane");
    spec.fixed = classical::FixedParameter::K;
    spec.fixed_value = *o.k;
  }
  const auto E = grid_flag(o.e_grid, "--E-grid").cell_centers();
  const auto P = grid_flag(o.param_grid, "--param-grid").cell_centers();
  const auto mask = classical::region_mask(spec, E, P);

  Table t;
  t.columns = {"param1", "param2", "regime"};
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = 0; j < P.size(); ++j) t.rows.push_back({E[i], P[j], static_cast<long long>(mask[i][j])});
  t.meta = base_meta("classical-regions", o.common);
  t.meta["flags"]["plane"] = k_plane ? "E-k" : "E-" + strength_name(kind);
  if (o.k) t.meta["flags"]["k"] = *o.k;
  t.meta["flags"]["E_grid"] = o.e_grid;
  t.meta["flags"]["param_grid"] = o.param_grid;
  t.meta["axes"] = {{"param1", "E"}, {"param2", k_plane ? "k" : strength_name(kind)}};
  t.meta["regime"] = "1 = classically bound, 0 = otherwise (cell centres)";
  return t;
}

struct TrajectoryOptions {
  CommonOptions common;
  double E = 0.0;
  double k = 0.0;
  std::optional<double> x0;
  double y0 = 0.0;
  double max_length = 20.0;
};

std::string violated_inequality(const QuantumNumbers& qn, const WellConfig& well) {
  if (well.kind == WellKind::Electric)
    return "no classical motion: |E| < |k| and |E + v0| < |k| (E=" + format_double(qn.E) +
           ", k=" + format_double(qn.k) + ", v0=" + format_double(well.strength) + ")";
  return "no classical motion: |E| < min(|k|, |k + a0|) (E=" + format_double(qn.E) + ", k=" + format_double(qn.k) +
         ", a0=" + format_double(well.strength) + ")";
}

Table cmd_trajectory(const TrajectoryOptions& o) {
  const WellConfig well = make_well(o.common);
  const QuantumNumbers qn{o.E, o.k};
  const auto regime = classical::classify(qn, well);
  if (regime.tag == classical::Regime::Forbidden) throw ForbiddenRegime(violated_inequality(qn, well));
  const double x0 = o.x0.value_or(regime.tag == classical::Regime::Bound ? 0.0 : -2.0 * well.half_width);
  const auto path = classical::trace_ray(qn, well, {x0, o.y0}, o.max_length);

  Table t;
  t.columns = {"x", "y", "region"};
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    const auto region = i == 0 ? classical::region_of(path.vertices[0].x, well.half_width) : path.segment_regions[i - 1];
    t.rows.push_back({path.vertices[i].x, path.vertices[i].y, std::string(classical::to_string(region))});
  }
  t.meta = base_meta("trajectory", o.common);
  t.meta["flags"]["E"] = o.E;
  t.meta["flags"]["k"] = o.k;
  t.meta["flags"]["x0"] = x0;
  t.meta["flags"]["y0"] = o.y0;
  t.meta["flags"]["max_length"] = o.max_length;
  t.meta["regime"] = classical::to_string(regime.tag);
  t.meta["termination"] = classical::to_string(path.terminated);
  t.meta["region"] = "region of the segment ending at each vertex (start region for the first)";
  return t;
}

struct TransmissionOptions {
  CommonOptions common;
  double k = 0.0;
  std::string sweep = "alpha";
  std::optional<std::string> grid;
};

Table cmd_transmission(const TransmissionOptions& o) {
  const WellConfig well = make_well(o.common);
  const bool by_alpha = o.sweep == "alpha";
  const std::string grid_text = o.grid.value_or(by_alpha ? "0.005:1.565:400" : "-12:12:481");
  const auto grid = grid_flag(grid_text, "--grid").linspace();

  TransmissionCurve curve;
  try {
    curve = by_alpha ? transmission_vs_angle(o.k, well, grid) : transmission_vs_energy(o.k, well, grid);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, e.what());
  }

  Table t;
  if (by_alpha) t.columns = {"alpha", "E", "T", "R", "unitarity", "classical"};
  else t.columns = {"E", "T", "R", "unitarity", "classical"};
  for (const auto& p : curve.points) {
    std::vector<Cell> row;
    if (by_alpha) row.push_back(p.alpha);
    row.insert(row.end(), {p.E, p.T, p.R, p.probability_check, static_cast<long long>(p.classically_allowed)});
    t.rows.push_back(std::move(row));
  }
  t.meta = base_meta("transmission", o.common);
  t.meta["flags"]["k"] = o.k;
  t.meta["flags"]["sweep"] = o.sweep;
  t.meta["flags"]["grid"] = grid_text;
  t.meta["classical_limit_alpha"] = curve.classical_limit_alpha ? json(*curve.classical_limit_alpha) : json(nullptr);
  t.meta["columns_note"] = "T = |t|, R = |r|, unitarity = |r|^2 + |t|^2, classical = 1 where classical particles cross";
  return t;
}

struct BoundOptions {
  CommonOptions common;
  std::optional<double> k;
  int grid_points = kDefaultScanPoints;
  std::optional<double> e_min;
  std::optional<double> e_max;
  std::optional<std::string> curves;
  bool join = false;
  std::string sweep_grid = "-8:4:241";
  int n_max = 6;
};

Table cmd_bound_spectrum(const BoundOptions& o) {
  const WellKind kind = parse_kind(o.common);
  SweepOptions sopt;
  sopt.half_width = o.common.half_width;
  sopt.grid_points = o.grid_points;
  sopt.jobs = o.common.jobs;

  Table t;
  t.meta = base_meta("bound-spectrum", o.common);
  t.meta["flags"]["grid_points"] = o.grid_points;
  if (o.k) t.meta["flags"]["k"] = *o.k;

  if (o.join) {
    if (o.curves && *o.curves != "k") throw CommandError(kUsage, "--join-resonances sweeps k; use --curves k or omit it");
    const double strength = require_strength(o.common);
    const auto grid = grid_flag(o.sweep_grid, "--sweep-grid").linspace();
    const auto data = join_resonance_bound_plot_data(kind, strength, grid, o.n_max, sopt);
    t.columns = {"type", "branch", "n", "character", "k", "E"};
    for (const auto& c : data.bound)
      for (const auto& s : c.samples)
        t.rows.push_back({std::string("bound"), static_cast<long long>(c.branch_id), 0LL,
                          std::string(to_string(s.character)), s.parameter, s.energy});
    for (std::size_t b = 0; b < data.resonances.size(); ++b) {
      const auto& r = data.resonances[b];
      for (const auto& s : r.samples)
        t.rows.push_back({std::string("resonance"), static_cast<long long>(b), static_cast<long long>(r.n * r.sign),
                          std::string("resonance"), s.parameter, s.energy});
    }
    t.meta["flags"]["join_resonances"] = true;
    t.meta["flags"]["sweep_grid"] = o.sweep_grid;
    t.meta["flags"]["n_max"] = o.n_max;
    t.meta["n_note"] = "resonance rows: n * sign of the root; bound rows: 0";
    return t;
  }

  if (o.curves) {
    const bool by_k = *o.curves == "k";
    double fixed = 0.0;
    if (by_k) {
      fixed = require_strength(o.common);
    } else {
      if (!o.k) throw CommandError(kUsage, "--k is required for --curves strength");
      fixed = *o.k;
    }
    const auto grid = grid_flag(o.sweep_grid, "--sweep-grid").linspace();
    const auto curves =
        spectral_curves(by_k ? SweepParameter::K : SweepParameter::Strength, fixed, grid, kind, sopt);
    t.columns = {"branch", "branch_character", "param", "E", "character"};
    for (const auto& c : curves)
      for (const auto& s : c.samples)
        t.rows.push_back({static_cast<long long>(c.branch_id), std::string(to_string(c.character)), s.parameter,
                          s.energy, std::string(to_string(s.character))});
    t.meta["flags"]["curves"] = *o.curves;
    t.meta["flags"]["sweep_grid"] = o.sweep_grid;
    t.meta["param"] = by_k ? "k" : strength_name(kind);
    return t;
  }

  if (!o.k) throw CommandError(kUsage, "--k is required");
  const WellConfig well = make_well(o.common);
  std::optional<EnergyWindow> window;
  if (o.e_min || o.e_max) window = EnergyWindow{o.e_min.value_or(-std::abs(*o.k)), o.e_max.value_or(std::abs(*o.k))};
  const auto states = find_bound_states(*o.k, well, window, o.grid_points);
  t.columns = {"level", "E", "character", "exterior_decay", "interior_momentum", "interior_character"};
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    t.rows.push_back({static_cast<long long>(i), s.energy, std::string(to_string(s.character)), s.exterior_decay,
                      s.interior.value, std::string(to_string(s.interior.character))});
  }
  return t;
}

struct WavefunctionOptions {
  CommonOptions common;
  double k = 0.0;
  int level = 0;
  std::string character = "any";
  std::string x_grid = "-3:3:601";
  int grid_points = kDefaultScanPoints;
};

Table cmd_wavefunction(const WavefunctionOptions& o) {
  const WellConfig well = make_well(o.common);
  std::vector<BoundState> states;
  for (const auto& s : find_bound_states(o.k, well, std::nullopt, o.grid_points))
    if (o.character == "any" || o.character == to_string(s.character)) states.push_back(s);
  if (o.level < 0 || static_cast<std::size_t>(o.level) >= states.size())
    throw CommandError(kRange, "--level " + std::to_string(o.level) + " out of range: " +
                                   std::to_string(states.size()) + " matching bound state(s) found");
  const auto& state = states[static_cast<std::size_t>(o.level)];
  const auto grid = grid_flag(o.x_grid, "--x-grid").linspace();
  std::vector<SpinorSample> samples;
  try {
    samples = sample_wavefunction(state, grid);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, e.what());
  }

  Table t;
  t.columns = {"x", "re_psi1", "im_psi1", "re_psi2", "im_psi2"};
  for (const auto& s : samples) t.rows.push_back({s.x, s.psi1.real(), s.psi1.imag(), s.psi2.real(), s.psi2.imag()});
  t.meta = base_meta("wavefunction", o.common);
  t.meta["flags"]["k"] = o.k;
  t.meta["flags"]["level"] = o.level;
  t.meta["flags"]["character"] = o.character;
  t.meta["flags"]["x_grid"] = o.x_grid;
  t.meta["energy"] = state.energy;
  t.meta["character"] = to_string(state.character);
  t.meta["normalization"] = "trapezoid integral of |psi1|^2 + |psi2|^2 over the grid is 1; psi1(-h) > 0";
  return t;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical and quantum massless Dirac particles in square electric and magnetic waveguides", "dwg"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RegionsOptions regions;
  auto* c_regions = app.add_subcommand("classical-regions", "Classically bound region mask on an (E, parameter) grid");
  add_common(c_regions, regions.common);
  c_regions->add_option("--plane", regions.plane, "E-k (strength fixed) or E-v0 / E-a0 (k fixed)")
      ->check(CLI::IsMember({"E-k", "E-v0", "E-a0", "E-strength"}));
  c_regions->add_option("--k", regions.k, "Fixed k for the E-strength plane");
  c_regions->add_option("--E-grid", regions.e_grid, "Energy cells lo:hi:n");
  c_regions->add_option("--param-grid", regions.param_grid, "Second-axis cells lo:hi:n");

  TrajectoryOptions traj;
  auto* c_traj = app.add_subcommand("trajectory", "Classical ray path through the well");
  add_common(c_traj, traj.common);
  c_traj->add_option("--E", traj.E, "Energy")->required();
  c_traj->add_option("--k", traj.k, "Conserved y-momentum")->required();
  c_traj->add_option("--x0", traj.x0, "Start x (default -2h, or 0 for bound motion)");
  c_traj->add_option("--y0", traj.y0, "Start y");
  c_traj->add_option("--max-length", traj.max_length, "Path length budget")->check(CLI::PositiveNumber);

  TransmissionOptions trans;
  auto* c_trans = app.add_subcommand("transmission", "Transmission T = |t| against incident angle or energy");
  add_common(c_trans, trans.common);
  c_trans->add_option("--k", trans.k, "Conserved y-momentum")->required();
  c_trans->add_option("--sweep", trans.sweep, "alpha or E")->check(CLI::IsMember({"alpha", "E"}));
  c_trans->add_option("--grid", trans.grid, "Sweep points lo:hi:n (inclusive)");

  BoundOptions bound;
  auto* c_bound = app.add_subcommand("bound-spectrum", "Bound-state energies, spectral curves and resonance loci");
  add_common(c_bound, bound.common);
  c_bound->add_option("--k", bound.k, "Conserved y-momentum");
  c_bound->add_option("--grid-points", bound.grid_points, "Scan points per sub-window")->check(CLI::Range(2, 10000000));
  c_bound->add_option("--E-min", bound.e_min, "Lower end of the energy window");
  c_bound->add_option("--E-max", bound.e_max, "Upper end of the energy window");
  c_bound->add_option("--curves", bound.curves, "Trace spectral curves over k or strength")
      ->check(CLI::IsMember({"k", "strength"}));
  c_bound->add_flag("--join-resonances", bound.join, "Add T = 1 resonance loci over the k sweep");
  c_bound->add_option("--sweep-grid", bound.sweep_grid, "Sweep points lo:hi:n (inclusive)");
  c_bound->add_option("--n-max", bound.n_max, "Highest resonance index")->check(CLI::Range(1, 1000));

  WavefunctionOptions wave;
  auto* c_wave = app.add_subcommand("wavefunction", "Normalized bound-state spinor on an x grid");
  add_common(c_wave, wave.common);
  c_wave->add_option("--k", wave.k, "Conserved y-momentum")->required();
  c_wave->add_option("--level", wave.level, "Level index among matching states, 0 = lowest energy");
  c_wave->add_option("--character", wave.character, "Restrict levels to standard or edge states")
      ->check(CLI::IsMember({"any", "standard", "edge"}));
  c_wave->add_option("--x-grid", wave.x_grid, "Sample points lo:hi:n (inclusive)");
  c_wave->add_option("--grid-points", wave.grid_points, "Scan points per sub-window")->check(CLI::Range(2, 10000000));

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dwg: " << e.what() << '\n';
    return kUsage;
  }

  try {
    Table table;
    const CommonOptions* common = nullptr;
    if (c_regions->parsed()) {
      table = cmd_classical_regions(regions);
      common = &regions.common;
    } else if (c_traj->parsed()) {
      table = cmd_trajectory(traj);
      common = &traj.common;
    } else if (c_trans->parsed()) {
      table = cmd_transmission(trans);
      common = &trans.common;
    } else if (c_bound->parsed()) {
      table = cmd_bound_spectrum(bound);
      common = &bound.common;
    } else {
      table = cmd_wavefunction(wave);
      common = &wave.common;
    }
    emit(table, *common, out);
    return kOk;
  } catch (const CommandError& e) {
    err << "dwg: " << e.what() << '\n';
    return e.code;
  } catch (const RegimeError& e) {
    err << "dwg: " << e.what() << '\n';
    return kRegime;
  } catch (const SingularMatrix& e) {
    err << "dwg: " << e.what() << '\n';
    return kRegime;
  } catch (const std::out_of_range& e) {
    err << "dwg: " << e.what() << '\n';
    return kRange;
  } catch (const std::invalid_argument& e) {
    err << "dwg: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace dwg::cli
