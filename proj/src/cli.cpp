#include "surface_modes/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "surface_modes/errors.hpp"
#include "surface_modes/localization.hpp"
#include "surface_modes/parallel.hpp"
#include "surface_modes/report_io.hpp"
#include "surface_modes/verify.hpp"

namespace surface_modes::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using report::Cell;
using report::Table;
using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RawOptions {
  std::string n;
  int dim = 2;
  int s0 = 1;
  std::string m = "20:80";
  std::string tau;
  std::string out;
  std::string format = "csv";
  int samples = 200;
  std::optional<double> tol_root;
  std::optional<double> tol_quad;
};

double parse_real(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) throw std::invalid_argument("not a number: '" + text + "'");
  return value;
}

int parse_int(const std::string& text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return value;
}

RunConfig build_config(const RawOptions& raw, bool allow_many_n, const std::string& default_taus) {
  RunConfig c;
  try {
    c.n_values = parse_real_list(raw.n);
    const auto [lo, hi] = parse_m_range(raw.m);
    c.m_min = lo;
    c.m_max = hi;
    c.taus = parse_real_list(raw.tau.empty() ? default_taus : raw.tau);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.n_values.empty()) throw ConfigError("--n is required");
  if (!allow_many_n && c.n_values.size() != 1) throw ConfigError("--n takes a single value for this command");
  for (double n : c.n_values) Medium(n, dimension_from_int(raw.dim));
  c.dim = dimension_from_int(raw.dim);
  if (raw.s0 < 1) throw ConfigError("--s0 must be >= 1");
  c.s0 = raw.s0;
  if (c.m_min < 1 || c.m_min > c.m_max) throw ConfigError("--m must satisfy 1 <= m_min <= m_max");
  for (double t : c.taus) {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("each tau must lie in (0, 1)");
  }
  if (raw.tol_root && !(*raw.tol_root > 0.0)) throw ConfigError("--tol-root must be positive");
  if (raw.tol_quad && !(*raw.tol_quad > 0.0)) throw ConfigError("--tol-quad must be positive");
  c.tol_root = raw.tol_root;
  c.tol_quad = raw.tol_quad;
  c.output_path = raw.out;
  if (raw.format == "csv") {
    c.format = Format::csv;
  } else if (raw.format == "json") {
    c.format = Format::json;
  } else {
    throw ConfigError("--format must be csv or json");
  }
  if (raw.samples < 2) throw ConfigError("--samples must be >= 2");
  c.samples = raw.samples;
  return c;
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions s;
  if (c.tol_root) s.residual_tolerance = *c.tol_root;
  return s;
}

QuadratureOptions quad_options(const RunConfig& c) {
  QuadratureOptions q;
  if (c.tol_quad) {
    q.target_relative = *c.tol_quad;
    q.failure_relative = std::max(q.failure_relative, 100.0 * *c.tol_quad);
  }
  return q;
}

Json config_json(const RunConfig& c, const std::string& command) {
  Json j;
  j["command"] = command;
  if (c.n_values.size() == 1) {
    j["n"] = c.n_values.front();
  } else {
    j["n"] = c.n_values;
  }
  j["dim"] = as_int(c.dim);
  j["s0"] = c.s0;
  j["m_min"] = c.m_min;
  j["m_max"] = c.m_max;
  if (command == "localize" || command == "verify") j["tau"] = c.taus;
  if (command == "profile") j["samples"] = c.samples;
  j["tol_root"] = solver_options(c).residual_tolerance;
  j["tol_quad"] = quad_options(c).target_relative;
  j["format"] = c.format == Format::csv ? "csv" : "json";
  return j;
}

void emit(const RunConfig& c, const Json& config, const Table& table, std::ostream& out,
          const std::string& comment = {}) {
  auto write = [&](std::ostream& os) {
    if (c.format == Format::csv) {
      report::write_csv(os, table, comment);
    } else {
      report::write_json(os, config, table);
    }
  };
  if (c.output_path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(c.output_path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + c.output_path);
  write(file);
  if (!file) throw NumericalError("failed writing " + c.output_path);
}

Cell real(double v) { return std::isfinite(v) ? Cell{v} : Cell{}; }
Cell integer(long long v) { return Cell{static_cast<std::int64_t>(v)}; }

Interval display_bracket(const Medium& medium, const ModeIndex& mode) {
  if (medium.contrast() > 1.0) return eigen_bracket(medium, mode);
  return eigen_bracket(medium.dual(), mode).scaled(1.0 / medium.contrast());
}

int regime_m0(const Medium& medium, int s0) {
  const double n = medium.contrast();
  return empirical_m0(n > 1.0 ? n : 1.0 / n, s0, medium.dim());
}

int cmd_eigenvalues(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Medium medium(c.n_values.front(), c.dim);
  const bool dual = medium.contrast() < 1.0;
  const ScanResult result = scan(medium, c.s0, c.m_min, c.m_max, solver_options(c));

  Table table;
  table.columns = {"m", "s0", "n", "dim", "bracket_lo", "bracket_hi", "k", "residual", "sign_change_found",
                   "probe_root_count"};
  if (dual) table.columns.push_back("dual_of");

  std::size_t e = 0, f = 0;
  int failures = 0;
  for (int m = c.m_min; m <= c.m_max; ++m) {
    std::vector<Cell> row{integer(m), integer(c.s0), real(medium.contrast()), integer(as_int(c.dim))};
    if (e < result.eigenvalues.size() && result.eigenvalues[e].mode.m == m) {
      const TransmissionEigenvalue& ev = result.eigenvalues[e++];
      row.insert(row.end(), {real(ev.bracket.lo), real(ev.bracket.hi), real(ev.k), real(ev.residual), Cell{true},
                             integer(ev.probe_root_count)});
      if (dual) row.push_back(ev.dual_k ? real(*ev.dual_k) : Cell{});
    } else {
      const ScanFailure& failure = result.failures.at(f++);
      const Interval b = display_bracket(medium, ModeIndex(m, c.s0));
      row.insert(row.end(), {real(b.lo), real(b.hi), Cell{}, Cell{}, Cell{!failure.no_sign_change}, integer(0)});
      if (dual) row.push_back(Cell{});
      if (!failure.no_sign_change) {
        ++failures;
        err << "solver failure at m=" << m << ": " << failure.message << '\n';
      }
    }
    table.rows.push_back(std::move(row));
  }
  emit(c, config_json(c, "eigenvalues"), table, out);
  return failures == 0 ? 0 : 1;
}

int cmd_localize(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Medium medium(c.n_values.front(), c.dim);
  const SolverOptions solver = solver_options(c);
  const QuadratureOptions quad = quad_options(c);
  const ScanResult result = scan(medium, c.s0, c.m_min, c.m_max, solver);
  const int m0 = regime_m0(medium, c.s0);
  const double n = medium.contrast();

  int failures = 0;
  for (const ScanFailure& f : result.failures) {
    if (!f.no_sign_change) {
      ++failures;
      err << "solver failure at m=" << f.m << ": " << f.message << '\n';
    }
  }

  const auto& evs = result.eigenvalues;
  std::vector<std::vector<std::vector<Cell>>> blocks(evs.size());
  parallel_for(evs.size(), [&](std::size_t i) {
    const TransmissionEigenvalue& ev = evs[i];
    const EigenmodePair pair = make_pair(ev);
    std::optional<ModeContext> ctx;
    if (n > 1.0) ctx = ModeContext{medium, ev.mode, ev, pair, m0};
    for (double tau : c.taus) {
      const LocalizationReport rep = localization_report(pair, tau, quad);
      double ratio_rhs = kNaN, decay = kNaN;
      if (ctx) {
        ratio_rhs = check_ratio_bound_gg1(*ctx, tau, quad).rhs;
        try {
          decay = check_final_decay(*ctx, tau, quad).rhs;
        } catch (const DomainError&) {
        }
      }
      blocks[i].push_back({integer(ev.mode.m), real(ev.k), real(tau), real(rep.ratio_v), real(rep.ratio_w),
                           real(std::log10(rep.ratio_v)), real(std::log10(rep.ratio_w)), real(ratio_rhs), real(decay),
                           Cell{ev.mode.m > m0}});
    }
  });

  Table table;
  table.columns = {"m",          "k",           "tau",        "ratio_v",         "ratio_w",
                   "log10_ratio_v", "log10_ratio_w", "bound_gg1_rhs", "final_decay_rhs", "in_regime"};
  for (auto& block : blocks) {
    for (auto& row : block) table.rows.push_back(std::move(row));
  }
  emit(c, config_json(c, "localize"), table, out);
  return failures == 0 ? 0 : 1;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  for (double n : c.n_values) {
    if (!(n > 1.0)) throw ConfigError("verify requires every contrast n > 1");
  }
  VerifyGrid grid;
  grid.n_values = c.n_values;
  grid.dim = c.dim;
  grid.s0 = c.s0;
  grid.m_min = c.m_min;
  grid.m_max = c.m_max;
  grid.taus = c.taus;
  const std::vector<BoundCheck> checks = verify_grid(grid, solver_options(c), quad_options(c));

  Table table;
  table.columns = {"check_name", "n", "dim", "s0", "m", "tau", "x", "lhs", "rhs", "margin", "passed", "in_regime", "note"};
  int failures = 0;
  for (const BoundCheck& b : checks) {
    table.rows.push_back({Cell{b.name}, real(b.inputs.n), integer(b.inputs.dim), integer(b.inputs.s0),
                          integer(b.inputs.m), real(b.inputs.tau), real(b.inputs.x), real(b.lhs), real(b.rhs),
                          real(b.margin), Cell{b.passed}, Cell{b.in_regime}, Cell{b.note}});
    if (b.in_regime && !b.passed) {
      ++failures;
      err << "failed: " << b.name << " n=" << b.inputs.n << " m=" << b.inputs.m;
      if (std::isfinite(b.inputs.tau)) err << " tau=" << b.inputs.tau;
      err << " lhs=" << b.lhs << " rhs=" << b.rhs << '\n';
    }
  }
  emit(c, config_json(c, "verify"), table, out);
  return failures == 0 ? 0 : 1;
}

int cmd_profile(const RunConfig& c, std::ostream& out) {
  if (c.m_min != c.m_max) throw ConfigError("profile needs a single m");
  const Medium medium(c.n_values.front(), c.dim);
  const TransmissionEigenvalue ev = find_eigenvalue(medium, ModeIndex(c.m_min, c.s0), solver_options(c));
  const EigenmodePair pair = make_pair(ev);
  const std::vector<ProfileRow> rows = radial_profile(pair, c.samples);

  Table table;
  table.columns = {"r", "abs_w_normalized", "abs_v_normalized"};
  for (const ProfileRow& p : rows) table.rows.push_back({real(p.r), real(p.abs_w), real(p.abs_v)});

  Json config = config_json(c, "profile");
  config["k"] = ev.k;
  const std::string comment = "k=" + report::format_double(ev.k) + ",n=" + report::format_double(medium.contrast()) +
                              ",m=" + std::to_string(c.m_min) + ",s0=" + std::to_string(c.s0) +
                              ",dim=" + std::to_string(as_int(c.dim));
  emit(c, config, table, out, comment);
  return 0;
}

void add_common(CLI::App* sub, RawOptions& raw, bool with_tau, bool with_samples) {
  sub->add_option("--n", raw.n, "Refractive contrast n (> 0, != 1); verify accepts a comma list")->required();
  sub->add_option("--dim", raw.dim, "Dimension, 2 or 3")->capture_default_str();
  sub->add_option("--s0", raw.s0, "Index of the Bessel zero opening the bracket")->capture_default_str();
  sub->add_option("--m", raw.m, "Angular order m or inclusive range a:b")->capture_default_str();
  if (with_tau) sub->add_option("--tau", raw.tau, "Comma separated sub-ball radii in (0, 1)");
  sub->add_option("--out", raw.out, "Output file (default: standard output)");
  sub->add_option("--format", raw.format, "csv or json")->capture_default_str();
  if (with_samples) sub->add_option("--samples", raw.samples, "Number of radial samples")->capture_default_str();
  sub->add_option("--tol-root", raw.tol_root, "Relative residual tolerance for eigenvalues");
  sub->add_option("--tol-quad", raw.tol_quad, "Relative quadrature refinement target");
}

}  // namespace

std::pair<int, int> parse_m_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int m = parse_int(text);
    return {m, m};
  }
  return {parse_int(text.substr(0, colon)), parse_int(text.substr(colon + 1))};
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  if (text.empty()) return values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_real(item));
  if (!text.empty() && text.back() == ',') throw std::invalid_argument("trailing comma in '" + text + "'");
  return values;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transmission eigenvalues and surface-localized eigenmodes of the radial interior transmission problem",
               "surface-modes"};
  app.require_subcommand(1);

  RawOptions eig_raw, loc_raw, ver_raw, pro_raw;
  ver_raw.n = "1.5,2,4";
  pro_raw.m = "80";
  auto* eig = app.add_subcommand("eigenvalues", "Transmission eigenvalue per angular order");
  auto* loc = app.add_subcommand("localize", "Interior-to-total norm ratios per eigenmode");
  auto* ver = app.add_subcommand("verify", "Evaluate the bound checks over a parameter grid");
  auto* pro = app.add_subcommand("profile", "Normalized radial profiles of one eigenmode");
  add_common(eig, eig_raw, false, false);
  add_common(loc, loc_raw, true, false);
  add_common(ver, ver_raw, true, false);
  add_common(pro, pro_raw, false, true);
  ver->get_option("--n")->required(false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (eig->parsed()) return cmd_eigenvalues(build_config(eig_raw, false, "0.5"), out, err);
    if (loc->parsed()) return cmd_localize(build_config(loc_raw, false, "0.5"), out, err);
    if (ver->parsed()) return cmd_verify(build_config(ver_raw, true, "0.3,0.5"), out, err);
    if (pro->parsed()) return cmd_profile(build_config(pro_raw, false, "0.5"), out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace surface_modes::cli
