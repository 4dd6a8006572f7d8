#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "surface_modes/dimension.hpp"

namespace surface_modes::cli {

enum class Format { csv, json };

struct RunConfig {
  std::vector<double> n_values;
  Dimension dim = Dimension::two;
  int s0 = 1;
  int m_min = 20;
  int m_max = 80;
  std::vector<double> taus;
  std::optional<double> tol_root;
  std::optional<double> tol_quad;
  std::string output_path;  // empty writes to the output stream
  Format format = Format::csv;
  int samples = 200;
};

/// Parses "a" or "a:b" (inclusive). Throws std::invalid_argument.
std::pair<int, int> parse_m_range(const std::string& text);
/// Parses a comma separated list of reals. Throws std::invalid_argument.
std::vector<double> parse_real_list(const std::string& text);

/// Exit codes: 0 success, 1 solver or check failure, 2 configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace surface_modes::cli
