#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lorhelix/catalog.hpp"
#include "lorhelix/frenet.hpp"

namespace lorhelix::cli {

enum Exit { kOk = 0, kIoError = 1, kRejected = 2, kDiscrepant = 3 };

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
};

/// "min:max:step"; throws Error(InvalidArgument) unless step > 0 and min < max.
Grid parse_grid(const std::string& text);

/// "+1", "1", "-1".
int parse_epsilon(const std::string& text);

AxisRequest parse_axis(const std::string& text);

enum class Projection { X1X2, X1X3, X2X3 };
Projection parse_projection(const std::string& text);

struct SvgResult {
  std::string svg;
  std::vector<std::string> warnings;
};

/// One polyline of the projected samples with axis labels, auto-scaled.
SvgResult render_svg(const CurveSamples& samples, Projection projection, const std::string& title);

/// Causal tolerance from LORHELIX_TOL, else the library default.
double causal_tolerance_from_env();

/// Runs one command line (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lorhelix::cli
