#pragma once

// Command-line front end. Every command writes one table (CSV with a single
// header row, or JSON with a metadata envelope) to --output or stdout.
//
// Exit codes: 0 success, 2 invalid flags or unwritable output, 3 physical
// regime error, 4 index out of range.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace dwg::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kRegime = 3, kRange = 4 };

/// "lo:hi:n". n must be >= 1.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;

  /// n points from lo to hi inclusive (just lo when n == 1).
  std::vector<double> linspace() const;
  /// Centres of n equal cells spanning [lo, hi].
  std::vector<double> cell_centers() const;
};

/// Throws std::invalid_argument on malformed input or n < 1.
GridSpec parse_grid(const std::string& text);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json meta = nlohmann::json::object();
};

/// Doubles are printed with 17 significant digits.
void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dwg::cli
