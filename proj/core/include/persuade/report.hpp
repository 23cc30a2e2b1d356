#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace persuade {

/// "%.12g" with a "." decimal separator regardless of locale.
std::string format_number(double v);

std::string csv_cell(double v);
std::string csv_cell(std::uint64_t v);  // serves std::size_t too
std::string csv_cell(bool v);                         // "1" / "0"
std::string csv_cell(const std::optional<double>& v); // empty cell when absent

/// Writes header + rows, comma separated, every line newline-terminated.
/// Throws if a row width disagrees with the header or the file cannot be
/// written.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// One solved discount factor along a trajectory run.  Brackets and rate
/// diagnostics are optional because they only exist for ergodic chains and
/// near-one discounting respectively; the judged tolerance is mandatory.
struct TrajectoryRow {
  std::string model = "persuasion";
  double delta = 0;
  double phi = 0;
  double psi = 0;
  std::optional<double> bracket_lower;
  std::optional<double> bracket_upper;
  std::optional<double> supgap;
  std::optional<double> bound_ratio;
  double tolerance = 0;
};

void write_trajectory_csv(const std::string& path, const std::vector<TrajectoryRow>& rows,
                          std::uint64_t seed);

/// One Monte Carlo estimate row.  `y` is only set for combined-erasure runs.
struct GammaRow {
  std::string label;
  double x = 0;
  std::optional<double> y;
  std::size_t horizon = 0;
  std::size_t trials = 0;
  double mean = 0;
  double stderr_ = 0;
  double bound = 0;
  std::optional<double> target_value;
  bool pass = true;
  std::uint64_t seed = 0;
  double tolerance = 0;
};

void write_gamma_csv(const std::string& path, const std::vector<GammaRow>& rows);

/// One verified inequality or equality, for summary files.
struct CheckRow {
  std::string name;
  double measured = 0;
  double bound = 0;
  bool pass = true;
  std::string note;
};

/// Plain-text run summary: provenance header, one line per check, final
/// verdict.  Returns the overall pass flag.
bool write_summary(const std::string& path, const std::string& title,
                   const std::vector<std::string>& provenance,
                   const std::vector<CheckRow>& checks);

}  // namespace persuade
