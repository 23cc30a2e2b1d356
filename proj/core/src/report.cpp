#include "persuade/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace persuade {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  // snprintf honours the C locale here (never changed by this library), so
  // the separator is already "."; normalise defensively anyway.
  for (char& c : buf) {
    if (c == ',') c = '.';
    if (c == '\0') break;
  }
  return buf;
}

std::string csv_cell(double v) { return format_number(v); }
std::string csv_cell(std::uint64_t v) { return std::to_string(v); }
std::string csv_cell(bool v) { return v ? "1" : "0"; }
std::string csv_cell(const std::optional<double>& v) {
  return v.has_value() ? format_number(*v) : std::string();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t c = 0; c < header.size(); ++c)
    out << (c ? "," : "") << header[c];
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::runtime_error("csv row width " + std::to_string(row.size()) +
                               " does not match header width " + std::to_string(header.size()) +
                               " in " + path);
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << row[c];
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

void write_trajectory_csv(const std::string& path, const std::vector<TrajectoryRow>& rows,
                          std::uint64_t seed) {
  std::vector<std::string> header = {"model",         "delta",   "phi",
                                     "psi",           "bracket_lower", "bracket_upper",
                                     "supgap",        "bound_ratio",   "tolerance",
                                     "seed"};
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    out.push_back({r.model, csv_cell(r.delta), csv_cell(r.phi), csv_cell(r.psi),
                   csv_cell(r.bracket_lower), csv_cell(r.bracket_upper), csv_cell(r.supgap),
                   csv_cell(r.bound_ratio), csv_cell(r.tolerance), csv_cell(seed)});
  }
  write_csv(path, header, out);
}

void write_gamma_csv(const std::string& path, const std::vector<GammaRow>& rows) {
  std::vector<std::string> header = {"label", "x",      "y",    "N",         "trials",
                                     "mean",  "stderr", "bound", "target_value", "pass",
                                     "seed",  "tolerance"};
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    out.push_back({r.label, csv_cell(r.x), csv_cell(r.y), csv_cell(r.horizon),
                   csv_cell(r.trials), csv_cell(r.mean), csv_cell(r.stderr_), csv_cell(r.bound),
                   csv_cell(r.target_value), csv_cell(r.pass), csv_cell(r.seed),
                   csv_cell(r.tolerance)});
  }
  write_csv(path, header, out);
}

bool write_summary(const std::string& path, const std::string& title,
                   const std::vector<std::string>& provenance,
                   const std::vector<CheckRow>& checks) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << title << "\n";
  out << std::string(title.size(), '=') << "\n";
  for (const auto& line : provenance) out << line << "\n";
  out << "\n";
  std::size_t passed = 0;
  for (const auto& c : checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  measured=" << format_number(c.measured)
        << "  bound=" << format_number(c.bound);
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
    if (c.pass) ++passed;
  }
  const bool all = passed == checks.size();
  out << "\nRESULT: " << (all ? "PASS" : "FAIL") << " (" << passed << "/" << checks.size()
      << " checks)\n";
  if (!out) throw std::runtime_error("write failed for " + path);
  return all;
}

}  // namespace persuade
