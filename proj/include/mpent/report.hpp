#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mpent {

/// One CSV line. Absent optional fields are written as empty cells.
struct CsvRow {
  std::string command;
  std::string label;
  std::string kind;
  std::string scope;
  std::optional<double> alpha;
  std::optional<double> value;
  std::optional<double> expected;
  std::optional<double> tolerance;
  std::optional<double> tripartite;
  std::optional<double> pair_ab, pair_ac, pair_bc;
  std::optional<double> cut_a_bc, cut_b_ac, cut_ab_c;
  std::optional<double> complete_gap;
  std::uint64_t seed = 0;
  bool converged = true;
};

const std::string& csv_header();
std::string csv_line(const CsvRow& row);
/// Appends rows; the header is written only when the file is new or empty.
void append_csv(const std::string& path, const std::vector<CsvRow>& rows);

/// Shortest round-trip decimal form.
std::string format_double(double v);

struct GapCurve {
  std::string title;
  std::vector<std::pair<double, double>> points;  // (alpha, gap), alpha > 0
  std::optional<double> marker;                   // alpha to highlight
};

/// Self-contained SVG 1.1: log-alpha axis, gap curve, zero line.
void write_gap_svg(std::ostream& out, const GapCurve& curve);
void write_gap_svg(const std::string& path, const GapCurve& curve);

/// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace mpent
