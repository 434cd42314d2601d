#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mpent/types.hpp"

namespace mpent {

/// Malformed or invalid state file. line is 1-based, 0 when unknown.
class StateFileError : public UsageError {
 public:
  StateFileError(const std::string& what, int line)
      : UsageError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct StateFile {
  std::variant<Ket, DensityOperator> state;
  std::string label;

  bool is_pure() const { return std::holds_alternative<Ket>(state); }
  const Dims& dims() const;
  /// The state as a density operator (pure states are projected).
  DensityOperator density() const;
};

/// JSON object with keys dims, kind ("pure" | "mixed"), optional label, and
/// data: [re, im] pairs (pure) or rows of pairs (mixed).
StateFile parse_state_file(std::string_view text);
StateFile read_state_file(const std::string& path);

/// Canonical text form; numbers use the shortest round-trip representation so
/// that write -> read -> write is byte-identical.
std::string format_state_file(const StateFile& file);
void write_state_file(const std::string& path, const StateFile& file);

/// Decimal literal or exact rational "p/q" (correctly rounded division).
double parse_number(std::string_view text);
/// Comma-separated list of parse_number values.
std::vector<double> parse_number_list(std::string_view text);

}  // namespace mpent
