#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mpent {

enum class Relation {
  Near,     // |measured - expected| <= tolerance
  AtLeast,  // measured >= expected - tolerance
  AtMost,   // measured <= expected + tolerance
  Below,    // measured < expected
};

struct Check {
  std::string name;
  double measured;
  double expected;
  double tolerance;
  Relation relation;
  bool pass;
};

Check make_check(std::string name, double measured, double expected, double tolerance,
                 Relation relation = Relation::Near);
const char* relation_symbol(Relation r);

struct SuiteResult {
  std::string suite;
  std::uint64_t seed;
  std::vector<Check> checks;  // sorted by name

  bool passed() const;
};

/// hierarchy, counterexample, additivity, purity-lemma, mems-story.
const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown suite. threads = 0 uses MPENT_THREADS.
SuiteResult run_suite(std::string_view name, std::uint64_t seed, int threads = 0);

}  // namespace mpent
