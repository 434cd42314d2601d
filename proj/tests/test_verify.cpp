#include "doctest.h"
#include "mpent/types.hpp"
#include "mpent/verify.hpp"

using namespace mpent;

TEST_CASE("check relations") {
  CHECK(make_check("a", 1.0, 1.0005, 1e-3).pass);
  CHECK_FALSE(make_check("a", 1.0, 1.01, 1e-3).pass);
  CHECK(make_check("b", -1e-10, 0.0, 1e-9, Relation::AtLeast).pass);
  CHECK_FALSE(make_check("b", -1e-8, 0.0, 1e-9, Relation::AtLeast).pass);
  CHECK(make_check("c", 0.4, 0.5, 0.0, Relation::Below).pass);
  CHECK_FALSE(make_check("c", 0.5, 0.5, 0.0, Relation::Below).pass);
  CHECK(std::string(relation_symbol(Relation::AtMost)) == "<=");
}

TEST_CASE("suites are sorted and pass") {
  CHECK(suite_names().size() == 5);
  CHECK_THROWS_AS(run_suite("bogus", 1), UsageError);
  for (const char* name : {"counterexample", "purity-lemma"}) {
    const SuiteResult r = run_suite(name, 0x5eed, 1);
    CHECK(r.passed());
    for (std::size_t i = 1; i < r.checks.size(); ++i) CHECK(r.checks[i - 1].name <= r.checks[i].name);
  }
}
