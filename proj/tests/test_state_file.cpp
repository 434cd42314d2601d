#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mpent/state_file.hpp"
#include "mpent/states.hpp"

using namespace mpent;

namespace {

int error_line(const std::string& text) {
  try {
    parse_state_file(text);
  } catch (const StateFileError& e) {
    return e.line();
  }
  return -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pure and mixed round trips are byte identical") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::vector<StateFile> files{
      {random_pure({2, 3}, 1), "random"},
      {ghz(2, 3), ""},
      {random_mixed({2, 2}, 3, 2), "mixed \"quoted\""},
      {mems({2, 2, {0.5, 0.5}, std::nullopt}), "mems"}};
  int n = 0;
  for (const StateFile& f : files) {
    const std::string a = (dir / ("mpent_rt_a" + std::to_string(n) + ".json")).string();
    const std::string b = (dir / ("mpent_rt_b" + std::to_string(n) + ".json")).string();
    ++n;
    write_state_file(a, f);
    const StateFile back = read_state_file(a);
    write_state_file(b, back);
    CHECK(slurp(a) == slurp(b));
    CHECK(back.label == f.label);
    CHECK(back.is_pure() == f.is_pure());
    CHECK((back.density().matrix() - f.density().matrix()).norm() == 0.0);
    std::remove(a.c_str());
    std::remove(b.c_str());
  }
}

TEST_CASE("canonical layout") {
  const std::string text = format_state_file({Ket::basis({2}, {1}), "q"});
  CHECK(text ==
        "{\n  \"dims\": [2],\n  \"kind\": \"pure\",\n  \"label\": \"q\",\n  \"data\": [\n"
        "    [0, 0],\n    [1, 0]\n  ]\n}\n");
}

TEST_CASE("errors carry line numbers") {
  CHECK(error_line("{\n \"dims\": [2],\n \"kind\": \"pure\",\n \"data\": [\n  [1, 0],\n  [1, 0]\n ]\n}") == 4);
  const std::string nonherm =
      "{\"dims\": [2], \"kind\": \"mixed\", \"data\": [\n"
      "  [[0.5, 0], [0.1, 0]],\n"
      "  [[0.3, 0], [0.5, 0]]\n"
      "]}";
  CHECK(error_line(nonherm) == 2);
  const std::string badpair =
      "{\"dims\": [2], \"kind\": \"pure\", \"data\": [\n  [1, 0],\n  [0]\n]}";
  CHECK(error_line(badpair) == 3);
  CHECK(error_line("{\"dims\": [2],\n \"kind\": \"pure\",\n \"data\": [[1,0],[0,0]],,}") == 3);
  CHECK(error_line("{\"dims\": [2], \"kind\": \"weird\", \"data\": []}") == 0);
  CHECK_THROWS_AS(parse_state_file("[]"), StateFileError);
  CHECK_THROWS_AS(parse_state_file("{\"kind\": \"pure\", \"data\": []}"), StateFileError);
  CHECK_THROWS_AS(parse_state_file("{\"dims\": [0], \"kind\": \"pure\", \"data\": []}"),
                  StateFileError);
}

TEST_CASE("trace check") {
  const std::string text =
      "{\"dims\": [2], \"kind\": \"mixed\", \"data\": [\n"
      "  [[0.6, 0], [0, 0]],\n"
      "  [[0, 0], [0.6, 0]]\n"
      "]}";
  CHECK(error_line(text) == 1);
}

TEST_CASE("number parsing") {
  CHECK(parse_number("327/512") == 327.0 / 512.0);
  CHECK(parse_number(" 0.125 ") == 0.125);
  CHECK(parse_number("-3/4") == -0.75);
  CHECK_THROWS_AS(parse_number("1/0"), UsageError);
  CHECK_THROWS_AS(parse_number("abc"), UsageError);
  CHECK_THROWS_AS(parse_number(""), UsageError);
  const auto v = parse_number_list("327/512,37/128,37/512,0");
  REQUIRE(v.size() == 4);
  CHECK(v[1] == 37.0 / 128.0);
}
