#include <doctest.h>

#include <sstream>

#include "fairlens/csv.hpp"

using namespace fairlens;

TEST_CASE("parses header and rows in order") {
  std::istringstream in("a,b,c\n1,2,3\n4,5,6\n");
  auto t = parse_csv(in);
  REQUIRE(t.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "3"});
  CHECK(t.rows[1] == std::vector<std::string>{"4", "5", "6"});
}

TEST_CASE("empty file with header only gives zero records") {
  std::istringstream in("a,b\n");
  auto t = parse_csv(in);
  CHECK(t.rows.empty());
}

TEST_CASE("ragged row errors with the row number") {
  std::istringstream in("a,b\n1,2\n3\n");
  CHECK_THROWS_WITH_AS(parse_csv(in, "f"), doctest::Contains("row 3"), std::runtime_error);
}

TEST_CASE("quoted fields with commas, quotes, newlines") {
  std::istringstream in("a,b\n\"x,y\",\"he said \"\"hi\"\"\"\n\"line1\nline2\",z\n");
  auto t = parse_csv(in);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "x,y");
  CHECK(t.rows[0][1] == "he said \"hi\"");
  CHECK(t.rows[1][0] == "line1\nline2");
}

TEST_CASE("crlf line endings are accepted") {
  std::istringstream in("a,b\r\n1,2\r\n");
  auto t = parse_csv(in);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][1] == "2");
}

TEST_CASE("missing file errors") {
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), std::runtime_error);
}

TEST_CASE("column lookup") {
  std::istringstream in("a,b\n");
  auto t = parse_csv(in);
  CHECK(t.column_index("b") == 1);
  CHECK(t.has_column("a"));
  CHECK_FALSE(t.has_column("z"));
  CHECK_THROWS_AS(t.column_index("z"), std::runtime_error);
}

TEST_CASE("round trip through to_csv preserves fields") {
  RawTable t;
  t.header = {"name", "note"};
  t.rows = {{"a,b", "plain"}, {"q\"q", "multi\nline"}};
  std::istringstream in(to_csv(t));
  auto back = parse_csv(in);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
}
