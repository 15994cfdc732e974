#include <sstream>

#include "doctest.h"
#include "irtmap/csv.hpp"
#include "irtmap/rng.hpp"

using namespace irtmap;

namespace {

std::vector<ResponseRecord> parse_text(const std::string& text, const ColumnSchema& schema,
                                       CleaningReport& report) {
  std::istringstream in(text);
  return parse_records(in, schema, report);
}

}  // namespace

TEST_CASE("header row maps named columns") {
  CleaningReport report;
  const auto records = parse_text("student,skill,correct\ns1,k1,1\n", {}, report);
  REQUIRE(records.size() == 1);
  CHECK(records[0].student == "s1");
  CHECK(records[0].skill == "k1");
  CHECK(records[0].correct == 1);
  CHECK(records[0].order == 0);
}

TEST_CASE("correctness outside the vocabulary is dropped by clean") {
  CleaningReport report;
  auto records = parse_text("student,skill,correct\ns1,k1,yes\ns2,k1,0\n", {}, report);
  records = clean(std::move(records), report);
  REQUIRE(records.size() == 1);
  CHECK(records[0].student == "s2");
  CHECK(report.rows_dropped_bad_correctness == 1);
  CHECK(report.rows_kept == 1);
  CHECK(report.balanced());
}

TEST_CASE("custom truthy/falsy vocabulary") {
  ColumnSchema schema;
  schema.correctness_vocabulary = {{"correct", 1}, {"incorrect", 0}};
  CleaningReport report;
  auto records = parse_text("student,skill,correct\ns1,k1,correct\ns1,k2,incorrect\n", schema,
                            report);
  records = clean(std::move(records), report);
  REQUIRE(records.size() == 2);
  CHECK(records[0].correct == 1);
  CHECK(records[1].correct == 0);
}

TEST_CASE("multi-skill cells") {
  ColumnSchema schema;
  schema.multi_skill_separator = "~";

  SUBCASE("dropped when expansion is off") {
    CleaningReport report;
    auto records = parse_text("student,skill,correct\ns1,k1~k2,1\ns1,k3,1\n", schema, report);
    records = clean(std::move(records), report);
    REQUIRE(records.size() == 1);
    CHECK(records[0].skill == "k3");
    CHECK(report.rows_dropped_multi_skill == 1);
    CHECK(report.balanced());
  }

  SUBCASE("expanded to one record per skill when enabled") {
    schema.expand_multi_skill = true;
    CleaningReport report;
    auto records = parse_text("student,skill,correct\ns1,\"k1~k2\",1\n", schema, report);
    records = clean(std::move(records), report);
    REQUIRE(records.size() == 2);
    CHECK(records[0].skill == "k1");
    CHECK(records[1].skill == "k2");
    CHECK(records[0].correct == 1);
    CHECK(records[1].correct == 1);
    CHECK(report.rows_expanded_multi_skill == 1);
    CHECK(report.balanced());
  }
}

TEST_CASE("short rows are counted and parsing continues") {
  CleaningReport report;
  auto records = parse_text("student,skill,correct\ns1,k1\ns2,k2,1\n", {}, report);
  records = clean(std::move(records), report);
  REQUIRE(records.size() == 1);
  CHECK(records[0].student == "s2");
  CHECK(report.rows_dropped_bad_width == 1);
  CHECK(report.balanced());
}

TEST_CASE("missing required column is fatal") {
  CleaningReport report;
  std::istringstream in("student,item,correct\ns1,k1,1\n");
  CHECK_THROWS_AS(parse_records(in, {}, report), std::invalid_argument);
}

TEST_CASE("columns can be addressed by index without a header") {
  ColumnSchema schema;
  schema.student_column = std::size_t{0};
  schema.skill_column = std::size_t{1};
  schema.correct_column = std::size_t{2};
  schema.delimiter = '\t';
  CleaningReport report;
  const auto records = parse_text("s1\tk1\t0\n", schema, report);
  REQUIRE(records.size() == 1);
  CHECK(records[0].correct == 0);
}

TEST_CASE("schema rejects duplicate columns and bad delimiters") {
  ColumnSchema schema;
  schema.skill_column = schema.student_column;
  CHECK_THROWS_AS(schema.validate(), std::invalid_argument);

  ColumnSchema newline;
  newline.delimiter = '\n';
  CHECK_THROWS_AS(newline.validate(), std::invalid_argument);
}

TEST_CASE("clean drops empty labels and keeps order") {
  CleaningReport report;
  std::vector<ResponseRecord> input = {{"s1", "k1", 1, 0}, {"", "k1", 1, 1}, {"s2", "k2", 0, 2}};
  const auto kept = clean(std::move(input), report);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].order == 0);
  CHECK(kept[1].order == 2);
  CHECK(report.rows_dropped_missing_field == 1);
}

TEST_CASE("empty input yields empty output and zero counts") {
  CleaningReport report;
  ColumnSchema schema;
  schema.student_column = std::size_t{0};
  schema.skill_column = std::size_t{1};
  schema.correct_column = std::size_t{2};
  auto records = parse_text("", schema, report);
  records = clean(std::move(records), report);
  CHECK(records.empty());
  CHECK(report.rows_read == 0);
  CHECK(report.balanced());
}

TEST_CASE("bookkeeping identity holds on fuzzed inputs") {
  SplitMix64 rng(99);
  const char* cells[] = {"s1", "s2", "", "k1", "k1~k2", "0", "1", "yes", "x"};
  for (int trial = 0; trial < 50; ++trial) {
    std::string text = "student,skill,correct\n";
    const int rows = static_cast<int>(rng.next_below(30));
    for (int r = 0; r < rows; ++r) {
      const int width = 2 + static_cast<int>(rng.next_below(3));  // 2..4 fields
      for (int c = 0; c < width; ++c) {
        if (c > 0) text += ',';
        text += cells[rng.next_below(9)];
      }
      text += '\n';
    }
    ColumnSchema schema;
    schema.multi_skill_separator = "~";
    schema.expand_multi_skill = trial % 2 == 0;
    CleaningReport report;
    const auto records = clean(parse_text(text, schema, report), report);
    CHECK(report.balanced());
    CHECK(report.rows_kept == static_cast<std::int64_t>(records.size()));
  }
}
