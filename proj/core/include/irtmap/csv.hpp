#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace irtmap {

// A column is addressed either by header name or by zero-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

struct ColumnSchema {
  ColumnRef student_column = std::string("student");
  ColumnRef skill_column = std::string("skill");
  ColumnRef correct_column = std::string("correct");
  std::optional<ColumnRef> order_column;  // defaults to file row order
  char delimiter = ',';
  // When set, a skill cell containing this separator is either expanded to
  // one record per listed skill (expand_multi_skill = true) or dropped as
  // ambiguous and counted (the default). When unset, skill cells are opaque
  // labels.
  std::optional<std::string> multi_skill_separator;
  bool expand_multi_skill = false;
  // Cell text -> 0/1. Cells outside the map are ambiguous and dropped.
  std::map<std::string, int> correctness_vocabulary = {{"0", 0}, {"1", 1}};

  void validate() const;  // throws std::invalid_argument on bad schema
};

struct ResponseRecord {
  std::string student;
  std::string skill;
  int correct = 0;  // 0 or 1 after cleaning
  std::int64_t order = 0;
};

struct CleaningReport {
  std::int64_t rows_read = 0;
  std::int64_t rows_dropped_missing_field = 0;
  std::int64_t rows_dropped_bad_correctness = 0;
  std::int64_t rows_dropped_bad_width = 0;
  std::int64_t rows_dropped_multi_skill = 0;
  std::int64_t rows_expanded_multi_skill = 0;  // extra records added by expansion
  std::int64_t rows_kept = 0;

  // rows_kept + drops = rows_read + rows_expanded_multi_skill
  bool balanced() const {
    return rows_kept + rows_dropped_missing_field + rows_dropped_bad_correctness +
               rows_dropped_bad_width + rows_dropped_multi_skill ==
           rows_read + rows_expanded_multi_skill;
  }
};

// Parse delimiter-separated text into raw records. A header row is required
// when any column is addressed by name. Rows with the wrong field count are
// counted in the report and skipped; a missing named column throws.
//
// Correctness strings are looked up in the schema vocabulary here so that
// downstream cleaning sees integer candidates; cells that fail the lookup get
// correct = -1 and are dropped by clean().
std::vector<ResponseRecord> parse_records(std::istream& source, const ColumnSchema& schema,
                                          CleaningReport& report);

// Drop records with empty labels or correct outside {0,1}, preserving order.
std::vector<ResponseRecord> clean(std::vector<ResponseRecord> records, CleaningReport& report);

// Convenience: parse + clean a file on disk. Throws std::runtime_error if the
// file cannot be opened.
std::vector<ResponseRecord> load_csv(const std::string& path, const ColumnSchema& schema,
                                     CleaningReport& report);

}  // namespace irtmap
