#include "irtmap/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irtmap {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string>& header,
                           bool has_header, const char* what) {
  if (std::holds_alternative<std::size_t>(ref)) return std::get<std::size_t>(ref);
  if (!has_header) {
    throw std::invalid_argument(std::string("column '") + std::get<std::string>(ref) +
                                "' addressed by name but no header row was read");
  }
  const std::string& name = std::get<std::string>(ref);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::invalid_argument(std::string("required ") + what + " column '" + name +
                              "' not found in header");
}

bool same_column(const ColumnRef& a, const ColumnRef& b) { return a == b; }

}  // namespace

void ColumnSchema::validate() const {
  if (same_column(student_column, skill_column) || same_column(student_column, correct_column) ||
      same_column(skill_column, correct_column)) {
    throw std::invalid_argument("student, skill and correct columns must be distinct");
  }
  if (delimiter == '\n' || delimiter == '\r') {
    throw std::invalid_argument("delimiter must not be a line terminator");
  }
  if (multi_skill_separator && multi_skill_separator->empty()) {
    throw std::invalid_argument("multi_skill_separator must be non-empty when set");
  }
}

std::vector<ResponseRecord> parse_records(std::istream& source, const ColumnSchema& schema,
                                          CleaningReport& report) {
  schema.validate();

  const bool needs_header = std::holds_alternative<std::string>(schema.student_column) ||
                            std::holds_alternative<std::string>(schema.skill_column) ||
                            std::holds_alternative<std::string>(schema.correct_column) ||
                            (schema.order_column &&
                             std::holds_alternative<std::string>(*schema.order_column));

  std::string line;
  std::vector<std::string> header;
  if (needs_header) {
    if (!std::getline(source, line)) {
      throw std::invalid_argument("input is empty but named columns require a header row");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    header = split_line(line, schema.delimiter);
  }

  const std::size_t student_col =
      resolve_column(schema.student_column, header, needs_header, "student");
  const std::size_t skill_col = resolve_column(schema.skill_column, header, needs_header, "skill");
  const std::size_t correct_col =
      resolve_column(schema.correct_column, header, needs_header, "correct");
  std::size_t min_width = std::max({student_col, skill_col, correct_col}) + 1;
  std::size_t order_col = 0;
  if (schema.order_column) {
    order_col = resolve_column(*schema.order_column, header, needs_header, "order");
    min_width = std::max(min_width, order_col + 1);
  }

  std::vector<ResponseRecord> records;
  std::int64_t row_index = 0;
  while (std::getline(source, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++report.rows_read;
    const std::int64_t this_row = row_index++;

    std::vector<std::string> fields = split_line(line, schema.delimiter);
    if (fields.size() < min_width) {
      ++report.rows_dropped_bad_width;
      continue;
    }

    ResponseRecord record;
    record.student = fields[student_col];
    record.order = this_row;
    if (schema.order_column) {
      try {
        record.order = std::stoll(fields[order_col]);
      } catch (const std::exception&) {
        ++report.rows_dropped_missing_field;
        continue;
      }
    }

    const auto vocab_it = schema.correctness_vocabulary.find(fields[correct_col]);
    record.correct = vocab_it == schema.correctness_vocabulary.end() ? -1 : vocab_it->second;

    const std::string& skill_cell = fields[skill_col];
    if (schema.multi_skill_separator &&
        skill_cell.find(*schema.multi_skill_separator) != std::string::npos) {
      if (!schema.expand_multi_skill) {
        ++report.rows_dropped_multi_skill;
        continue;
      }
      const std::string& sep = *schema.multi_skill_separator;
      std::size_t start = 0;
      std::int64_t produced = 0;
      while (start <= skill_cell.size()) {
        const std::size_t pos = skill_cell.find(sep, start);
        const std::size_t end = pos == std::string::npos ? skill_cell.size() : pos;
        record.skill = skill_cell.substr(start, end - start);
        records.push_back(record);
        ++produced;
        if (pos == std::string::npos) break;
        start = pos + sep.size();
      }
      report.rows_expanded_multi_skill += produced - 1;
    } else {
      record.skill = skill_cell;
      records.push_back(record);
    }
  }
  return records;
}

std::vector<ResponseRecord> clean(std::vector<ResponseRecord> records, CleaningReport& report) {
  std::vector<ResponseRecord> kept;
  kept.reserve(records.size());
  for (auto& record : records) {
    if (record.student.empty() || record.skill.empty()) {
      ++report.rows_dropped_missing_field;
      continue;
    }
    if (record.correct != 0 && record.correct != 1) {
      ++report.rows_dropped_bad_correctness;
      continue;
    }
    kept.push_back(std::move(record));
  }
  report.rows_kept += static_cast<std::int64_t>(kept.size());
  return kept;
}

std::vector<ResponseRecord> load_csv(const std::string& path, const ColumnSchema& schema,
                                     CleaningReport& report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return clean(parse_records(in, schema, report), report);
}

}  // namespace irtmap
