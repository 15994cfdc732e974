#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irtmap/csv.hpp"

namespace irtmap {

struct Interaction {
  std::int32_t student = 0;
  std::int32_t skill = 0;
  std::int8_t correct = 0;
  std::int64_t order = 0;
};

// Immutable after construction. Indices are dense: every student index in
// [0, num_students) and skill index in [0, num_skills) occurs in records.
struct InteractionTable {
  std::vector<Interaction> records;
  std::int32_t num_students = 0;
  std::int32_t num_skills = 0;
  std::vector<std::string> student_labels;
  std::vector<std::string> skill_labels;
  std::vector<std::int64_t> attempts_per_student;
  std::vector<std::int64_t> attempts_per_skill;

  std::size_t size() const { return records.size(); }
};

// Intern labels in first-appearance order and tally attempt counts.
// Throws std::invalid_argument on empty input.
InteractionTable build_table(const std::vector<ResponseRecord>& records);

// Uniform sample of n records without replacement using the documented
// SplitMix64 + partial Fisher-Yates scheme (see rng.hpp), then re-interned so
// entities absent from the sample disappear. Record order is preserved.
// Throws std::invalid_argument unless 1 <= n <= table.size().
InteractionTable subsample(const InteractionTable& table, std::size_t n, std::uint64_t seed);

// Record-level holdout split. Both halves keep the parent's interning and
// dimensions, so entities may have zero attempts in one half; coverage is only
// guaranteed by build_table/subsample outputs. fraction is the held-out share,
// in (0,1).
struct HoldoutSplit {
  InteractionTable train;
  InteractionTable eval;
};
HoldoutSplit split_holdout(const InteractionTable& table, double fraction, std::uint64_t seed);

}  // namespace irtmap
