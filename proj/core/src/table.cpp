#include "irtmap/table.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "irtmap/rng.hpp"

namespace irtmap {

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::uint64_t seed) {
  if (k > n) throw std::invalid_argument("sample size exceeds population");
  std::vector<std::size_t> indices(n);
  for (std::size_t i = 0; i < n; ++i) indices[i] = i;
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  std::sort(indices.begin(), indices.end());
  return indices;
}

namespace {

std::int32_t intern(std::unordered_map<std::string, std::int32_t>& map,
                    std::vector<std::string>& labels, const std::string& label) {
  const auto [it, inserted] = map.try_emplace(label, static_cast<std::int32_t>(labels.size()));
  if (inserted) labels.push_back(label);
  return it->second;
}

void tally(InteractionTable& table) {
  table.attempts_per_student.assign(static_cast<std::size_t>(table.num_students), 0);
  table.attempts_per_skill.assign(static_cast<std::size_t>(table.num_skills), 0);
  for (const auto& r : table.records) {
    ++table.attempts_per_student[static_cast<std::size_t>(r.student)];
    ++table.attempts_per_skill[static_cast<std::size_t>(r.skill)];
  }
}

}  // namespace

InteractionTable build_table(const std::vector<ResponseRecord>& records) {
  if (records.empty()) throw std::invalid_argument("empty table");

  InteractionTable table;
  std::unordered_map<std::string, std::int32_t> student_map;
  std::unordered_map<std::string, std::int32_t> skill_map;
  table.records.reserve(records.size());
  for (const auto& record : records) {
    Interaction row;
    row.student = intern(student_map, table.student_labels, record.student);
    row.skill = intern(skill_map, table.skill_labels, record.skill);
    row.correct = static_cast<std::int8_t>(record.correct);
    row.order = record.order;
    table.records.push_back(row);
  }
  table.num_students = static_cast<std::int32_t>(table.student_labels.size());
  table.num_skills = static_cast<std::int32_t>(table.skill_labels.size());
  tally(table);
  return table;
}

InteractionTable subsample(const InteractionTable& table, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("subsample size must be positive");
  if (n > table.size()) throw std::invalid_argument("subsample size exceeds record count");

  const std::vector<std::size_t> picked = sample_without_replacement(table.size(), n, seed);

  std::vector<ResponseRecord> records;
  records.reserve(n);
  for (const std::size_t idx : picked) {
    const Interaction& r = table.records[idx];
    records.push_back({table.student_labels[static_cast<std::size_t>(r.student)],
                       table.skill_labels[static_cast<std::size_t>(r.skill)], r.correct, r.order});
  }
  return build_table(records);
}

HoldoutSplit split_holdout(const InteractionTable& table, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("holdout fraction must be in (0,1)");
  }
  auto n_eval = static_cast<std::size_t>(fraction * static_cast<double>(table.size()));
  if (n_eval == 0) n_eval = 1;
  if (n_eval >= table.size()) n_eval = table.size() - 1;

  const std::vector<std::size_t> eval_idx = sample_without_replacement(table.size(), n_eval, seed);

  HoldoutSplit split;
  for (auto* half : {&split.train, &split.eval}) {
    half->num_students = table.num_students;
    half->num_skills = table.num_skills;
    half->student_labels = table.student_labels;
    half->skill_labels = table.skill_labels;
  }
  std::size_t next_eval = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (next_eval < eval_idx.size() && eval_idx[next_eval] == i) {
      split.eval.records.push_back(table.records[i]);
      ++next_eval;
    } else {
      split.train.records.push_back(table.records[i]);
    }
  }
  tally(split.train);
  tally(split.eval);
  return split;
}

}  // namespace irtmap
