#include "irtmap/synth.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "irtmap/rng.hpp"

namespace irtmap {

void SynthSpec::validate() const {
  if (num_students < 1 || num_skills < 1) {
    throw std::invalid_argument("student and skill counts must be at least 1");
  }
  if (responses_per_student < 1) {
    throw std::invalid_argument("responses_per_student must be at least 1");
  }
  if (!(theta_distribution.sd >= 0.0) || !(beta_distribution.sd >= 0.0)) {
    throw std::invalid_argument("distribution sds must be non-negative");
  }
  if (!skill_weights.empty()) {
    if (skill_weights.size() != static_cast<std::size_t>(num_skills)) {
      throw std::invalid_argument("skill_weights length must equal num_skills");
    }
    for (const double w : skill_weights) {
      if (!(w > 0.0)) throw std::invalid_argument("skill_weights must be positive");
    }
  }
}

SynthResult generate(const SynthSpec& spec) {
  spec.validate();
  const std::int64_t total_attempts =
      static_cast<std::int64_t>(spec.num_students) * spec.responses_per_student;
  if (static_cast<std::int64_t>(spec.num_skills) > total_attempts) {
    throw std::invalid_argument("impossible coverage: more skills than total attempts");
  }

  SplitMix64 rng(spec.seed);

  SynthResult out;
  out.truth.theta.reserve(static_cast<std::size_t>(spec.num_students));
  out.truth.beta.reserve(static_cast<std::size_t>(spec.num_skills));
  for (std::int32_t s = 0; s < spec.num_students; ++s) {
    out.truth.theta.push_back(spec.theta_distribution.mean +
                              spec.theta_distribution.sd * rng.next_gaussian());
  }
  for (std::int32_t k = 0; k < spec.num_skills; ++k) {
    out.truth.beta.push_back(spec.beta_distribution.mean +
                             spec.beta_distribution.sd * rng.next_gaussian());
  }

  std::vector<double> cumulative;
  if (!spec.skill_weights.empty()) {
    cumulative.reserve(spec.skill_weights.size());
    double total = 0.0;
    for (const double w : spec.skill_weights) {
      total += w;
      cumulative.push_back(total);
    }
  }
  auto draw_skill = [&]() -> std::int32_t {
    if (cumulative.empty()) {
      return static_cast<std::int32_t>(rng.next_below(static_cast<std::uint64_t>(spec.num_skills)));
    }
    const double u = rng.next_unit() * cumulative.back();
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    return static_cast<std::int32_t>(it - cumulative.begin());
  };

  // Redraw the whole assignment pass until every skill is used; correctness
  // is drawn afterwards so coverage retries do not disturb the outcome stream.
  std::vector<std::int32_t> assigned(static_cast<std::size_t>(total_attempts));
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<bool> seen(static_cast<std::size_t>(spec.num_skills), false);
    for (auto& skill : assigned) {
      skill = draw_skill();
      seen[static_cast<std::size_t>(skill)] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) == seen.end()) break;
    if (attempt == 9999) {
      throw std::runtime_error("skill coverage not reached after 10000 assignment passes");
    }
  }

  std::vector<ResponseRecord> records;
  records.reserve(static_cast<std::size_t>(total_attempts));
  std::int64_t order = 0;
  for (std::int32_t s = 0; s < spec.num_students; ++s) {
    for (std::int32_t rix = 0; rix < spec.responses_per_student; ++rix) {
      const std::int32_t k = assigned[static_cast<std::size_t>(order)];
      const double p = predict_prob(out.truth.theta[static_cast<std::size_t>(s)],
                                    out.truth.beta[static_cast<std::size_t>(k)]);
      ResponseRecord record;
      record.student = "s" + std::to_string(s);
      record.skill = "k" + std::to_string(k);
      record.correct = rng.next_unit() < p ? 1 : 0;
      record.order = order++;
      records.push_back(std::move(record));
    }
  }

  out.table = build_table(records);

  // Interning follows first appearance, so the table's skill order can differ
  // from generation order; realign the ground truth to the table's indices.
  std::vector<double> beta_aligned(out.truth.beta.size());
  for (std::size_t j = 0; j < out.table.skill_labels.size(); ++j) {
    const std::size_t orig = std::stoul(out.table.skill_labels[j].substr(1));
    beta_aligned[j] = out.truth.beta[orig];
  }
  out.truth.beta = std::move(beta_aligned);
  return out;
}

}  // namespace irtmap
