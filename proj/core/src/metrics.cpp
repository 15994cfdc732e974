#include "irtmap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace irtmap {

double auc(const std::vector<int>& labels, const std::vector<double>& scores) {
  if (labels.size() != scores.size()) throw std::invalid_argument("auc: length mismatch");
  const std::size_t n = labels.size();
  std::size_t positives = 0;
  for (const int y : labels) positives += static_cast<std::size_t>(y != 0);
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("AUC undefined: labels contain a single class");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Rank sum of positives with midranks for tied scores.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] != 0) positive_rank_sum += midrank;
    }
    i = j;
  }
  const double u = positive_rank_sum -
                   static_cast<double>(positives) * static_cast<double>(positives + 1) / 2.0;
  return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

double log_loss(const std::vector<int>& labels, const std::vector<double>& probs) {
  if (labels.size() != probs.size()) throw std::invalid_argument("log_loss: length mismatch");
  if (labels.empty()) throw std::invalid_argument("log_loss: empty input");
  constexpr double kClamp = 1e-12;
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = std::clamp(probs[i], kClamp, 1.0 - kClamp);
    total -= labels[i] != 0 ? std::log(p) : std::log(1.0 - p);
  }
  return total / static_cast<double>(labels.size());
}

CalibrationTable calibration(const std::vector<int>& labels, const std::vector<double>& probs,
                             int num_bins) {
  if (num_bins < 1) throw std::invalid_argument("calibration: num_bins must be at least 1");
  if (labels.size() != probs.size()) throw std::invalid_argument("calibration: length mismatch");
  if (labels.size() < static_cast<std::size_t>(num_bins)) {
    throw std::invalid_argument("calibration: fewer records than bins");
  }

  const std::size_t n = labels.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] < probs[b]; });

  CalibrationTable table;
  const std::size_t base = n / static_cast<std::size_t>(num_bins);
  const std::size_t extra = n % static_cast<std::size_t>(num_bins);
  std::size_t start = 0;
  for (int b = 0; b < num_bins; ++b) {
    const std::size_t size = base + (static_cast<std::size_t>(b) < extra ? 1 : 0);
    CalibrationBin bin;
    bin.bin_index = b;
    bin.count = static_cast<std::int64_t>(size);
    double prob_sum = 0.0;
    double correct_sum = 0.0;
    for (std::size_t t = start; t < start + size; ++t) {
      prob_sum += probs[order[t]];
      correct_sum += static_cast<double>(labels[order[t]] != 0);
    }
    bin.mean_predicted = prob_sum / static_cast<double>(size);
    bin.observed_fraction = correct_sum / static_cast<double>(size);
    table.bins.push_back(bin);
    start += size;
  }
  return table;
}

}  // namespace irtmap
