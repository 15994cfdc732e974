#pragma once

#include <cstdint>
#include <vector>

namespace irtmap {

// Mann-Whitney AUC: fraction of (positive, negative) pairs ranked correctly,
// ties counted one half. Computed via rank sums with midranks for ties.
// Throws std::invalid_argument on length mismatch or single-class labels.
double auc(const std::vector<int>& labels, const std::vector<double>& scores);

// Mean of -[y log p + (1-y) log(1-p)] with p clamped to
// [1e-12, 1 - 1e-12] before the logs.
double log_loss(const std::vector<int>& labels, const std::vector<double>& probs);

struct CalibrationBin {
  int bin_index = 0;
  std::int64_t count = 0;
  double mean_predicted = 0.0;
  double observed_fraction = 0.0;
};

struct CalibrationTable {
  std::vector<CalibrationBin> bins;
};

// Equal-count bins: records stably sorted by predicted probability, split
// into num_bins contiguous groups with sizes differing by at most one (the
// first n % num_bins groups get the extra record).
CalibrationTable calibration(const std::vector<int>& labels, const std::vector<double>& probs,
                             int num_bins = 10);

}  // namespace irtmap
