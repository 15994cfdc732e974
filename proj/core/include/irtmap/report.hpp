#pragma once

#include <string>
#include <vector>

#include "irtmap/analytics.hpp"
#include "irtmap/csv.hpp"
#include "irtmap/fit.hpp"
#include "irtmap/metrics.hpp"
#include "irtmap/table.hpp"

namespace irtmap {

// Shortest round-trip decimal form of a double (std::to_chars). Used for
// every numeric field written to disk so repeated runs are byte-identical.
std::string format_double(double value);

struct ModelMetrics {
  double auc = 0.0;
  double log_loss = 0.0;
};

// params.json: {"theta": {label: value, ...}, "beta": {...}, "sigma_squared": s}
void write_params_json(const std::string& path, const ModelParams& params,
                       const InteractionTable& table, double sigma_squared);
ModelParams read_params_json(const std::string& path, const InteractionTable& table);

void write_fit_json(const std::string& path, const FitResult& map_fit,
                    const BaselineModel* baseline);
void write_metrics_json(const std::string& path, const ModelMetrics& hierarchical,
                        const ModelMetrics* baseline, const std::string& evaluation_mode);
void write_cleaning_json(const std::string& path, const CleaningReport& report);

void write_summary_csv(const std::string& path, const CohortSummary& summary,
                       double relative_mastery);
void write_rankings_csv(const std::string& path, const SkillRanking& ranking);
void write_calibration_csv(const std::string& path, const CalibrationTable& table);
void write_histogram_csv(const std::string& path, const Histogram& histogram);
void write_scatter_csv(const std::string& path, const ScatterSeries& series,
                       const std::string& label_header);
void write_skill_comparison_csv(const std::string& path,
                                const std::vector<SkillComparison>& rows);
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);

// Canonical input format: header "student,skill,correct" in table order, so
// generated data round-trips through the parser.
void write_interactions_csv(const std::string& path, const InteractionTable& table);

}  // namespace irtmap
