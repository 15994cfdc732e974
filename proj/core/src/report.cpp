#include "irtmap/report.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace irtmap {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

void dump(const std::string& path, const ordered_json& doc) {
  std::ofstream out = open_out(path);
  out << doc.dump(2) << '\n';
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_params_json(const std::string& path, const ModelParams& params,
                       const InteractionTable& table, double sigma_squared) {
  ordered_json doc;
  ordered_json theta = ordered_json::object();
  for (std::size_t s = 0; s < params.theta.size(); ++s) {
    theta[table.student_labels[s]] = params.theta[s];
  }
  ordered_json beta = ordered_json::object();
  for (std::size_t k = 0; k < params.beta.size(); ++k) {
    beta[table.skill_labels[k]] = params.beta[k];
  }
  doc["sigma_squared"] = sigma_squared;
  doc["theta"] = std::move(theta);
  doc["beta"] = std::move(beta);
  dump(path, doc);
}

ModelParams read_params_json(const std::string& path, const InteractionTable& table) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open params file: " + path);
  json doc = json::parse(in);

  ModelParams params = ModelParams::zeros(table.num_students, table.num_skills);
  for (std::size_t s = 0; s < table.student_labels.size(); ++s) {
    const auto it = doc.at("theta").find(table.student_labels[s]);
    if (it == doc.at("theta").end()) {
      throw std::runtime_error("params file missing student: " + table.student_labels[s]);
    }
    params.theta[s] = it->get<double>();
  }
  for (std::size_t k = 0; k < table.skill_labels.size(); ++k) {
    const auto it = doc.at("beta").find(table.skill_labels[k]);
    if (it == doc.at("beta").end()) {
      throw std::runtime_error("params file missing skill: " + table.skill_labels[k]);
    }
    params.beta[k] = it->get<double>();
  }
  return params;
}

void write_fit_json(const std::string& path, const FitResult& map_fit,
                    const BaselineModel* baseline) {
  ordered_json doc;
  doc["hierarchical"] = {{"converged", map_fit.converged},
                         {"iterations", map_fit.iterations},
                         {"final_objective", map_fit.final_objective},
                         {"final_gradient_norm", map_fit.final_gradient_norm},
                         {"termination_reason", termination_name(map_fit.termination_reason)}};
  if (baseline != nullptr) {
    doc["baseline"] = {{"converged", baseline->converged},
                       {"iterations", baseline->iterations},
                       {"final_objective", baseline->final_objective},
                       {"ridge_epsilon", baseline->ridge_epsilon},
                       {"termination_reason", termination_name(baseline->termination_reason)}};
  }
  dump(path, doc);
}

void write_metrics_json(const std::string& path, const ModelMetrics& hierarchical,
                        const ModelMetrics* baseline, const std::string& evaluation_mode) {
  ordered_json doc;
  doc["evaluation_mode"] = evaluation_mode;
  doc["hierarchical"] = {{"auc", hierarchical.auc}, {"log_loss", hierarchical.log_loss}};
  if (baseline != nullptr) {
    doc["baseline"] = {{"auc", baseline->auc}, {"log_loss", baseline->log_loss}};
  }
  dump(path, doc);
}

void write_cleaning_json(const std::string& path, const CleaningReport& report) {
  ordered_json doc;
  doc["rows_read"] = report.rows_read;
  doc["rows_dropped_missing_field"] = report.rows_dropped_missing_field;
  doc["rows_dropped_bad_correctness"] = report.rows_dropped_bad_correctness;
  doc["rows_dropped_bad_width"] = report.rows_dropped_bad_width;
  doc["rows_dropped_multi_skill"] = report.rows_dropped_multi_skill;
  doc["rows_expanded_multi_skill"] = report.rows_expanded_multi_skill;
  doc["rows_kept"] = report.rows_kept;
  dump(path, doc);
}

void write_summary_csv(const std::string& path, const CohortSummary& summary,
                       double relative_mastery) {
  std::ofstream out = open_out(path);
  out << "parameter,count,mean,std_dev,p25,median,p75\n";
  const auto row = [&](const char* name, const VectorSummary& s) {
    out << name << ',' << s.count << ',' << format_double(s.mean) << ','
        << format_double(s.std_dev) << ',' << format_double(s.p25) << ','
        << format_double(s.median) << ',' << format_double(s.p75) << '\n';
  };
  row("ability", summary.ability);
  row("difficulty", summary.difficulty);
  out << "relative_mastery," << format_double(relative_mastery) << ",,,,,\n";
}

void write_rankings_csv(const std::string& path, const SkillRanking& ranking) {
  std::ofstream out = open_out(path);
  out << "group,rank,skill,difficulty\n";
  for (std::size_t i = 0; i < ranking.easiest.size(); ++i) {
    out << "easiest," << i + 1 << ',' << ranking.easiest[i].first << ','
        << format_double(ranking.easiest[i].second) << '\n';
  }
  for (std::size_t i = 0; i < ranking.hardest.size(); ++i) {
    out << "hardest," << i + 1 << ',' << ranking.hardest[i].first << ','
        << format_double(ranking.hardest[i].second) << '\n';
  }
}

void write_calibration_csv(const std::string& path, const CalibrationTable& table) {
  std::ofstream out = open_out(path);
  out << "bin_index,count,mean_predicted,observed_fraction\n";
  for (const auto& bin : table.bins) {
    out << bin.bin_index << ',' << bin.count << ',' << format_double(bin.mean_predicted) << ','
        << format_double(bin.observed_fraction) << '\n';
  }
}

void write_histogram_csv(const std::string& path, const Histogram& histogram) {
  std::ofstream out = open_out(path);
  out << "bin_index,left_edge,right_edge,proportion\n";
  for (std::size_t b = 0; b < histogram.proportions.size(); ++b) {
    out << b << ',' << format_double(histogram.edges[b]) << ','
        << format_double(histogram.edges[b + 1]) << ',' << format_double(histogram.proportions[b])
        << '\n';
  }
}

void write_scatter_csv(const std::string& path, const ScatterSeries& series,
                       const std::string& label_header) {
  std::ofstream out = open_out(path);
  out << label_header << ",log10_attempts,estimate\n";
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    out << series.labels[i] << ',' << format_double(series.x[i]) << ','
        << format_double(series.y[i]) << '\n';
  }
  out << "# ols_slope=" << format_double(series.slope)
      << " ols_intercept=" << format_double(series.intercept) << '\n';
}

void write_skill_comparison_csv(const std::string& path,
                                const std::vector<SkillComparison>& rows) {
  std::ofstream out = open_out(path);
  out << "skill,observed_fraction,mean_predicted\n";
  for (const auto& row : rows) {
    out << row.label << ',' << format_double(row.observed_fraction) << ','
        << format_double(row.mean_predicted) << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& trajectory) {
  std::ofstream out = open_out(path);
  out << "student,attempt_index,skill,predicted,observed\n";
  for (const auto& point : trajectory.points) {
    out << trajectory.student << ',' << point.attempt_index << ',' << point.skill << ','
        << format_double(point.predicted) << ',' << point.observed << '\n';
  }
}

void write_interactions_csv(const std::string& path, const InteractionTable& table) {
  std::ofstream out = open_out(path);
  out << "student,skill,correct\n";
  for (const auto& r : table.records) {
    out << table.student_labels[static_cast<std::size_t>(r.student)] << ','
        << table.skill_labels[static_cast<std::size_t>(r.skill)] << ','
        << static_cast<int>(r.correct) << '\n';
  }
}

}  // namespace irtmap
