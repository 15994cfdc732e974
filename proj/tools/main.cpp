// irtmap command line: fits the hierarchical ability/difficulty model to
// response logs and emits metrics and plot-ready report files.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irtmap/analytics.hpp"
#include "irtmap/csv.hpp"
#include "irtmap/fit.hpp"
#include "irtmap/metrics.hpp"
#include "irtmap/report.hpp"
#include "irtmap/rng.hpp"
#include "irtmap/synth.hpp"
#include "irtmap/table.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNoConvergence = 2;

struct SchemaFlags {
  std::string student = "student";
  std::string skill = "skill";
  std::string correct = "correct";
  std::string order;
  std::string delimiter = ",";
  std::string multi_skill_separator;
  bool expand_multi_skill = false;
  std::vector<std::string> truthy;
  std::vector<std::string> falsy;

  void attach(CLI::App* cmd) {
    cmd->add_option("--student-col", student, "Student column (name or 0-based index)");
    cmd->add_option("--skill-col", skill, "Skill column (name or 0-based index)");
    cmd->add_option("--correct-col", correct, "Correctness column (name or 0-based index)");
    cmd->add_option("--order-col", order, "Optional original-order column");
    cmd->add_option("--delimiter", delimiter, "Field delimiter (single character, default ',')");
    cmd->add_option("--multi-skill-sep", multi_skill_separator,
                    "Separator marking multi-skill cells");
    cmd->add_flag("--expand-multi-skill", expand_multi_skill,
                  "Expand multi-skill cells to one record per skill instead of dropping them");
    cmd->add_option("--truthy", truthy, "Cell values meaning correct (replaces the 0/1 default)");
    cmd->add_option("--falsy", falsy, "Cell values meaning incorrect");
  }

  irtmap::ColumnSchema build() const {
    irtmap::ColumnSchema schema;
    auto as_ref = [](const std::string& text) -> irtmap::ColumnRef {
      if (!text.empty() && std::all_of(text.begin(), text.end(),
                                       [](unsigned char c) { return std::isdigit(c); })) {
        return static_cast<std::size_t>(std::stoul(text));
      }
      return text;
    };
    schema.student_column = as_ref(student);
    schema.skill_column = as_ref(skill);
    schema.correct_column = as_ref(correct);
    if (!order.empty()) schema.order_column = as_ref(order);
    if (delimiter.size() != 1) throw CLI::ValidationError("--delimiter must be one character");
    schema.delimiter = delimiter[0];
    if (!multi_skill_separator.empty()) schema.multi_skill_separator = multi_skill_separator;
    schema.expand_multi_skill = expand_multi_skill;
    if (!truthy.empty() || !falsy.empty()) {
      schema.correctness_vocabulary.clear();
      for (const auto& v : truthy) schema.correctness_vocabulary[v] = 1;
      for (const auto& v : falsy) schema.correctness_vocabulary[v] = 0;
    }
    return schema;
  }
};

struct FitFlags {
  irtmap::FitConfig config;
  double sigma_squared = 100.0;
  double ridge_epsilon = 1e-6;

  void attach(CLI::App* cmd) {
    cmd->add_option("--sigma-squared", sigma_squared, "Prior variance for theta and beta");
    cmd->add_option("--max-iterations", config.max_iterations, "Optimizer iteration cap");
    cmd->add_option("--gradient-tol", config.gradient_tolerance,
                    "Gradient infinity-norm stopping tolerance");
    cmd->add_option("--objective-tol", config.objective_relative_tolerance,
                    "Relative objective decrease stopping tolerance");
    cmd->add_option("--history-size", config.history_size, "Quasi-Newton memory length");
    cmd->add_option("--initial-value", config.initial_value, "Starting value for all parameters");
    cmd->add_option("--ridge-epsilon", ridge_epsilon, "Baseline ridge strength");
  }
};

std::filesystem::path prepare_output_dir(const std::string& dir) {
  std::filesystem::path path(dir);
  std::filesystem::create_directories(path);
  return path;
}

irtmap::ModelMetrics score_map(const irtmap::ModelParams& params,
                               const irtmap::InteractionTable& table) {
  std::vector<int> labels;
  std::vector<double> probs;
  labels.reserve(table.size());
  probs.reserve(table.size());
  for (const auto& r : table.records) {
    labels.push_back(r.correct);
    probs.push_back(irtmap::predict_prob(params.theta[static_cast<std::size_t>(r.student)],
                                         params.beta[static_cast<std::size_t>(r.skill)]));
  }
  return {irtmap::auc(labels, probs), irtmap::log_loss(labels, probs)};
}

irtmap::ModelMetrics score_baseline(const irtmap::BaselineModel& model,
                                    const irtmap::InteractionTable& table) {
  std::vector<int> labels;
  std::vector<double> probs;
  labels.reserve(table.size());
  probs.reserve(table.size());
  for (const auto& r : table.records) {
    labels.push_back(r.correct);
    probs.push_back(model.predict(r.student, r.skill));
  }
  return {irtmap::auc(labels, probs), irtmap::log_loss(labels, probs)};
}

void write_analytics(const std::filesystem::path& out_dir, const irtmap::ModelParams& params,
                     const irtmap::InteractionTable& table) {
  const irtmap::CohortSummary summary = irtmap::cohort_summary(params);
  irtmap::write_summary_csv((out_dir / "summary.csv").string(), summary,
                            irtmap::relative_mastery(summary));

  const int k = std::min<int>(5, table.num_skills);
  const irtmap::SkillRanking ranking = irtmap::rank_skills(params, table.skill_labels, k);
  irtmap::write_rankings_csv((out_dir / "rankings.csv").string(), ranking);

  irtmap::write_histogram_csv((out_dir / "fig1_hist.csv").string(),
                              irtmap::ability_histogram(params));
  irtmap::write_scatter_csv((out_dir / "fig2_scatter.csv").string(),
                            irtmap::difficulty_vs_practice(params, table), "skill");
  irtmap::write_scatter_csv((out_dir / "fig3_scatter.csv").string(),
                            irtmap::ability_vs_attempts(params, table), "student");

  std::vector<std::string> extremes;
  for (const auto& [label, value] : ranking.easiest) extremes.push_back(label);
  for (const auto& [label, value] : ranking.hardest) extremes.push_back(label);
  irtmap::write_skill_comparison_csv(
      (out_dir / "fig5_extremes.csv").string(),
      irtmap::skill_observed_vs_predicted(params, table, extremes));

  irtmap::write_trajectory_csv(
      (out_dir / "fig6_trajectory.csv").string(),
      irtmap::student_trajectory(params, table, irtmap::StudentSelector::lowest));
}

struct PipelineFlags {
  std::string input;
  std::string output_dir = ".";
  std::uint64_t seed = 42;
  std::int64_t subsample_size = 0;  // 0 = use all records
  double holdout_fraction = 0.0;    // 0 = in-sample evaluation
  bool sensitivity = false;
  std::vector<std::int64_t> sensitivity_sizes = {20000, 40000};
  std::vector<std::uint64_t> sensitivity_seeds = {42, 2025};
};

int run_fit(const PipelineFlags& flags, const SchemaFlags& schema_flags, const FitFlags& fit_flags) {
  const irtmap::ColumnSchema schema = schema_flags.build();
  irtmap::CleaningReport cleaning;
  const std::vector<irtmap::ResponseRecord> records =
      irtmap::load_csv(flags.input, schema, cleaning);
  const irtmap::InteractionTable parent = irtmap::build_table(records);

  const std::filesystem::path out_dir = prepare_output_dir(flags.output_dir);
  irtmap::write_cleaning_json((out_dir / "cleaning.json").string(), cleaning);

  const irtmap::PriorConfig prior{fit_flags.sigma_squared};

  if (flags.sensitivity) {
    // Grid of subsample sizes x seeds, plus the one-hot baseline on the full
    // table, written as one combined comparison file.
    std::ofstream grid((out_dir / "sensitivity.csv").string(), std::ios::binary);
    grid << "model,subsample,seed,auc,log_loss,converged\n";

    const irtmap::BaselineModel baseline =
        irtmap::fit_baseline(parent, fit_flags.config, fit_flags.ridge_epsilon);
    const irtmap::ModelMetrics base_metrics = score_baseline(baseline, parent);
    grid << "baseline,all,-," << irtmap::format_double(base_metrics.auc) << ','
         << irtmap::format_double(base_metrics.log_loss) << ',' << baseline.converged << '\n';

    bool all_converged = baseline.converged;
    for (const std::int64_t size : flags.sensitivity_sizes) {
      for (const std::uint64_t seed : flags.sensitivity_seeds) {
        if (size <= 0 || static_cast<std::size_t>(size) > parent.size()) {
          throw std::invalid_argument("sensitivity subsample size out of range: " +
                                      std::to_string(size));
        }
        const irtmap::InteractionTable sub =
            irtmap::subsample(parent, static_cast<std::size_t>(size), seed);
        const irtmap::FitResult fit = irtmap::fit_map(sub, prior, fit_flags.config);
        all_converged = all_converged && fit.converged;
        const irtmap::ModelMetrics metrics = score_map(fit.params, sub);
        grid << "hierarchical," << size << ',' << seed << ','
             << irtmap::format_double(metrics.auc) << ','
             << irtmap::format_double(metrics.log_loss) << ',' << fit.converged << '\n';
      }
    }
    return all_converged ? kExitOk : kExitNoConvergence;
  }

  irtmap::InteractionTable table = parent;
  if (flags.subsample_size > 0) {
    table = irtmap::subsample(parent, static_cast<std::size_t>(flags.subsample_size), flags.seed);
  }

  const bool holdout = flags.holdout_fraction > 0.0;
  irtmap::HoldoutSplit split;
  if (holdout) split = irtmap::split_holdout(table, flags.holdout_fraction, flags.seed);
  const irtmap::InteractionTable& train = holdout ? split.train : table;
  const irtmap::InteractionTable& eval = holdout ? split.eval : table;

  const irtmap::FitResult fit = irtmap::fit_map(train, prior, fit_flags.config);
  const irtmap::BaselineModel baseline =
      irtmap::fit_baseline(train, fit_flags.config, fit_flags.ridge_epsilon);

  irtmap::write_params_json((out_dir / "params.json").string(), fit.params, train,
                            prior.sigma_squared);
  irtmap::write_fit_json((out_dir / "fit.json").string(), fit, &baseline);

  const irtmap::ModelMetrics map_metrics = score_map(fit.params, eval);
  const irtmap::ModelMetrics base_metrics = score_baseline(baseline, eval);
  irtmap::write_metrics_json((out_dir / "metrics.json").string(), map_metrics, &base_metrics,
                             holdout ? "holdout" : "in_sample");

  std::vector<int> labels;
  std::vector<double> probs;
  for (const auto& r : eval.records) {
    labels.push_back(r.correct);
    probs.push_back(irtmap::predict_prob(fit.params.theta[static_cast<std::size_t>(r.student)],
                                         fit.params.beta[static_cast<std::size_t>(r.skill)]));
  }
  irtmap::write_calibration_csv((out_dir / "calibration.csv").string(),
                                irtmap::calibration(labels, probs));

  write_analytics(out_dir, fit.params, train);

  if (!fit.converged || !baseline.converged) {
    std::cerr << "fit did not converge (hierarchical: "
              << irtmap::termination_name(fit.termination_reason)
              << ", baseline: " << irtmap::termination_name(baseline.termination_reason) << ")\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical ability/difficulty model for student response logs"};
  app.require_subcommand(1);
  // Keys for a subcommand's flags live in a [section] named after it, e.g.
  //   [fit]
  //   input = "data.csv"
  // invoked as: irtmap --config run.toml fit
  app.set_config("--config", "", "Read options from a TOML/INI file");

  SchemaFlags schema_flags;
  FitFlags fit_flags;
  PipelineFlags pipeline;

  CLI::App* fit_cmd =
      app.add_subcommand("fit", "Fit both models and write metrics and report files");
  fit_cmd->add_option("--input", pipeline.input, "Response log file")->required();
  fit_cmd->add_option("--output-dir", pipeline.output_dir, "Directory for report files");
  fit_cmd->add_option("--subsample", pipeline.subsample_size,
                      "Fit on a seeded subsample of this many records");
  fit_cmd->add_option("--seed", pipeline.seed, "Seed for subsampling and holdout splits");
  fit_cmd->add_option("--holdout", pipeline.holdout_fraction,
                      "Held-out record fraction in (0,1); default is in-sample evaluation");
  fit_cmd->add_flag("--sensitivity", pipeline.sensitivity,
                    "Run the subsample-size x seed grid and write sensitivity.csv");
  fit_cmd->add_option("--sensitivity-sizes", pipeline.sensitivity_sizes,
                      "Subsample sizes for --sensitivity");
  fit_cmd->add_option("--sensitivity-seeds", pipeline.sensitivity_seeds,
                      "Seeds for --sensitivity");
  schema_flags.attach(fit_cmd);
  fit_flags.attach(fit_cmd);

  std::string params_path;
  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Score saved parameters against a response log");
  eval_cmd->add_option("--input", pipeline.input, "Response log file")->required();
  eval_cmd->add_option("--params", params_path, "params.json from a previous fit")->required();
  eval_cmd->add_option("--output-dir", pipeline.output_dir, "Directory for report files");
  schema_flags.attach(eval_cmd);

  CLI::App* report_cmd =
      app.add_subcommand("report", "Write analytics files for saved parameters");
  report_cmd->add_option("--input", pipeline.input, "Response log file")->required();
  report_cmd->add_option("--params", params_path, "params.json from a previous fit")->required();
  report_cmd->add_option("--output-dir", pipeline.output_dir, "Directory for report files");
  schema_flags.attach(report_cmd);

  irtmap::SynthSpec synth_spec;
  std::string synth_output = "synthetic.csv";
  std::string synth_truth;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic response log");
  sim_cmd->add_option("--students", synth_spec.num_students, "Number of students");
  sim_cmd->add_option("--skills", synth_spec.num_skills, "Number of skills");
  sim_cmd->add_option("--per-student", synth_spec.responses_per_student, "Responses per student");
  sim_cmd->add_option("--seed", synth_spec.seed, "Generator seed");
  sim_cmd->add_option("--theta-mean", synth_spec.theta_distribution.mean, "Ability mean");
  sim_cmd->add_option("--theta-sd", synth_spec.theta_distribution.sd, "Ability sd");
  sim_cmd->add_option("--beta-mean", synth_spec.beta_distribution.mean, "Difficulty mean");
  sim_cmd->add_option("--beta-sd", synth_spec.beta_distribution.sd, "Difficulty sd");
  sim_cmd->add_option("--output", synth_output, "Where to write the generated log");
  sim_cmd->add_option("--truth-params", synth_truth,
                      "Optional path for the generating parameters (params.json format)");

  double check_step = 1e-5;
  std::uint64_t check_seed = 0;
  CLI::App* check_cmd = app.add_subcommand(
      "check-gradient", "Compare the analytic gradient to finite differences on a data file");
  check_cmd->add_option("--input", pipeline.input, "Response log file")->required();
  check_cmd->add_option("--step", check_step, "Central difference step");
  check_cmd->add_option("--seed", check_seed, "Seed for the random trial point");
  check_cmd->add_option("--sigma-squared", fit_flags.sigma_squared, "Prior variance");
  schema_flags.attach(check_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit_cmd->parsed()) return run_fit(pipeline, schema_flags, fit_flags);

    if (eval_cmd->parsed() || report_cmd->parsed()) {
      irtmap::CleaningReport cleaning;
      const auto records = irtmap::load_csv(pipeline.input, schema_flags.build(), cleaning);
      const irtmap::InteractionTable table = irtmap::build_table(records);
      const irtmap::ModelParams params = irtmap::read_params_json(params_path, table);
      const std::filesystem::path out_dir = prepare_output_dir(pipeline.output_dir);

      if (eval_cmd->parsed()) {
        const irtmap::ModelMetrics metrics = score_map(params, table);
        irtmap::write_metrics_json((out_dir / "metrics.json").string(), metrics, nullptr,
                                   "in_sample");
        std::vector<int> labels;
        std::vector<double> probs;
        for (const auto& r : table.records) {
          labels.push_back(r.correct);
          probs.push_back(irtmap::predict_prob(params.theta[static_cast<std::size_t>(r.student)],
                                               params.beta[static_cast<std::size_t>(r.skill)]));
        }
        irtmap::write_calibration_csv((out_dir / "calibration.csv").string(),
                                      irtmap::calibration(labels, probs));
      } else {
        write_analytics(out_dir, params, table);
      }
      return kExitOk;
    }

    if (sim_cmd->parsed()) {
      const irtmap::SynthResult result = irtmap::generate(synth_spec);
      irtmap::write_interactions_csv(synth_output, result.table);
      if (!synth_truth.empty()) {
        irtmap::write_params_json(synth_truth, result.truth, result.table, 0.0);
      }
      return kExitOk;
    }

    if (check_cmd->parsed()) {
      irtmap::CleaningReport cleaning;
      const auto records = irtmap::load_csv(pipeline.input, schema_flags.build(), cleaning);
      const irtmap::InteractionTable table = irtmap::build_table(records);

      irtmap::SplitMix64 rng(check_seed);
      irtmap::ModelParams trial = irtmap::ModelParams::zeros(table.num_students, table.num_skills);
      for (double& t : trial.theta) t = 6.0 * rng.next_unit() - 3.0;
      for (double& b : trial.beta) b = 6.0 * rng.next_unit() - 3.0;

      const double error = irtmap::check_gradient(table, {fit_flags.sigma_squared}, trial,
                                                  check_step);
      std::cout << "max_relative_error=" << irtmap::format_double(error) << '\n';
      return kExitOk;
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}
