// qadv: train, evaluate, cross-validate, profile and explain hybrid QNN models.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qadv/cli/commands.hpp"
#include "qadv/error.hpp"

namespace {

using qadv::cli::RunOptions;

void add_run_flags(CLI::App* cmd, RunOptions& o, std::optional<std::string>& config, std::optional<std::string>& out) {
  cmd->add_option("--config", config, "JSON run configuration");
  cmd->add_option("--data", o.data_path, "Catalog CSV");
  cmd->add_flag("--synthetic", o.synthetic, "Use the built-in synthetic data set");
  cmd->add_option("--seed", o.seed, "Run seed (QADV_SEED overrides)");
  cmd->add_option("--out", out, "Output directory")->default_str("run");
  cmd->add_option("--model", o.model, "vanilla | qgan1 | qgan2 | qssl");
  cmd->add_option("--ablation", o.ablation, "none | no_feedback | no_quantum | no_classical");
  cmd->add_option("--epochs", o.epochs, "Training epochs");
  cmd->add_option("--rows", o.rows, "Synthetic row count");
}

void finish_run_flags(RunOptions& o, const std::optional<std::string>& config, const std::optional<std::string>& out) {
  if (config) o.config_path = *config;
  if (out) o.out = *out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid quantum-classical regression with explanation feedback"};
  app.require_subcommand(1);

  RunOptions train_opts;
  std::optional<std::string> train_config, train_out;
  auto* train = app.add_subcommand("train", "Train a model and report test metrics");
  add_run_flags(train, train_opts, train_config, train_out);

  qadv::cli::EvaluateOptions eval_opts;
  std::string eval_ckpt;
  std::optional<std::string> eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "Run evaluation suites against a checkpoint");
  evaluate->add_option("--checkpoint", eval_ckpt, "checkpoint.json from a train run")->required();
  evaluate->add_option("--data", eval_opts.data_path, "Catalog CSV");
  evaluate->add_flag("--synthetic", eval_opts.synthetic, "Use the built-in synthetic data set");
  evaluate->add_option("--suite", eval_opts.suites, "metrics, calibration, conformal, robustness, importance")
      ->delimiter(',');
  evaluate->add_option("--out", eval_out, "Output directory (default: checkpoint directory)");

  qadv::cli::CrossvalOptions cv_opts;
  std::optional<std::string> cv_config, cv_out;
  auto* crossval = app.add_subcommand("crossval", "k-fold cross-validation with significance tests");
  add_run_flags(crossval, cv_opts.run, cv_config, cv_out);
  crossval->add_option("--models", cv_opts.models, "Model kinds to compare")->delimiter(',');
  crossval->add_option("--k", cv_opts.k, "Fold count");
  crossval->add_option("--baseline", cv_opts.baseline, "Baseline model kind")->default_str("vanilla");

  qadv::cli::ProfileOptions prof_opts;
  std::optional<std::string> prof_config, prof_out;
  auto* profile = app.add_subcommand("profile", "Accuracy and latency per qubit count");
  add_run_flags(profile, prof_opts.run, prof_config, prof_out);
  profile->add_option("--qubits", prof_opts.qubits, "Qubit range a..b")->default_str("1..4");
  profile->add_option("--latency-runs", prof_opts.latency_runs, "Timed repetitions");
  profile->add_option("--latency-batch", prof_opts.latency_batch, "Rows per timed batch");

  qadv::cli::ExplainOptions expl_opts;
  std::string expl_ckpt;
  std::optional<std::string> expl_out;
  auto* explain = app.add_subcommand("explain", "Local surrogate explanations of selected rows");
  explain->add_option("--checkpoint", expl_ckpt, "checkpoint.json from a train run")->required();
  explain->add_option("--data", expl_opts.data_path, "Catalog CSV");
  explain->add_flag("--synthetic", expl_opts.synthetic, "Use the built-in synthetic data set");
  explain->add_option("--rows", expl_opts.rows, "Row selection, e.g. 0,3,5-9")->default_str("0");
  explain->add_option("--out", expl_out, "Output directory (default: checkpoint directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    qadv::cli::CommandResult result;
    if (*train) {
      finish_run_flags(train_opts, train_config, train_out);
      result = qadv::cli::cmd_train(train_opts);
    } else if (*evaluate) {
      eval_opts.checkpoint = eval_ckpt;
      if (eval_out) eval_opts.out = *eval_out;
      result = qadv::cli::cmd_evaluate(eval_opts);
    } else if (*crossval) {
      finish_run_flags(cv_opts.run, cv_config, cv_out);
      result = qadv::cli::cmd_crossval(cv_opts);
    } else if (*profile) {
      finish_run_flags(prof_opts.run, prof_config, prof_out);
      result = qadv::cli::cmd_profile(prof_opts);
    } else if (*explain) {
      expl_opts.checkpoint = expl_ckpt;
      if (expl_out) expl_opts.out = *expl_out;
      result = qadv::cli::cmd_explain(expl_opts);
    }
    std::cout << result.report_path.string() << '\n';
    return 0;
  } catch (const qadv::Error& e) {
    std::cerr << "qadv: " << e.what() << '\n';
    return qadv::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "qadv: internal error: " << e.what() << '\n';
    return 1;
  }
}
