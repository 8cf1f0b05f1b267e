#include "qadv/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qadv/cli/checkpoint.hpp"
#include "qadv/cli/pipeline.hpp"
#include "qadv/cli/report.hpp"
#include "qadv/error.hpp"
#include "qadv/eval/calibration.hpp"
#include "qadv/eval/conformal.hpp"
#include "qadv/eval/crossval.hpp"
#include "qadv/eval/importance.hpp"
#include "qadv/eval/profile.hpp"
#include "qadv/eval/robustness.hpp"
#include "qadv/io/csv.hpp"
#include "qadv/io/format.hpp"
#include "qadv/train/bundle.hpp"
#include "qadv/xai/explainer.hpp"

namespace qadv::cli {

namespace fs = std::filesystem;
using io::format_double;

namespace {

constexpr std::uint64_t kStreamRobustness = 0x40b5;
constexpr std::uint64_t kStreamImportance = 0x1a70;
constexpr std::uint64_t kStreamExplainCmd = 0xe7a1;

void apply_data_source(RunConfig& cfg, const std::optional<std::string>& data_path, bool synthetic,
                       bool require_source) {
  if (data_path && synthetic) raise(Errc::Config, "--data and --synthetic are mutually exclusive");
  if (synthetic) {
    cfg.data.path.clear();
  } else if (data_path) {
    if (data_path->empty()) raise(Errc::Config, "--data needs a path");
    cfg.data.path = *data_path;
  } else if (require_source && cfg.data.path.empty()) {
    raise(Errc::Config, "a data source is required: pass --data PATH or --synthetic");
  }
}

fs::path ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise(Errc::Io, "cannot create directory " + dir.string() + ": " + ec.message());
  return dir;
}

Json data_section(const RunConfig& cfg, const PreparedData& d) {
  Json pre = nullptr;
  if (d.preprocess) {
    const auto& r = *d.preprocess;
    pre = {{"input_rows", r.input_rows},
           {"imputed_cells", r.imputed_cells},
           {"rows_with_imputation", r.rows_with_imputation},
           {"duplicates_removed", r.duplicates_removed},
           {"outliers_removed", r.outliers_removed},
           {"output_rows", r.output_rows},
           {"morph_e", r.morph_e},
           {"morph_s", r.morph_s}};
  }
  return Json{{"source", cfg.data.synthetic() ? std::string("synthetic") : cfg.data.path},
              {"rows", d.all.features.rows()},
              {"rows_train", d.train.features.rows()},
              {"rows_test", d.test.features.rows()},
              {"rows_validation", d.validation.features.rows()},
              {"features", d.all.features.column_names},
              {"pca_components", d.pca ? d.pca->output_dims() : 0},
              {"preprocess", pre}};
}

Json epoch_json(const train::EpochRecord& r) {
  Json j{{"epoch", r.epoch},
         {"loss_m1", number(r.loss_m1)},
         {"loss_m1_mse", number(r.loss_m1_mse)},
         {"loss_m2", number(r.loss_m2)}};
  if (r.loss_g) j["loss_g"] = number(*r.loss_g);
  if (r.loss_d) j["loss_d"] = number(*r.loss_d);
  return j;
}

Index bundle_parameter_count(const train::ModelBundle& m) {
  Index n = 0;
  if (m.qnn) n += m.qnn->parameter_count();
  if (m.autoencoder) n += m.autoencoder->parameter_count();
  return n;
}

xai::PredictFn predictor(const train::ModelBundle& m) {
  return [&m](const Matrix& x) { return m.predict(x); };
}

std::vector<std::string> metric_cells(const eval::RegressionMetrics& m) {
  return {format_double(m.mse),      format_double(m.rmse),    format_double(m.mae),    format_double(m.r2),
          format_double(m.pct_rmse), format_double(m.pct_mse), format_double(m.pct_mae)};
}

std::vector<std::string> metric_header() { return eval::kMetricNames; }

void write_csv(const fs::path& path, const io::CsvTable& table) { io::write_text(path, io::to_csv(table)); }

int parse_int(std::string_view text, const char* what) {
  int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    raise(Errc::Config, std::string("cannot parse ") + what + " '" + std::string(text) + "'");
  return v;
}

}  // namespace

RunConfig resolve_run_config(const RunOptions& opts) {
  RunConfig cfg = opts.config_path ? load_config(*opts.config_path) : RunConfig{};
  apply_data_source(cfg, opts.data_path, opts.synthetic, !opts.config_path.has_value());
  if (opts.seed) cfg.seed = *opts.seed;
  if (const auto env = seed_from_env()) cfg.seed = *env;
  if (opts.model) cfg.model = train::parse_model_kind(*opts.model);
  if (opts.ablation) cfg.train.ablation = train::parse_ablation(*opts.ablation);
  if (opts.epochs) cfg.train.epochs = *opts.epochs;
  if (opts.rows) cfg.data.synthetic_rows = *opts.rows;
  cfg.validate();
  return cfg;
}

CommandResult cmd_train(const RunOptions& opts) {
  const RunConfig cfg = resolve_run_config(opts);
  const auto data = prepare_data(cfg);
  const auto tcfg = effective_train_config(cfg);
  const auto outcome = train::train_model(cfg.model, data.train, tcfg);

  const Vector yhat = outcome.models.predict(data.test.features.values);
  const auto metrics = eval::regression_metrics(data.test.target.values, yhat, data.target_range());
  const auto resolved = train::apply_ablation(tcfg);

  const fs::path dir = ensure_dir(opts.out);
  ensure_dir(dir / "plots");

  Checkpoint ckpt{cfg, outcome.models, data.scaler, data.all.target.raw_min, data.all.target.raw_max, data.pca,
                  data.all.features.column_names};
  save_checkpoint(dir / "checkpoint.json", ckpt);

  {
    std::ostringstream h;
    train::write_history_csv(h, outcome.history);
    io::write_text(dir / "history.csv", h.str());
  }
  {
    io::CsvTable t{{"row", "y", "yhat"}, {}};
    for (Index i = 0; i < yhat.size(); ++i)
      t.add_row({std::to_string(data.split.test[static_cast<std::size_t>(i)]), format_double(data.test.target.values(i)),
                 format_double(yhat(i))});
    write_csv(dir / "plots" / "predictions.csv", t);
  }

  Json epochs = Json::array();
  for (const auto& r : outcome.history.epochs) epochs.push_back(epoch_json(r));
  Json gan = Json::array();
  for (const auto& r : outcome.history.gan_pretrain) gan.push_back(epoch_json(r));

  Json report = report_header("train", cfg);
  report["data"] = data_section(cfg, data);
  report["training"] = {{"model", std::string(train::to_string(cfg.model))},
                        {"ablation", std::string(train::to_string(cfg.train.ablation))},
                        {"alpha_effective", resolved.alpha},
                        {"quantum_layer", resolved.qnn.quantum},
                        {"classical_trunk", resolved.qnn.classical_trunk},
                        {"parameter_count", bundle_parameter_count(outcome.models)},
                        {"circuit_evaluations", outcome.history.circuit_evaluations},
                        {"warnings", outcome.history.warnings},
                        {"epochs", epochs},
                        {"gan_pretrain", gan}};
  report["metrics"] = metrics_json(metrics);
  report["files"] = {{"checkpoint", "checkpoint.json"},
                     {"history", "history.csv"},
                     {"predictions", "plots/predictions.csv"}};
  write_json(dir / "report.json", report);
  return {report, dir / "report.json"};
}

CommandResult cmd_evaluate(const EvaluateOptions& opts) {
  if (opts.suites.empty()) raise(Errc::Config, "at least one --suite is required");
  for (const auto& s : opts.suites)
    if (std::find(kEvaluateSuites.begin(), kEvaluateSuites.end(), s) == kEvaluateSuites.end())
      raise(Errc::Config, "unknown suite '" + s + "'");
  const auto ckpt = load_checkpoint(opts.checkpoint);
  RunConfig cfg = ckpt.config;
  apply_data_source(cfg, opts.data_path, opts.synthetic, false);
  const auto data = prepare_data(cfg);
  if (data.all.features.cols() != ckpt.models.input_dim())
    raise(Errc::DimensionMismatch, "checkpoint expects " + std::to_string(ckpt.models.input_dim()) +
                                       " input columns, data has " + std::to_string(data.all.features.cols()));
  const auto& models = ckpt.models;
  const auto predict = predictor(models);
  const Matrix& x_test = data.test.features.values;
  const Vector& y_test = data.test.target.values;
  const Vector yhat = models.predict(x_test);
  const double y_range = data.target_range();

  const fs::path dir = ensure_dir(opts.out ? *opts.out : opts.checkpoint.parent_path());
  ensure_dir(dir / "plots");

  Json report = report_header("evaluate", cfg);
  report["checkpoint"] = {{"model_kind", std::string(train::to_string(models.kind))}};
  report["data"] = data_section(cfg, data);
  report["suites"] = opts.suites;

  for (const auto& suite : opts.suites) {
    if (suite == "metrics") {
      report["metrics"] = metrics_json(eval::regression_metrics(y_test, yhat, y_range));
    } else if (suite == "calibration") {
      const auto cal = eval::calibration(y_test, yhat, cfg.eval.calibration_bins);
      io::CsvTable t{{"lower", "upper", "center", "mean_predicted", "mean_observed", "mass", "count"}, {}};
      Json bins = Json::array();
      for (const auto& b : cal.bins) {
        t.add_row({format_double(b.lower), format_double(b.upper), format_double(b.center),
                   format_double(b.mean_predicted), format_double(b.mean_observed), format_double(b.mass),
                   std::to_string(b.count)});
        bins.push_back({{"lower", b.lower},
                        {"upper", b.upper},
                        {"mean_predicted", b.mean_predicted},
                        {"mean_observed", b.mean_observed},
                        {"mass", b.mass},
                        {"count", b.count}});
      }
      write_csv(dir / "plots" / "reliability.csv", t);
      report["calibration"] = {{"ece", number(cal.ece)},
                               {"ace", number(cal.ace)},
                               {"brier", number(cal.brier)},
                               {"degenerate_bins", cal.degenerate},
                               {"bins", bins}};
    } else if (suite == "conformal") {
      const Vector val_res = data.validation.target.values - models.predict(data.validation.features.values);
      const auto conf = eval::conformal(val_res, cfg.eval.conformal_levels, y_test, yhat);
      io::CsvTable curve{{"level", "half_width", "coverage"}, {}};
      Json levels = Json::array();
      for (std::size_t i = 0; i < conf.levels.size(); ++i) {
        curve.add_row({format_double(conf.levels[i]), format_double(conf.half_widths[i]), format_double(conf.coverage[i])});
        levels.push_back({{"level", conf.levels[i]},
                          {"half_width", number(conf.half_widths[i])},
                          {"coverage", conf.coverage[i]}});
      }
      write_csv(dir / "plots" / "coverage.csv", curve);
      std::vector<std::string> header = {"row", "y", "yhat"};
      for (const auto& set : conf.intervals) {
        const auto tag = format_double(set.level * 100.0);
        header.push_back("lower_" + tag);
        header.push_back("upper_" + tag);
      }
      io::CsvTable scatter{header, {}};
      for (Index i = 0; i < y_test.size(); ++i) {
        std::vector<std::string> row = {std::to_string(data.split.test[static_cast<std::size_t>(i)]),
                                        format_double(y_test(i)), format_double(yhat(i))};
        for (const auto& set : conf.intervals) {
          row.push_back(format_double(set.lower(i)));
          row.push_back(format_double(set.upper(i)));
        }
        scatter.add_row(std::move(row));
      }
      write_csv(dir / "plots" / "intervals.csv", scatter);
      report["conformal"] = {{"n_calibration", val_res.size()}, {"levels", levels}};
    } else if (suite == "robustness") {
      const auto entries = eval::robustness_suite(predict, x_test, y_test, cfg.eval.noise_magnitude,
                                                  derive_seed(cfg.seed, kStreamRobustness), y_range);
      auto header = std::vector<std::string>{"kind", "rows"};
      for (const auto& m : metric_header()) header.push_back(m);
      for (const char* m : {"silhouette", "calinski_harabasz", "davies_bouldin", "wasserstein", "ks"}) header.emplace_back(m);
      io::CsvTable t{header, {}};
      Json sections = Json::object();
      for (const auto& e : entries) {
        std::vector<std::string> row = {std::string(eval::to_string(e.kind)), std::to_string(e.rows)};
        for (auto& c : metric_cells(e.metrics)) row.push_back(c);
        for (double v : {e.distribution.silhouette, e.distribution.calinski_harabasz, e.distribution.davies_bouldin,
                         e.distribution.wasserstein, e.distribution.ks})
          row.push_back(format_double(v));
        t.add_row(std::move(row));
        sections[std::string(eval::to_string(e.kind))] = {
            {"rows", e.rows},
            {"metrics", metrics_json(e.metrics)},
            {"distribution",
             {{"silhouette", number(e.distribution.silhouette)},
              {"calinski_harabasz", number(e.distribution.calinski_harabasz)},
              {"davies_bouldin", number(e.distribution.davies_bouldin)},
              {"wasserstein", number(e.distribution.wasserstein)},
              {"ks", number(e.distribution.ks)}}}};
      }
      write_csv(dir / "plots" / "robustness.csv", t);
      report["robustness"] = {{"magnitude", cfg.eval.noise_magnitude}, {"noise", sections}};
    } else if (suite == "importance") {
      const auto imp = eval::permutation_importance(predict, x_test, y_test, cfg.eval.importance_repeats,
                                                    derive_seed(cfg.seed, kStreamImportance));
      io::CsvTable t{{"feature", "importance_mean", "importance_std", "raw_mean"}, {}};
      Json features = Json::array();
      const auto& names = data.all.features.column_names;
      for (Index j = 0; j < imp.mean.size(); ++j) {
        const auto& name = names[static_cast<std::size_t>(j)];
        t.add_row({name, format_double(imp.mean(j)), format_double(imp.std(j)), format_double(imp.raw_mean(j))});
        features.push_back({{"feature", name}, {"mean", imp.mean(j)}, {"std", imp.std(j)}, {"raw_mean", imp.raw_mean(j)}});
      }
      write_csv(dir / "plots" / "importance.csv", t);
      report["importance"] = {{"baseline_mse", imp.baseline_mse},
                              {"repeats", cfg.eval.importance_repeats},
                              {"features", features}};
    }
  }
  write_json(dir / "evaluation.json", report);
  return {report, dir / "evaluation.json"};
}

CommandResult cmd_crossval(const CrossvalOptions& opts) {
  RunConfig cfg = resolve_run_config(opts.run);
  if (opts.k) cfg.eval.cv_folds = *opts.k;
  cfg.validate();
  const auto data = prepare_data(cfg);
  const auto tcfg = effective_train_config(cfg);
  const auto baseline = train::parse_model_kind(opts.baseline);
  std::vector<train::ModelKind> kinds;
  if (opts.models.empty()) kinds.push_back(cfg.model);
  for (const auto& m : opts.models) kinds.push_back(train::parse_model_kind(m));

  const fs::path dir = ensure_dir(opts.run.out);
  ensure_dir(dir / "plots");
  auto header = std::vector<std::string>{"model", "fold", "rows"};
  for (const auto& m : metric_header()) header.push_back(m);
  io::CsvTable folds_csv{header, {}};

  Json report = report_header("crossval", cfg);
  report["data"] = data_section(cfg, data);
  Json models = Json::object();
  for (auto kind : kinds) {
    const auto cv = eval::cross_validate(kind, data.all, cfg.eval.cv_folds, tcfg, baseline);
    Json folds = Json::array();
    for (std::size_t f = 0; f < cv.model_folds.size(); ++f) {
      folds.push_back({{"fold", f}, {"rows", cv.folds[f].size()}, {"metrics", metrics_json(cv.model_folds[f])}});
      std::vector<std::string> row = {std::string(train::to_string(kind)), std::to_string(f),
                                      std::to_string(cv.folds[f].size())};
      for (auto& c : metric_cells(cv.model_folds[f])) row.push_back(c);
      folds_csv.add_row(std::move(row));
    }
    Json summary = Json::object(), tests = Json::object();
    for (const auto& name : eval::kMetricNames) {
      const auto& ci = cv.model_summary.at(name);
      summary[name] = {{"mean", number(ci.mean)}, {"ci_lower", number(ci.lower)}, {"ci_upper", number(ci.upper)}};
      const auto& t = cv.tests.at(name);
      tests[name] = {{"t_statistic", number(t.t_test.statistic)},
                     {"p_t", number(t.t_test.p_value)},
                     {"wilcoxon_statistic", number(t.wilcoxon.statistic)},
                     {"p_w", number(t.wilcoxon.p_value)}};
    }
    models[std::string(train::to_string(kind))] = {{"folds", folds}, {"summary", summary}, {"tests_vs_baseline", tests}};
  }
  write_csv(dir / "plots" / "cv_folds.csv", folds_csv);
  report["crossval"] = {{"k", cfg.eval.cv_folds}, {"baseline", opts.baseline}, {"models", models}};
  write_json(dir / "crossval.json", report);
  return {report, dir / "crossval.json"};
}

CommandResult cmd_profile(const ProfileOptions& opts) {
  RunConfig cfg = resolve_run_config(opts.run);
  if (opts.latency_runs) cfg.eval.latency_runs = *opts.latency_runs;
  if (opts.latency_batch) cfg.eval.latency_batch = *opts.latency_batch;
  cfg.validate();
  const auto [qmin, qmax] = parse_qubit_range(opts.qubits);
  const auto data = prepare_data(cfg);
  eval::ProfileOptions popts{qmin, qmax, cfg.eval.latency_batch, cfg.eval.latency_runs};
  const auto entries = eval::profile_qubits(cfg.model, data.train, data.test, effective_train_config(cfg), popts);

  const fs::path dir = ensure_dir(opts.run.out);
  ensure_dir(dir / "plots");
  auto header = std::vector<std::string>{"n_qubits"};
  for (const auto& m : metric_header()) header.push_back(m);
  for (const char* c : {"latency_ms_mean", "latency_ms_std", "parameter_count", "circuit_evaluations"})
    header.emplace_back(c);
  io::CsvTable t{header, {}};
  Json rows = Json::array();
  for (const auto& e : entries) {
    std::vector<std::string> row = {std::to_string(e.n_qubits)};
    for (auto& c : metric_cells(e.metrics)) row.push_back(c);
    row.push_back(format_double(e.latency_ms_mean));
    row.push_back(format_double(e.latency_ms_std));
    row.push_back(std::to_string(e.parameter_count));
    row.push_back(std::to_string(e.circuit_evaluations));
    t.add_row(std::move(row));
    rows.push_back({{"n_qubits", e.n_qubits},
                    {"metrics", metrics_json(e.metrics)},
                    {"latency_ms_mean", e.latency_ms_mean},
                    {"latency_ms_std", e.latency_ms_std},
                    {"parameter_count", e.parameter_count},
                    {"circuit_evaluations", e.circuit_evaluations}});
  }
  write_csv(dir / "plots" / "profile.csv", t);
  Json report = report_header("profile", cfg);
  report["data"] = data_section(cfg, data);
  report["profile"] = {{"model", std::string(train::to_string(cfg.model))},
                       {"latency_batch", cfg.eval.latency_batch},
                       {"latency_runs", cfg.eval.latency_runs},
                       {"rows", rows}};
  write_json(dir / "profile.json", report);
  return {report, dir / "profile.json"};
}

CommandResult cmd_explain(const ExplainOptions& opts) {
  const auto ckpt = load_checkpoint(opts.checkpoint);
  RunConfig cfg = ckpt.config;
  apply_data_source(cfg, opts.data_path, opts.synthetic, false);
  const auto data = prepare_data(cfg);
  if (data.all.features.cols() != ckpt.models.input_dim())
    raise(Errc::DimensionMismatch, "checkpoint and data disagree on the feature count");
  const auto rows = parse_row_selection(opts.rows, data.all.features.rows());
  const auto explainer = xai::fit_explainer(data.train.features.values, cfg.train.explainer);
  const Matrix x = data::select_rows(data.all.features.values, rows);
  std::vector<std::uint64_t> seeds;
  for (Index r : rows) seeds.push_back(derive_seed(cfg.seed, kStreamExplainCmd, static_cast<std::uint64_t>(r)));
  const auto explanations = xai::explain_batch(explainer, predictor(ckpt.models), x, seeds);

  const auto& names = data.all.features.column_names;
  std::vector<std::string> header = {"row", "prediction"};
  for (const auto& n : names) header.push_back("w_" + n);
  header.emplace_back("intercept");
  header.emplace_back("local_r2");
  io::CsvTable t{header, {}};
  const Vector preds = ckpt.models.predict(x);
  Json records = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& e = explanations[i];
    std::vector<std::string> row = {std::to_string(rows[i]), format_double(preds(static_cast<Index>(i)))};
    Json weights = Json::object();
    for (Index j = 0; j < e.weights.size(); ++j) {
      row.push_back(format_double(e.weights(j)));
      weights[names[static_cast<std::size_t>(j)]] = e.weights(j);
    }
    row.push_back(format_double(e.intercept));
    row.push_back(format_double(e.local_r2));
    t.add_row(std::move(row));
    records.push_back({{"row", rows[i]},
                       {"prediction", preds(static_cast<Index>(i))},
                       {"weights", weights},
                       {"intercept", e.intercept},
                       {"local_r2", e.local_r2}});
  }
  const fs::path dir = ensure_dir(opts.out ? *opts.out : opts.checkpoint.parent_path());
  write_csv(dir / "explanations.csv", t);
  Json report = report_header("explain", cfg);
  report["explanations"] = records;
  write_json(dir / "explanations.json", report);
  return {report, dir / "explanations.json"};
}

std::vector<Index> parse_row_selection(const std::string& text, Index n) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) raise(Errc::Config, "empty entry in row selection '" + text + "'");
    const auto dash = part.find('-', 1);
    const int lo = parse_int(std::string_view(part).substr(0, dash), "row index");
    const int hi = dash == std::string::npos ? lo : parse_int(std::string_view(part).substr(dash + 1), "row index");
    if (lo < 0 || hi < lo) raise(Errc::Config, "invalid row range '" + part + "'");
    for (int r = lo; r <= hi; ++r) {
      if (r >= n) raise(Errc::RowOutOfRange, "row " + std::to_string(r) + " is outside 0.." + std::to_string(n - 1));
      out.push_back(r);
    }
  }
  if (out.empty()) raise(Errc::Config, "row selection is empty");
  return out;
}

std::pair<int, int> parse_qubit_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int hi = parse_int(text, "qubit count");
    return {1, hi};
  }
  const int lo = parse_int(std::string_view(text).substr(0, dots), "qubit range");
  const int hi = parse_int(std::string_view(text).substr(dots + 2), "qubit range");
  if (lo < 1 || hi < lo) raise(Errc::QubitOutOfRange, "qubit range '" + text + "' must satisfy 1 <= a <= b");
  return {lo, hi};
}

}  // namespace qadv::cli
