// miniboost command line: bench, train, eval, predict, tune.
// Talks to the core exclusively through the C API in miniboost.h.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "miniboost.h"

namespace {

struct StringDeleter {
  void operator()(char* s) const { mb_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct DatasetDeleter {
  void operator()(mb_dataset* ds) const { mb_dataset_free(ds); }
};
using DatasetHandle = std::unique_ptr<mb_dataset, DatasetDeleter>;

struct ModelDeleter {
  void operator()(mb_model* m) const { mb_model_free(m); }
};
using ModelHandle = std::unique_ptr<mb_model, ModelDeleter>;

[[noreturn]] void fail(mb_status status) {
  std::cerr << "error (" << mb_status_name(status) << "): " << mb_last_error() << "\n";
  std::exit(1);
}

void check(mb_status status) {
  if (status != MB_OK) fail(status);
}

struct CsvFlags {
  bool no_header = false;
  int class_column = -1;
};

DatasetHandle load(const std::string& path, const CsvFlags& csv,
                   bool allow_missing_class = false) {
  mb_dataset* ds = nullptr;
  if (path.size() > 4 && path.ends_with(".csv")) {
    check(mb_dataset_load_csv(path.c_str(), csv.no_header ? 0 : 1, csv.class_column,
                              allow_missing_class ? 1 : 0, &ds));
  } else {
    check(mb_dataset_load(path.c_str(), allow_missing_class ? 1 : 0, &ds));
  }
  return DatasetHandle(ds);
}

void add_csv_options(CLI::App* cmd, CsvFlags& flags) {
  cmd->add_flag("--csv-no-header", flags.no_header, "csv files have no header row");
  cmd->add_option("--csv-class", flags.class_column,
                  "csv class column, 0-based (default: last)");
}

ModelHandle train(const std::string& spec, const mb_dataset* ds, uint64_t seed) {
  mb_model* model = nullptr;
  check(mb_train(spec.c_str(), ds, seed, &model));
  return ModelHandle(model);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(1);
  }
  out << content;
}

// splits "lb,l5,nb" or raw specs such as "adaboost(I=5,P=80)"; commas inside
// parentheses do not separate entries
std::vector<std::string> split_learners(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!current.empty()) out.push_back(current);
      current.clear();
      continue;
    }
    current.push_back(c);
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

int run_bench(const std::string& suite_dir, double split, uint64_t seed,
              const std::string& learners, const std::string& grid, int folds, int jobs,
              const std::string& out_path, const std::string& format, bool strict) {
  std::vector<std::string> paths;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(suite_dir, ec)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext == ".arff" || ext == ".csv") paths.push_back(entry.path().string());
  }
  if (ec) {
    std::cerr << "error: cannot read suite directory '" << suite_dir << "': " << ec.message()
              << "\n";
    return 1;
  }
  if (paths.empty()) {
    std::cerr << "error: no .arff or .csv files in '" << suite_dir << "'\n";
    return 1;
  }
  std::sort(paths.begin(), paths.end());

  // <name>.train.<ext> + <name>.test.<ext> form a pre-split pair
  auto stem_ends_with = [](const std::filesystem::path& p, const std::string& tag) {
    std::string stem = p.stem().string();
    return stem.size() > tag.size() && stem.ends_with(tag);
  };
  nlohmann::ordered_json dataset_list = nlohmann::ordered_json::array();
  for (const auto& path : paths) {
    std::filesystem::path p(path);
    if (stem_ends_with(p, ".test")) continue;  // claimed by its .train partner
    if (stem_ends_with(p, ".train")) {
      std::string stem = p.stem().string();
      auto partner = p.parent_path() /
                     (stem.substr(0, stem.size() - 6) + ".test" + p.extension().string());
      if (std::filesystem::exists(partner)) {
        dataset_list.push_back({{"train", path}, {"test", partner.string()}});
        continue;
      }
    }
    dataset_list.push_back(path);
  }

  nlohmann::ordered_json config;
  config["datasets"] = dataset_list;
  config["split"] = split;
  config["seed"] = seed;
  config["folds"] = folds;
  config["jobs"] = jobs;
  if (!grid.empty()) config["grid"] = grid;
  if (!learners.empty()) config["learners"] = split_learners(learners);

  char* report_raw = nullptr;
  check(mb_bench(config.dump().c_str(), &report_raw));
  CString report(report_raw);

  std::string rendered = report.get();
  if (format != "json") {
    char* out_raw = nullptr;
    check(mb_report_render(report.get(), format.c_str(), &out_raw));
    rendered = CString(out_raw).get();
  }
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    write_file(out_path, rendered);
  }

  auto parsed = nlohmann::json::parse(std::string(report.get()));
  for (const auto& skipped : parsed.at("skipped")) {
    std::cerr << "skipped " << skipped.at("path").get<std::string>() << ": "
              << skipped.at("reason").get<std::string>() << "\n";
  }
  std::cerr << "evaluated " << parsed.at("datasets").size() << " dataset(s)";
  for (const auto& s : parsed.at("summary")) {
    std::cerr << "  " << s.at("name").get<std::string>() << "=";
    if (s.at("mean_ratio").is_null()) {
      std::cerr << "N/A";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", s.at("mean_ratio").get<double>());
      std::cerr << buf;
    }
  }
  std::cerr << "\n";
  if (strict && !parsed.at("skipped").empty()) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"miniboost: boosted decision-tree and Naive Bayes benchmark toolkit"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "run a dataset suite and report error ratios");
  std::string suite_dir, bench_out, bench_format = "json", bench_learners, bench_grid;
  double bench_split = 2.0 / 3.0;
  uint64_t bench_seed = 0;
  int bench_folds = 10, bench_jobs = 1;
  bool bench_strict = false;
  bench->add_option("--suite", suite_dir, "directory with .arff/.csv datasets")->required();
  bench->add_option("--split", bench_split, "train fraction (default 2/3)");
  bench->add_option("--seed", bench_seed, "master seed");
  bench->add_option("--learners", bench_learners, "comma list: lb,l5,nb or raw specs");
  bench->add_option("--tune", bench_grid, "grid for tuned learners, e.g. P=10:100:10,I=10:50:10");
  bench->add_option("--folds", bench_folds, "cross-validation folds for tuning");
  bench->add_option("--jobs", bench_jobs, "parallel dataset workers");
  bench->add_option("--out", bench_out, "output file (stdout if omitted)");
  bench->add_option("--format", bench_format, "json|markdown|csv")
      ->check(CLI::IsMember({"json", "markdown", "csv"}));
  bench->add_flag("--strict", bench_strict, "exit nonzero when any dataset was skipped");

  // train
  auto* train_cmd = app.add_subcommand("train", "train a model and optionally dump it");
  std::string train_data, train_algo = "adaboost(base=j48, Q=on)", train_dump;
  uint64_t train_seed = 0;
  train_cmd->add_option("--data", train_data, "training dataset")->required();
  train_cmd->add_option("--algo", train_algo, "learner spec");
  train_cmd->add_option("--seed", train_seed, "seed");
  train_cmd->add_option("--dump-model", train_dump, "write the model rendering here");
  CsvFlags train_csv;
  add_csv_options(train_cmd, train_csv);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "train on one dataset, evaluate on another");
  std::string eval_train, eval_test, eval_algo = "adaboost(base=j48, Q=on)";
  uint64_t eval_seed = 0;
  eval_cmd->add_option("--train", eval_train, "training dataset")->required();
  eval_cmd->add_option("--test", eval_test, "test dataset")->required();
  eval_cmd->add_option("--algo", eval_algo, "learner spec");
  eval_cmd->add_option("--seed", eval_seed, "seed");
  CsvFlags eval_csv;
  add_csv_options(eval_cmd, eval_csv);

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "write one predicted label per input row");
  std::string pred_train, pred_test, pred_algo = "adaboost(base=j48, Q=on)", pred_out;
  uint64_t pred_seed = 0;
  predict_cmd->add_option("--train", pred_train, "labeled training dataset")->required();
  predict_cmd->add_option("--test", pred_test, "dataset to label (class cells may be '?')")
      ->required();
  predict_cmd->add_option("--algo", pred_algo, "learner spec");
  predict_cmd->add_option("--seed", pred_seed, "seed");
  predict_cmd->add_option("--out", pred_out, "output csv (stdout if omitted)");
  CsvFlags pred_csv;
  add_csv_options(predict_cmd, pred_csv);

  // tune
  auto* tune_cmd = app.add_subcommand("tune", "cross-validated grid search");
  std::string tune_data, tune_grid = "P=10:100:10,I=10:50:10",
              tune_algo = "adaboost(base=j48, Q=on)";
  int tune_folds = 10;
  uint64_t tune_seed = 0;
  tune_cmd->add_option("--data", tune_data, "dataset")->required();
  tune_cmd->add_option("--grid", tune_grid, "parameter grid");
  tune_cmd->add_option("--algo", tune_algo, "base learner spec");
  tune_cmd->add_option("--folds", tune_folds, "folds");
  tune_cmd->add_option("--seed", tune_seed, "seed");
  CsvFlags tune_csv;
  add_csv_options(tune_cmd, tune_csv);

  CLI11_PARSE(app, argc, argv);

  if (bench->parsed()) {
    return run_bench(suite_dir, bench_split, bench_seed, bench_learners, bench_grid, bench_folds,
                     bench_jobs, bench_out, bench_format, bench_strict);
  }

  if (train_cmd->parsed()) {
    auto ds = load(train_data, train_csv);
    auto model = train(train_algo, ds.get(), train_seed);
    double err = 0.0;
    check(mb_model_error(model.get(), ds.get(), &err));
    std::cout << "trained " << train_algo << " on " << mb_dataset_size(ds.get())
              << " instances, training error " << err << "\n";
    if (!train_dump.empty()) {
      char* text = nullptr;
      check(mb_model_dump(model.get(), &text));
      write_file(train_dump, CString(text).get());
      std::cout << "model written to " << train_dump << "\n";
    }
    return 0;
  }

  if (eval_cmd->parsed()) {
    auto train_ds = load(eval_train, eval_csv);
    auto test_ds = load(eval_test, eval_csv);
    auto model = train(eval_algo, train_ds.get(), eval_seed);
    double train_err = 0.0, test_err = 0.0;
    check(mb_model_error(model.get(), train_ds.get(), &train_err));
    check(mb_model_error(model.get(), test_ds.get(), &test_err));
    std::cout << "train error " << train_err << "\n";
    std::cout << "test error " << test_err << "\n";
    return 0;
  }

  if (predict_cmd->parsed()) {
    auto train_ds = load(pred_train, pred_csv);
    auto test_ds = load(pred_test, pred_csv, /*allow_missing_class=*/true);
    auto model = train(pred_algo, train_ds.get(), pred_seed);
    std::vector<int> labels(mb_dataset_size(test_ds.get()));
    check(mb_model_predict(model.get(), test_ds.get(), labels.data()));
    std::string lines;
    for (int label : labels) {
      lines += mb_dataset_class_name(train_ds.get(), label);
      lines += "\n";
    }
    if (pred_out.empty()) {
      std::cout << lines;
    } else {
      write_file(pred_out, lines);
      std::cout << "wrote " << labels.size() << " predictions to " << pred_out << "\n";
    }
    return 0;
  }

  if (tune_cmd->parsed()) {
    auto ds = load(tune_data, tune_csv);
    char* result = nullptr;
    check(mb_tune(tune_algo.c_str(), tune_grid.c_str(), ds.get(), tune_folds, tune_seed, nullptr,
                  &result));
    std::cout << CString(result).get();
    return 0;
  }

  return 0;
}
