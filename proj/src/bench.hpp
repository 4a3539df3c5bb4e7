#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "learner.hpp"
#include "tune.hpp"

namespace miniboost {

struct LearnerEntry {
  std::string name;   // report label: lb, l5, nb or a raw spec string
  LearnerSpec spec;
  bool tuned = false;  // run grid_select on the training split first
};

// lb = adaboost(base=stump) with defaults, untuned
// l5 = adaboost(base=j48, Q=on) with P and I tuned per dataset
// nb = the Naive Bayes reference (always present: ratio denominator)
std::vector<LearnerEntry> default_roster();
LearnerEntry make_roster_entry(const std::string& name);

// a dataset is either one file split by fraction, or a pre-split pair
struct DatasetSource {
  std::string path;
  std::string test_path;  // empty = split `path` by the configured fraction

  bool pre_split() const { return !test_path.empty(); }
};

struct RunConfig {
  std::vector<std::string> dataset_paths;  // single-file sources
  std::vector<DatasetSource> pre_split;    // train/test pairs
  double split_fraction = 2.0 / 3.0;
  uint64_t seed = 0;
  std::vector<LearnerEntry> roster = default_roster();
  ParamGrid tune_grid = default_l5_grid();
  int folds = 10;
  int jobs = 1;
};

struct LearnerResult {
  std::string name;
  std::string spec;  // canonical formatting, after tuning
  double error = 0.0;
  std::optional<double> ratio;  // absent = UNDEFINED (errorNB was 0)
  std::vector<std::pair<std::string, double>> chosen;  // tuned parameters, empty if untuned
};

struct DatasetReport {
  std::string name;
  int train_size = 0;
  int test_size = 0;
  int num_features = 0;  // attributes excluding the class
  std::vector<LearnerResult> learners;
};

struct SkippedFile {
  std::string path;
  std::string reason;
};

struct LearnerSummary {
  std::string name;
  std::optional<double> mean_ratio;  // over datasets with a defined ratio
  int defined_ratios = 0;
  int undefined_ratios = 0;
};

struct SuiteReport {
  std::vector<std::string> dataset_names;  // echo of the evaluated suite, sorted
  double split_fraction = 0.0;
  uint64_t seed = 0;
  int folds = 0;
  std::string grid;
  std::vector<DatasetReport> datasets;  // ordered by dataset name
  std::vector<LearnerSummary> summary;
  std::vector<SkippedFile> skipped;

  bool operator==(const SuiteReport&) const = default;
};

inline bool operator==(const LearnerResult& a, const LearnerResult& b) {
  return a.name == b.name && a.spec == b.spec && a.error == b.error && a.ratio == b.ratio &&
         a.chosen == b.chosen;
}
inline bool operator==(const DatasetReport& a, const DatasetReport& b) {
  return a.name == b.name && a.train_size == b.train_size && a.test_size == b.test_size &&
         a.num_features == b.num_features && a.learners == b.learners;
}
inline bool operator==(const SkippedFile& a, const SkippedFile& b) {
  return a.path == b.path && a.reason == b.reason;
}
inline bool operator==(const LearnerSummary& a, const LearnerSummary& b) {
  return a.name == b.name && a.mean_ratio == b.mean_ratio &&
         a.defined_ratios == b.defined_ratios && a.undefined_ratios == b.undefined_ratios;
}

// misclassified weight / total weight under argmax predictions
double evaluate_holdout(const Classifier& model, const Dataset& test);

// errC / errNB; absent when errNB == 0
std::optional<double> error_ratio(double error_c, double error_nb);

// Loads every dataset, splits 2:1 (or the configured fraction), tunes the
// tuned roster entries on the training part only, trains everything on the
// training part and evaluates on the held-out part. Unreadable files are
// skipped with a diagnostic. Deterministic in (file bytes, config, seed),
// independent of the number of jobs.
SuiteReport run_suite(const RunConfig& config);

std::string emit_json(const SuiteReport& report);
std::string emit_markdown(const SuiteReport& report);
std::string emit_csv(const SuiteReport& report);
std::string emit_report(const SuiteReport& report, const std::string& format);

SuiteReport report_from_json(const std::string& json_text);

}  // namespace miniboost
