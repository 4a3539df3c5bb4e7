#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "arff.hpp"
#include "rng.hpp"

namespace miniboost {

using ordered_json = nlohmann::ordered_json;

std::vector<LearnerEntry> default_roster() {
  return {make_roster_entry("lb"), make_roster_entry("l5"), make_roster_entry("nb")};
}

LearnerEntry make_roster_entry(const std::string& name) {
  LearnerEntry entry;
  entry.name = name;
  if (name == "lb") {
    entry.spec = parse_learner_spec("adaboost(base=stump)");
  } else if (name == "l5") {
    entry.spec = parse_learner_spec("adaboost(base=j48, Q=on)");
    entry.tuned = true;
  } else if (name == "nb") {
    entry.spec = parse_learner_spec("nb");
  } else {
    entry.spec = parse_learner_spec(name);
  }
  return entry;
}

double evaluate_holdout(const Classifier& model, const Dataset& test) {
  if (test.empty()) throw std::invalid_argument("empty test set");
  if (!model.schema().compatible(test.schema())) {
    throw std::invalid_argument("test set schema does not match the model");
  }
  double mis = 0.0, total = 0.0;
  for (size_t i = 0; i < test.size(); ++i) {
    int c = test.class_of(i);
    if (c < 0) throw std::invalid_argument("test instance with missing class");
    total += test.weight(i);
    if (model.predict(test.instance(i)) != c) mis += test.weight(i);
  }
  return mis / total;
}

std::optional<double> error_ratio(double error_c, double error_nb) {
  if (error_c < 0.0 || error_c > 1.0 || error_nb < 0.0 || error_nb > 1.0) {
    throw std::invalid_argument("error rates must be in [0, 1]");
  }
  if (error_nb == 0.0) return std::nullopt;
  return error_c / error_nb;
}

namespace {

std::string stem_of(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  // pre-split pairs are named <name>.train.arff / <name>.test.arff
  for (const char* suffix : {".train", ".test"}) {
    if (stem.size() > std::strlen(suffix) &&
        stem.compare(stem.size() - std::strlen(suffix), std::string::npos, suffix) == 0) {
      stem.resize(stem.size() - std::strlen(suffix));
    }
  }
  return stem;
}

struct DatasetJob {
  std::string name;
  DatasetSource source;
};

DatasetReport evaluate_dataset(const DatasetJob& job, const RunConfig& config) {
  uint64_t dataset_seed = mix_seed(config.seed, hash_name(job.name));

  Dataset train, test;
  if (job.source.pre_split()) {
    train = load_dataset_file(job.source.path);
    test = load_dataset_file(job.source.test_path);
    if (!train.schema().compatible(test.schema())) {
      throw std::runtime_error("train and test schemas do not match");
    }
  } else {
    Dataset full = load_dataset_file(job.source.path);
    if (full.empty()) throw std::runtime_error("dataset is empty");
    std::tie(train, test) = stratified_split(full, config.split_fraction, dataset_seed);
  }
  if (train.empty() || test.empty()) {
    throw std::runtime_error("empty train or test part");
  }

  DatasetReport report;
  report.name = job.name;
  report.train_size = static_cast<int>(train.size());
  report.test_size = static_cast<int>(test.size());
  report.num_features = train.num_attributes() - 1;

  std::vector<LearnerResult> results;
  for (const LearnerEntry& entry : config.roster) {
    uint64_t learner_seed = mix_seed(dataset_seed, hash_name(entry.name));
    LearnerResult result;
    result.name = entry.name;
    LearnerSpec spec = entry.spec;
    if (entry.tuned) {
      TuneResult tuned = grid_select(entry.spec, config.tune_grid, train, config.folds,
                                     mix_seed(learner_seed, hash_name("tune")));
      spec = tuned.tuned_spec;
      result.chosen = tuned.chosen;
    }
    auto model = train_learner(spec, train, learner_seed);
    result.spec = format_learner_spec(spec);
    result.error = evaluate_holdout(*model, test);
    results.push_back(std::move(result));
  }

  // every ratio divides by the Naive Bayes reference error
  double error_nb = 0.0;
  bool found_nb = false;
  for (size_t i = 0; i < results.size() && !found_nb; ++i) {
    if (results[i].name == "nb") {
      error_nb = results[i].error;
      found_nb = true;
    }
  }
  for (size_t i = 0; i < results.size() && !found_nb; ++i) {
    if (config.roster[i].spec.kind == LearnerSpec::kNaiveBayes) {
      error_nb = results[i].error;
      found_nb = true;
    }
  }
  if (!found_nb) throw std::logic_error("roster has no Naive Bayes reference");
  for (LearnerResult& r : results) r.ratio = error_ratio(r.error, error_nb);
  report.learners = std::move(results);
  return report;
}

}  // namespace

SuiteReport run_suite(const RunConfig& config) {
  if (config.dataset_paths.empty() && config.pre_split.empty()) {
    throw std::invalid_argument("no datasets given");
  }
  if (config.roster.empty()) throw std::invalid_argument("learner roster is empty");

  RunConfig cfg = config;
  bool has_nb = false;
  for (const auto& entry : cfg.roster) has_nb |= entry.spec.kind == LearnerSpec::kNaiveBayes;
  if (!has_nb) cfg.roster.push_back(make_roster_entry("nb"));

  std::vector<DatasetJob> jobs;
  for (const std::string& path : cfg.dataset_paths) {
    jobs.push_back({stem_of(path), DatasetSource{path, ""}});
  }
  for (const DatasetSource& source : cfg.pre_split) {
    jobs.push_back({stem_of(source.path), source});
  }
  std::sort(jobs.begin(), jobs.end(),
            [](const DatasetJob& a, const DatasetJob& b) { return a.name < b.name; });

  SuiteReport report;
  report.split_fraction = cfg.split_fraction;
  report.seed = cfg.seed;
  report.folds = cfg.folds;
  report.grid = format_grid(cfg.tune_grid);
  for (const auto& job : jobs) report.dataset_names.push_back(job.name);

  std::vector<std::optional<DatasetReport>> done(jobs.size());
  std::vector<std::optional<SkippedFile>> failed(jobs.size());

  auto run_one = [&](size_t j) {
    try {
      done[j] = evaluate_dataset(jobs[j], cfg);
    } catch (const std::exception& e) {
      failed[j] = SkippedFile{jobs[j].source.path, e.what()};
    }
  };

  int jobs_n = std::max(1, cfg.jobs);
  if (jobs_n == 1 || jobs.size() <= 1) {
    for (size_t j = 0; j < jobs.size(); ++j) run_one(j);
  } else {
    // datasets are independent; every one derives its own rng stream from
    // (seed, name), so the schedule cannot change any result
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (true) {
        size_t j = next.fetch_add(1);
        if (j >= jobs.size()) return;
        run_one(j);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(jobs_n, static_cast<int>(jobs.size())); ++w) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) th.join();
  }

  for (size_t j = 0; j < jobs.size(); ++j) {
    if (done[j]) report.datasets.push_back(std::move(*done[j]));
    if (failed[j]) report.skipped.push_back(std::move(*failed[j]));
  }

  for (const LearnerEntry& entry : cfg.roster) {
    LearnerSummary summary;
    summary.name = entry.name;
    double total = 0.0;
    for (const DatasetReport& d : report.datasets) {
      for (const LearnerResult& r : d.learners) {
        if (r.name != entry.name) continue;
        if (r.ratio) {
          total += *r.ratio;
          ++summary.defined_ratios;
        } else {
          ++summary.undefined_ratios;
        }
      }
    }
    if (summary.defined_ratios > 0) summary.mean_ratio = total / summary.defined_ratios;
    report.summary.push_back(std::move(summary));
  }
  return report;
}

namespace {

ordered_json chosen_to_json(const std::vector<std::pair<std::string, double>>& chosen) {
  ordered_json out = ordered_json::object();
  for (const auto& [name, value] : chosen) out[name] = value;
  return out;
}

}  // namespace

std::string emit_json(const SuiteReport& report) {
  ordered_json root;
  root["config"] = {{"datasets", report.dataset_names},
                    {"split", report.split_fraction},
                    {"seed", report.seed},
                    {"folds", report.folds},
                    {"grid", report.grid}};
  root["datasets"] = ordered_json::array();
  for (const DatasetReport& d : report.datasets) {
    ordered_json jd;
    jd["name"] = d.name;
    jd["train_size"] = d.train_size;
    jd["test_size"] = d.test_size;
    jd["num_features"] = d.num_features;
    jd["learners"] = ordered_json::array();
    for (const LearnerResult& r : d.learners) {
      ordered_json jr;
      jr["name"] = r.name;
      jr["spec"] = r.spec;
      jr["error"] = r.error;
      if (r.ratio) {
        jr["ratio"] = *r.ratio;
      } else {
        jr["ratio"] = nullptr;
      }
      if (!r.chosen.empty()) jr["chosen"] = chosen_to_json(r.chosen);
      jd["learners"].push_back(std::move(jr));
    }
    root["datasets"].push_back(std::move(jd));
  }
  root["summary"] = ordered_json::array();
  for (const LearnerSummary& s : report.summary) {
    ordered_json js;
    js["name"] = s.name;
    if (s.mean_ratio) {
      js["mean_ratio"] = *s.mean_ratio;
    } else {
      js["mean_ratio"] = nullptr;
    }
    js["defined_ratios"] = s.defined_ratios;
    js["undefined_ratios"] = s.undefined_ratios;
    root["summary"].push_back(std::move(js));
  }
  root["skipped"] = ordered_json::array();
  for (const SkippedFile& s : report.skipped) {
    root["skipped"].push_back({{"path", s.path}, {"reason", s.reason}});
  }
  return root.dump(2) + "\n";
}

SuiteReport report_from_json(const std::string& json_text) {
  ordered_json root = ordered_json::parse(json_text);
  SuiteReport report;
  const auto& config = root.at("config");
  report.dataset_names = config.at("datasets").get<std::vector<std::string>>();
  report.split_fraction = config.at("split").get<double>();
  report.seed = config.at("seed").get<uint64_t>();
  report.folds = config.at("folds").get<int>();
  report.grid = config.at("grid").get<std::string>();
  for (const auto& jd : root.at("datasets")) {
    DatasetReport d;
    d.name = jd.at("name").get<std::string>();
    d.train_size = jd.at("train_size").get<int>();
    d.test_size = jd.at("test_size").get<int>();
    d.num_features = jd.at("num_features").get<int>();
    for (const auto& jr : jd.at("learners")) {
      LearnerResult r;
      r.name = jr.at("name").get<std::string>();
      r.spec = jr.at("spec").get<std::string>();
      r.error = jr.at("error").get<double>();
      if (!jr.at("ratio").is_null()) r.ratio = jr.at("ratio").get<double>();
      if (jr.contains("chosen")) {
        for (const auto& [key, value] : jr.at("chosen").items()) {
          r.chosen.emplace_back(key, value.get<double>());
        }
      }
      d.learners.push_back(std::move(r));
    }
    report.datasets.push_back(std::move(d));
  }
  for (const auto& js : root.at("summary")) {
    LearnerSummary s;
    s.name = js.at("name").get<std::string>();
    if (!js.at("mean_ratio").is_null()) s.mean_ratio = js.at("mean_ratio").get<double>();
    s.defined_ratios = js.at("defined_ratios").get<int>();
    s.undefined_ratios = js.at("undefined_ratios").get<int>();
    report.summary.push_back(std::move(s));
  }
  for (const auto& js : root.at("skipped")) {
    report.skipped.push_back({js.at("path").get<std::string>(), js.at("reason").get<std::string>()});
  }
  return report;
}

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string sig3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string ratio_cell(const LearnerResult& r) {
  std::string ratio = r.ratio ? fixed2(*r.ratio) : "UNDEF";
  return ratio + " (" + sig3(r.error) + ")";
}

std::string chosen_text(const std::vector<std::pair<std::string, double>>& chosen) {
  std::ostringstream out;
  for (size_t i = 0; i < chosen.size(); ++i) {
    if (i) out << ";";
    out << chosen[i].first << "=" << chosen[i].second;
  }
  return out.str();
}

}  // namespace

std::string emit_markdown(const SuiteReport& report) {
  std::ostringstream out;
  std::vector<std::string> learner_names;
  for (const LearnerSummary& s : report.summary) learner_names.push_back(s.name);

  out << "# Benchmark report\n\n";
  out << "seed " << report.seed << ", split " << fixed2(report.split_fraction) << ", "
      << report.folds << "-fold tuning, grid `" << report.grid << "`\n\n";
  out << "| Name | No. of training/testing | No. features |";
  for (const auto& n : learner_names) out << " " << n << " ratio (error) |";
  out << " tuned |\n";
  out << "|---|---|---|";
  for (size_t i = 0; i < learner_names.size(); ++i) out << "---|";
  out << "---|\n";
  for (const DatasetReport& d : report.datasets) {
    out << "| " << d.name << " | " << d.train_size << "/" << d.test_size << " | "
        << d.num_features << " |";
    std::string tuned;
    for (const auto& name : learner_names) {
      auto it = std::find_if(d.learners.begin(), d.learners.end(),
                             [&](const LearnerResult& r) { return r.name == name; });
      if (it == d.learners.end()) {
        out << " - |";
      } else {
        out << " " << ratio_cell(*it) << " |";
        if (!it->chosen.empty()) {
          if (!tuned.empty()) tuned += " ";
          tuned += name + ": " + chosen_text(it->chosen);
        }
      }
    }
    out << " " << (tuned.empty() ? "-" : tuned) << " |\n";
  }
  out << "\n## Summary (mean errorC/errorNB)\n\n";
  out << "| Learner | Mean ratio | Datasets | Undefined |\n|---|---|---|---|\n";
  for (const LearnerSummary& s : report.summary) {
    out << "| " << s.name << " | " << (s.mean_ratio ? fixed2(*s.mean_ratio) : "N/A") << " | "
        << s.defined_ratios << " | " << s.undefined_ratios << " |\n";
  }
  if (!report.skipped.empty()) {
    out << "\n## Skipped\n\n";
    for (const SkippedFile& s : report.skipped) {
      out << "- `" << s.path << "`: " << s.reason << "\n";
    }
  }
  return out.str();
}

std::string emit_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "name,train_size,test_size,num_features,learner,spec,error,ratio,chosen\n";
  auto escape = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += "\"\"";
      else quoted.push_back(c);
    }
    return quoted + "\"";
  };
  for (const DatasetReport& d : report.datasets) {
    for (const LearnerResult& r : d.learners) {
      out << escape(d.name) << "," << d.train_size << "," << d.test_size << ","
          << d.num_features << "," << escape(r.name) << "," << escape(r.spec) << "," << r.error
          << ",";
      if (r.ratio) out << *r.ratio;
      out << "," << escape(chosen_text(r.chosen)) << "\n";
    }
  }
  return out.str();
}

std::string emit_report(const SuiteReport& report, const std::string& format) {
  if (format == "json") return emit_json(report);
  if (format == "markdown" || format == "md") return emit_markdown(report);
  if (format == "csv") return emit_csv(report);
  throw std::invalid_argument("unknown report format '" + format + "' (use json|markdown|csv)");
}

}  // namespace miniboost
