#include "miniboost.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "arff.hpp"
#include "bench.hpp"
#include "dataset.hpp"
#include "learner.hpp"
#include "tune.hpp"

using namespace miniboost;

extern "C" {

struct mb_dataset {
  Dataset rep;
};

struct mb_model {
  std::unique_ptr<Classifier> rep;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// runs fn, translating exceptions into status codes + the thread-local message
template <typename Fn>
mb_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    set_error(e.what());
    return MB_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return MB_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return MB_ERR_INVALID_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    set_error(e.what());
    return MB_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return MB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return MB_ERR_IO;
  }
}

mb_status require(bool ok, const char* message) {
  if (ok) return MB_OK;
  set_error(message);
  return MB_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* mb_status_name(mb_status status) {
  switch (status) {
    case MB_OK: return "ok";
    case MB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MB_ERR_PARSE: return "parse error";
    case MB_ERR_IO: return "io error";
    case MB_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* mb_last_error(void) { return g_last_error.c_str(); }

void mb_string_free(char* s) { std::free(s); }

mb_status mb_dataset_load(const char* path, int allow_missing_class, mb_dataset** out) {
  if (auto st = require(path && out, "path and out must not be NULL")) return st;
  return guarded([&] {
    auto ds = std::make_unique<mb_dataset>();
    ds->rep = load_dataset_file(path, allow_missing_class != 0);
    *out = ds.release();
    return MB_OK;
  });
}

mb_status mb_dataset_load_arff(const char* path, int allow_missing_class, mb_dataset** out) {
  if (auto st = require(path && out, "path and out must not be NULL")) return st;
  return guarded([&] {
    ArffOptions opts;
    opts.allow_missing_class = allow_missing_class != 0;
    auto ds = std::make_unique<mb_dataset>();
    ds->rep = parse_arff_file(path, opts);
    *out = ds.release();
    return MB_OK;
  });
}

mb_status mb_dataset_load_csv(const char* path, int has_header, int class_column,
                              int allow_missing_class, mb_dataset** out) {
  if (auto st = require(path && out, "path and out must not be NULL")) return st;
  return guarded([&] {
    CsvOptions opts;
    opts.header = has_header != 0;
    opts.class_column = class_column;
    opts.allow_missing_class = allow_missing_class != 0;
    auto ds = std::make_unique<mb_dataset>();
    ds->rep = parse_csv_file(path, opts);
    *out = ds.release();
    return MB_OK;
  });
}

void mb_dataset_free(mb_dataset* ds) { delete ds; }

size_t mb_dataset_size(const mb_dataset* ds) { return ds ? ds->rep.size() : 0; }

int mb_dataset_num_attributes(const mb_dataset* ds) {
  return ds ? ds->rep.num_attributes() : 0;
}

int mb_dataset_num_classes(const mb_dataset* ds) { return ds ? ds->rep.num_classes() : 0; }

int mb_dataset_class_index(const mb_dataset* ds) { return ds ? ds->rep.class_index() : -1; }

const char* mb_dataset_class_name(const mb_dataset* ds, int class_value) {
  if (!ds) return nullptr;
  const auto& values = ds->rep.schema().class_attribute().values;
  if (class_value < 0 || class_value >= static_cast<int>(values.size())) return nullptr;
  return values[class_value].c_str();
}

mb_status mb_dataset_split(const mb_dataset* ds, double train_fraction, uint64_t seed,
                           mb_dataset** train, mb_dataset** test) {
  if (auto st = require(ds && train && test, "dataset and outputs must not be NULL")) return st;
  return guarded([&] {
    auto [tr, te] = stratified_split(ds->rep, train_fraction, seed);
    auto train_out = std::make_unique<mb_dataset>();
    auto test_out = std::make_unique<mb_dataset>();
    train_out->rep = std::move(tr);
    test_out->rep = std::move(te);
    *train = train_out.release();
    *test = test_out.release();
    return MB_OK;
  });
}

mb_status mb_train(const char* learner_spec, const mb_dataset* train, uint64_t seed,
                   mb_model** out) {
  if (auto st = require(learner_spec && train && out, "spec, dataset and out must not be NULL")) {
    return st;
  }
  return guarded([&] {
    LearnerSpec spec = parse_learner_spec(learner_spec);
    auto model = std::make_unique<mb_model>();
    model->rep = train_learner(spec, train->rep, seed);
    *out = model.release();
    return MB_OK;
  });
}

void mb_model_free(mb_model* model) { delete model; }

mb_status mb_model_error(const mb_model* model, const mb_dataset* test, double* error_out) {
  if (auto st = require(model && test && error_out, "model, dataset and out must not be NULL")) {
    return st;
  }
  return guarded([&] {
    *error_out = evaluate_holdout(*model->rep, test->rep);
    return MB_OK;
  });
}

mb_status mb_model_predict(const mb_model* model, const mb_dataset* ds, int* labels_out) {
  if (auto st = require(model && ds && labels_out, "model, dataset and out must not be NULL")) {
    return st;
  }
  return guarded([&] {
    if (!model->rep->schema().compatible(ds->rep.schema())) {
      set_error("dataset schema does not match the model");
      return MB_ERR_INVALID_ARGUMENT;
    }
    for (size_t i = 0; i < ds->rep.size(); ++i) {
      labels_out[i] = model->rep->predict(ds->rep.instance(i));
    }
    return MB_OK;
  });
}

mb_status mb_model_distribution(const mb_model* model, const mb_dataset* ds, size_t row,
                                double* dist_out) {
  if (auto st = require(model && ds && dist_out, "model, dataset and out must not be NULL")) {
    return st;
  }
  if (auto st = require(row < ds->rep.size(), "row out of range")) return st;
  return guarded([&] {
    auto dist = model->rep->distribution(ds->rep.instance(row));
    std::memcpy(dist_out, dist.data(), dist.size() * sizeof(double));
    return MB_OK;
  });
}

mb_status mb_model_dump(const mb_model* model, char** text_out) {
  if (auto st = require(model && text_out, "model and out must not be NULL")) return st;
  return guarded([&] {
    *text_out = copy_string(model->rep->dump());
    if (!*text_out) {
      set_error("out of memory");
      return MB_ERR_INTERNAL;
    }
    return MB_OK;
  });
}

mb_status mb_tune(const char* base_spec, const char* grid, const mb_dataset* ds, int folds,
                  uint64_t seed, mb_model** model_out, char** result_json_out) {
  if (auto st = require(base_spec && grid && ds && result_json_out,
                        "spec, grid, dataset and out must not be NULL")) {
    return st;
  }
  return guarded([&] {
    LearnerSpec base = parse_learner_spec(base_spec);
    ParamGrid pg = parse_grid(grid);
    TuneResult result = grid_select(base, pg, ds->rep, folds, seed);

    nlohmann::ordered_json root;
    root["chosen"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : result.chosen) root["chosen"][name] = value;
    double best = 0.0;
    for (size_t i = 0; i < result.table.size(); ++i) {
      bool match = true;
      for (size_t ax = 0; ax < result.chosen.size(); ++ax) {
        if (result.table[i].values[ax] != result.chosen[ax].second) match = false;
      }
      if (match) best = result.table[i].cv_error;
    }
    root["cv_error"] = best;
    root["folds"] = result.folds_used;
    root["spec"] = format_learner_spec(result.tuned_spec);
    root["table"] = nlohmann::ordered_json::array();
    for (const GridPoint& point : result.table) {
      nlohmann::ordered_json jp;
      jp["point"] = nlohmann::ordered_json::object();
      for (size_t ax = 0; ax < pg.axes.size(); ++ax) {
        jp["point"][pg.axes[ax].name] = point.values[ax];
      }
      jp["cv_error"] = point.cv_error;
      root["table"].push_back(std::move(jp));
    }
    *result_json_out = copy_string(root.dump(2) + "\n");
    if (!*result_json_out) {
      set_error("out of memory");
      return MB_ERR_INTERNAL;
    }
    if (model_out) {
      auto model = std::make_unique<mb_model>();
      model->rep = train_learner(result.tuned_spec, ds->rep, seed);
      *model_out = model.release();
    }
    return MB_OK;
  });
}

mb_status mb_bench(const char* config_json, char** report_json_out) {
  if (auto st = require(config_json && report_json_out, "config and out must not be NULL")) {
    return st;
  }
  return guarded([&] {
    nlohmann::json cfg = nlohmann::json::parse(config_json);
    RunConfig config;
    // entries are single-file paths or {"train": ..., "test": ...} pairs
    for (const auto& entry : cfg.at("datasets")) {
      if (entry.is_string()) {
        config.dataset_paths.push_back(entry.get<std::string>());
      } else {
        config.pre_split.push_back(
            {entry.at("train").get<std::string>(), entry.at("test").get<std::string>()});
      }
    }
    if (cfg.contains("split")) config.split_fraction = cfg.at("split").get<double>();
    if (cfg.contains("seed")) config.seed = cfg.at("seed").get<uint64_t>();
    if (cfg.contains("folds")) config.folds = cfg.at("folds").get<int>();
    if (cfg.contains("jobs")) config.jobs = cfg.at("jobs").get<int>();
    if (cfg.contains("grid")) config.tune_grid = parse_grid(cfg.at("grid").get<std::string>());
    if (cfg.contains("learners")) {
      config.roster.clear();
      for (const auto& name : cfg.at("learners")) {
        config.roster.push_back(make_roster_entry(name.get<std::string>()));
      }
    }
    SuiteReport report = run_suite(config);
    *report_json_out = copy_string(emit_json(report));
    if (!*report_json_out) {
      set_error("out of memory");
      return MB_ERR_INTERNAL;
    }
    return MB_OK;
  });
}

mb_status mb_report_render(const char* report_json, const char* format, char** out) {
  if (auto st = require(report_json && format && out,
                        "report, format and out must not be NULL")) {
    return st;
  }
  return guarded([&] {
    SuiteReport report = report_from_json(report_json);
    *out = copy_string(emit_report(report, format));
    if (!*out) {
      set_error("out of memory");
      return MB_ERR_INTERNAL;
    }
    return MB_OK;
  });
}

}  // extern "C"
