#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "miniboost.h"

namespace {

const std::string kFixtureDir = MB_TEST_FIXTURE_DIR;

std::string weather_path() { return kFixtureDir + "/arff/weather_numeric.arff"; }

std::string write_temp(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "miniboost_capi_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_CASE("dataset handles load and describe files") {
  mb_dataset* ds = nullptr;
  REQUIRE(mb_dataset_load(weather_path().c_str(), 0, &ds) == MB_OK);
  CHECK(mb_dataset_size(ds) == 14);
  CHECK(mb_dataset_num_attributes(ds) == 5);
  CHECK(mb_dataset_num_classes(ds) == 2);
  CHECK(mb_dataset_class_index(ds) == 4);
  CHECK(std::string(mb_dataset_class_name(ds, 0)) == "yes");
  CHECK(std::string(mb_dataset_class_name(ds, 1)) == "no");
  CHECK(mb_dataset_class_name(ds, 7) == nullptr);
  mb_dataset_free(ds);
}

TEST_CASE("load failures set a status and a message") {
  mb_dataset* ds = nullptr;
  CHECK(mb_dataset_load("/nonexistent/x.arff", 0, &ds) == MB_ERR_IO);
  CHECK(std::strlen(mb_last_error()) > 0);

  std::string bad = write_temp("bad.arff", "@relation r\n@attribute a {x\n@data\n");
  CHECK(mb_dataset_load(bad.c_str(), 0, &ds) == MB_ERR_PARSE);
  CHECK(std::string(mb_last_error()).find("line") != std::string::npos);

  CHECK(mb_dataset_load(nullptr, 0, &ds) == MB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("training, evaluating and dumping through the C surface") {
  mb_dataset* ds = nullptr;
  REQUIRE(mb_dataset_load(weather_path().c_str(), 0, &ds) == MB_OK);

  mb_model* model = nullptr;
  REQUIRE(mb_train("j48(C=0.25, M=2)", ds, 0, &model) == MB_OK);
  double err = -1;
  CHECK(mb_model_error(model, ds, &err) == MB_OK);
  CHECK(err == 0.0);

  char* text = nullptr;
  REQUIRE(mb_model_dump(model, &text) == MB_OK);
  CHECK(std::string(text).find("outlook") != std::string::npos);
  mb_string_free(text);

  std::vector<int> labels(mb_dataset_size(ds));
  CHECK(mb_model_predict(model, ds, labels.data()) == MB_OK);
  std::vector<double> dist(mb_dataset_num_classes(ds));
  CHECK(mb_model_distribution(model, ds, 0, dist.data()) == MB_OK);
  CHECK(dist[labels[0]] >= 0.5);
  CHECK(mb_model_distribution(model, ds, 999, dist.data()) == MB_ERR_INVALID_ARGUMENT);

  mb_model_free(model);

  CHECK(mb_train("madeup(learner)", ds, 0, &model) == MB_ERR_INVALID_ARGUMENT);
  CHECK(std::string(mb_last_error()).find("unknown learner") != std::string::npos);
  mb_dataset_free(ds);
}

TEST_CASE("split and boost through the C surface") {
  mb_dataset* ds = nullptr;
  REQUIRE(mb_dataset_load(weather_path().c_str(), 0, &ds) == MB_OK);
  mb_dataset* train = nullptr;
  mb_dataset* test = nullptr;
  REQUIRE(mb_dataset_split(ds, 0.67, 3, &train, &test) == MB_OK);
  CHECK(mb_dataset_size(train) + mb_dataset_size(test) == mb_dataset_size(ds));

  mb_model* model = nullptr;
  REQUIRE(mb_train("adaboost(base=j48, I=5, Q=on)", train, 11, &model) == MB_OK);
  double err = -1;
  CHECK(mb_model_error(model, test, &err) == MB_OK);
  CHECK(err >= 0.0);
  CHECK(err <= 1.0);
  mb_model_free(model);
  mb_dataset_free(train);
  mb_dataset_free(test);
  mb_dataset_free(ds);
}

TEST_CASE("schema mismatches are rejected at the boundary") {
  mb_dataset* weather = nullptr;
  REQUIRE(mb_dataset_load(weather_path().c_str(), 0, &weather) == MB_OK);
  std::string other = write_temp(
      "other.arff", "@relation o\n@attribute a {x,y}\n@attribute class {p,q}\n@data\nx,p\ny,q\n");
  mb_dataset* mismatched = nullptr;
  REQUIRE(mb_dataset_load(other.c_str(), 0, &mismatched) == MB_OK);

  mb_model* model = nullptr;
  REQUIRE(mb_train("nb", weather, 0, &model) == MB_OK);
  double err = 0;
  CHECK(mb_model_error(model, mismatched, &err) == MB_ERR_INVALID_ARGUMENT);
  std::vector<int> labels(mb_dataset_size(mismatched));
  CHECK(mb_model_predict(model, mismatched, labels.data()) == MB_ERR_INVALID_ARGUMENT);
  CHECK(std::string(mb_last_error()).find("schema") != std::string::npos);

  mb_model_free(model);
  mb_dataset_free(mismatched);
  mb_dataset_free(weather);
}

TEST_CASE("csv loading with an explicit class column") {
  std::string csv = write_temp("t.csv", "label,a,b\nyes,1.0,2.0\nno,2.0,1.0\nyes,1.5,1.5\n");
  mb_dataset* ds = nullptr;
  REQUIRE(mb_dataset_load_csv(csv.c_str(), 1, 0, 0, &ds) == MB_OK);
  CHECK(mb_dataset_size(ds) == 3);
  CHECK(mb_dataset_class_index(ds) == 0);
  mb_dataset_free(ds);
}

TEST_CASE("tune returns chosen parameters and a retrained model") {
  mb_dataset* ds = nullptr;
  REQUIRE(mb_dataset_load(weather_path().c_str(), 0, &ds) == MB_OK);
  mb_model* model = nullptr;
  char* json = nullptr;
  REQUIRE(mb_tune("adaboost(base=stump)", "P=50:100:50,I=2:4:2", ds, 3, 5, &model, &json) ==
          MB_OK);
  std::string text = json;
  CHECK(text.find("\"chosen\"") != std::string::npos);
  CHECK(text.find("\"table\"") != std::string::npos);
  CHECK(text.find("\"P\"") != std::string::npos);
  mb_string_free(json);
  REQUIRE(model != nullptr);
  double err = -1;
  CHECK(mb_model_error(model, ds, &err) == MB_OK);
  mb_model_free(model);
  mb_dataset_free(ds);
}

TEST_CASE("bench runs a suite from a json config and renders formats") {
  std::string config = std::string("{\"datasets\": [\"") + weather_path() +
                       "\"], \"seed\": 3, \"folds\": 2, "
                       "\"grid\": \"P=100,I=2:4:2\", \"learners\": [\"lb\",\"l5\",\"nb\"]}";
  char* report = nullptr;
  REQUIRE(mb_bench(config.c_str(), &report) == MB_OK);
  std::string json = report;
  CHECK(json.find("\"datasets\"") != std::string::npos);
  CHECK(json.find("weather") != std::string::npos);

  char* md = nullptr;
  REQUIRE(mb_report_render(report, "markdown", &md) == MB_OK);
  CHECK(std::string(md).find("| Name |") != std::string::npos);
  mb_string_free(md);

  char* csv = nullptr;
  REQUIRE(mb_report_render(report, "csv", &csv) == MB_OK);
  CHECK(std::string(csv).find("name,") == 0);
  mb_string_free(csv);

  CHECK(mb_report_render(report, "yaml", &csv) == MB_ERR_INVALID_ARGUMENT);
  mb_string_free(report);

  CHECK(mb_bench("{not json", &report) == MB_ERR_PARSE);
}

TEST_CASE("status names are stable strings") {
  CHECK(std::string(mb_status_name(MB_OK)) == "ok");
  CHECK(std::string(mb_status_name(MB_ERR_PARSE)) == "parse error");
}
