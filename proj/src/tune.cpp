#include "tune.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rng.hpp"

namespace miniboost {

size_t ParamGrid::point_count() const {
  size_t n = 1;
  for (const auto& axis : axes) n *= axis.values.size();
  return n;
}

void ParamGrid::validate() const {
  if (axes.empty()) throw std::invalid_argument("parameter grid is empty");
  std::set<std::string> names;
  for (const auto& axis : axes) {
    if (axis.values.empty()) {
      throw std::invalid_argument("grid axis '" + axis.name + "' has no values");
    }
    if (!names.insert(axis.name).second) {
      throw std::invalid_argument("grid axis '" + axis.name + "' appears twice");
    }
    std::set<double> vals(axis.values.begin(), axis.values.end());
    if (vals.size() != axis.values.size()) {
      throw std::invalid_argument("grid axis '" + axis.name + "' repeats a value");
    }
  }
}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_value(const std::string& text) {
  double out;
  const char* begin = text.c_str();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("invalid grid value '" + text + "'");
  }
  return out;
}

}  // namespace

ParamGrid parse_grid(const std::string& text) {
  ParamGrid grid;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("grid axis needs name=values, got '" + item + "'");
    }
    ParamGrid::Axis axis;
    axis.name = trim(item.substr(0, eq));
    std::string spec = trim(item.substr(eq + 1));
    auto colon1 = spec.find(':');
    if (colon1 == std::string::npos) {
      axis.values.push_back(parse_value(spec));
    } else {
      auto colon2 = spec.find(':', colon1 + 1);
      if (colon2 == std::string::npos) {
        throw std::invalid_argument("grid range needs start:stop:step, got '" + spec + "'");
      }
      double start = parse_value(trim(spec.substr(0, colon1)));
      double stop = parse_value(trim(spec.substr(colon1 + 1, colon2 - colon1 - 1)));
      double step = parse_value(trim(spec.substr(colon2 + 1)));
      if (step <= 0.0) throw std::invalid_argument("grid step must be positive");
      for (double v = start; v <= stop + 1e-9; v += step) axis.values.push_back(v);
    }
    grid.axes.push_back(std::move(axis));
  }
  grid.validate();
  return grid;
}

std::string format_grid(const ParamGrid& grid) {
  std::ostringstream out;
  for (size_t i = 0; i < grid.axes.size(); ++i) {
    if (i) out << ",";
    out << grid.axes[i].name << "=";
    for (size_t j = 0; j < grid.axes[i].values.size(); ++j) {
      if (j) out << "|";
      out << grid.axes[i].values[j];
    }
  }
  return out.str();
}

ParamGrid default_l5_grid() {
  ParamGrid grid;
  ParamGrid::Axis p{"P", {}};
  for (int v = 10; v <= 100; v += 10) p.values.push_back(v);
  ParamGrid::Axis i{"I", {}};
  for (int v = 10; v <= 50; v += 10) i.values.push_back(v);
  grid.axes = {std::move(p), std::move(i)};
  return grid;
}

namespace {

int effective_folds(const Dataset& ds, int k) {
  const int size = static_cast<int>(ds.size());
  // k >= |ds| is an explicit leave-one-out request; honor it as-is
  if (k >= size) return size;
  std::vector<size_t> class_counts(ds.num_classes(), 0);
  for (size_t i = 0; i < ds.size(); ++i) {
    int c = ds.class_of(i);
    if (c >= 0) ++class_counts[c];
  }
  size_t min_class = ds.size();
  for (size_t count : class_counts) {
    if (count > 0) min_class = std::min(min_class, count);
  }
  int k_eff = std::min<int>(k, std::max<int>(2, static_cast<int>(min_class)));
  return std::max(k_eff, 2);
}

double cv_error_on_folds(const LearnerSpec& spec, const Dataset& ds, const FoldPartition& fp,
                         uint64_t seed) {
  double mis = 0.0;
  const double total = total_weight(ds);
  for (int f = 0; f < fp.k; ++f) {
    Dataset train = fold_train_subset(ds, fp, f);
    Dataset test = fold_test_subset(ds, fp, f);
    if (test.empty() || train.empty()) continue;
    auto model = train_learner(spec, train, mix_seed(seed, static_cast<uint64_t>(f)));
    for (size_t i = 0; i < test.size(); ++i) {
      if (model->predict(test.instance(i)) != test.class_of(i)) mis += test.weight(i);
    }
  }
  return mis / total;
}

}  // namespace

double cv_error(const LearnerSpec& spec, const Dataset& ds, int k, uint64_t seed,
                int* folds_used) {
  if (ds.empty()) throw std::invalid_argument("cannot cross-validate an empty dataset");
  if (k < 2) throw std::invalid_argument("fold count must be at least 2");
  int k_eff = effective_folds(ds, k);
  if (k_eff < k) {
    std::cerr << "warning: reducing cross-validation folds from " << k << " to " << k_eff
              << " (smallest class is too small)\n";
  }
  if (folds_used) *folds_used = k_eff;
  FoldPartition fp = stratified_folds(ds, k_eff, seed);
  return cv_error_on_folds(spec, ds, fp, seed);
}

namespace {

// tie rule: smaller I, then larger P, then earlier axis with smaller value
bool tie_prefers(const ParamGrid& grid, const std::vector<double>& candidate,
                 const std::vector<double>& incumbent) {
  auto axis_value = [&](const std::string& name, const std::vector<double>& point,
                        double* out) {
    for (size_t i = 0; i < grid.axes.size(); ++i) {
      if (grid.axes[i].name == name) {
        *out = point[i];
        return true;
      }
    }
    return false;
  };
  double a, b;
  if (axis_value("I", candidate, &a) && axis_value("I", incumbent, &b) && a != b) {
    return a < b;
  }
  if (axis_value("P", candidate, &a) && axis_value("P", incumbent, &b) && a != b) {
    return a > b;
  }
  for (size_t i = 0; i < grid.axes.size(); ++i) {
    if (grid.axes[i].name == "I" || grid.axes[i].name == "P") continue;
    if (candidate[i] != incumbent[i]) return candidate[i] < incumbent[i];
  }
  return false;
}

}  // namespace

TuneResult grid_select(const LearnerSpec& base, const ParamGrid& grid, const Dataset& ds, int k,
                       uint64_t seed) {
  grid.validate();
  if (ds.empty()) throw std::invalid_argument("cannot tune on an empty dataset");

  int k_eff = effective_folds(ds, k);
  if (k_eff < k) {
    std::cerr << "warning: reducing cross-validation folds from " << k << " to " << k_eff
              << " (smallest class is too small)\n";
  }
  // one shared partition so grid points are comparable
  FoldPartition fp = stratified_folds(ds, k_eff, seed);

  TuneResult result;
  result.folds_used = k_eff;

  std::vector<size_t> cursor(grid.axes.size(), 0);
  const size_t points = grid.point_count();
  int best = -1;
  for (size_t n = 0; n < points; ++n) {
    GridPoint point;
    point.values.resize(grid.axes.size());
    LearnerSpec spec = base;
    for (size_t ax = 0; ax < grid.axes.size(); ++ax) {
      point.values[ax] = grid.axes[ax].values[cursor[ax]];
      apply_learner_param(spec, grid.axes[ax].name, point.values[ax]);
    }
    point.cv_error = cv_error_on_folds(spec, ds, fp, seed);
    result.table.push_back(point);

    if (best < 0 || point.cv_error < result.table[best].cv_error ||
        (point.cv_error == result.table[best].cv_error &&
         tie_prefers(grid, point.values, result.table[best].values))) {
      best = static_cast<int>(n);
    }

    // row-major advance
    for (size_t ax = grid.axes.size(); ax-- > 0;) {
      if (++cursor[ax] < grid.axes[ax].values.size()) break;
      cursor[ax] = 0;
    }
  }

  const GridPoint& winner = result.table[best];
  result.tuned_spec = base;
  for (size_t ax = 0; ax < grid.axes.size(); ++ax) {
    result.chosen.emplace_back(grid.axes[ax].name, winner.values[ax]);
    apply_learner_param(result.tuned_spec, grid.axes[ax].name, winner.values[ax]);
  }
  return result;
}

}  // namespace miniboost
