#pragma once

#include <string>
#include <vector>

#include "dataset.hpp"
#include "learner.hpp"

namespace miniboost {

struct ParamGrid {
  struct Axis {
    std::string name;
    std::vector<double> values;
  };
  std::vector<Axis> axes;

  bool empty() const { return axes.empty(); }
  size_t point_count() const;
  void validate() const;
};

// "P=10:100:10,I=10:50:10" — start:stop:step inclusive, or a single value
ParamGrid parse_grid(const std::string& text);
std::string format_grid(const ParamGrid& grid);

// P in {10..100 by 10}, I in {10..50 by 10}
ParamGrid default_l5_grid();

struct GridPoint {
  std::vector<double> values;  // aligned with the grid axes
  double cv_error = 0.0;
};

struct TuneResult {
  std::vector<std::pair<std::string, double>> chosen;  // axis name -> value
  std::vector<GridPoint> table;                        // grid order
  int folds_used = 0;
  LearnerSpec tuned_spec;
};

// Stratified k-fold error: trains on k-1 folds, counts misclassified weight
// on the held-out fold, over all folds. k is reduced (with a warning on
// stderr) when the smallest class has fewer than k members.
double cv_error(const LearnerSpec& spec, const Dataset& ds, int k, uint64_t seed,
                int* folds_used = nullptr);

// Evaluates every grid point on one shared fold partition and picks the
// minimal cv_error; exact ties prefer smaller I, then larger P, then the
// earlier axis with the smaller value.
TuneResult grid_select(const LearnerSpec& base, const ParamGrid& grid, const Dataset& ds, int k,
                       uint64_t seed);

}  // namespace miniboost
