#pragma once

#include <memory>

#include "classifier.hpp"
#include "dataset.hpp"
#include "tree.hpp"

namespace miniboost {

struct WeakLearner {
  bool stump = true;  // false = C4.5 tree with the params below
  TreeParams tree;
};

struct BoostParams {
  int iterations = 10;         // I
  int weight_threshold = 100;  // P: percentage of weight mass kept for base training
  bool resample = false;       // Q
  uint64_t seed = 0;
  WeakLearner base;

  void validate() const;
};

struct BoostRound {
  std::shared_ptr<const Classifier> model;
  double epsilon = 0.0;  // weighted error on the full training distribution
  double beta = 0.0;     // epsilon / (1 - epsilon), floored at 1e-10
  double vote = 0.0;     // log(1 / beta)
};

enum class StopReason { Completed, PerfectFit, ErrorTooHigh };

class BoostEnsemble final : public Classifier {
 public:
  BoostEnsemble(std::shared_ptr<const Schema> schema, std::vector<BoostRound> rounds,
                StopReason stop, double training_error, double error_bound);

  std::vector<double> distribution(const Instance& x) const override;
  std::string dump() const override;

  const std::vector<BoostRound>& rounds() const { return rounds_; }
  StopReason stop_reason() const { return stop_; }
  // weighted vote training error on the input distribution
  double training_error() const { return training_error_; }
  // product of 2*sqrt(eps_t * (1 - eps_t)) over the recorded rounds
  double error_bound() const { return error_bound_; }
  const Schema& schema() const override { return *schema_; }

 private:
  std::shared_ptr<const Schema> schema_;
  std::vector<BoostRound> rounds_;
  StopReason stop_;
  double training_error_;
  double error_bound_;
};

// misclassified weight / total weight under argmax predictions
double weighted_error(const Classifier& model, const Dataset& ds);

// Multiplies correctly classified weights by beta = eps/(1-eps) and
// renormalizes to total weight 1. Requires eps in (0, 0.5).
Dataset reweight(const Dataset& ds, const Classifier& model, double epsilon);

// Minimal prefix of the weight-descending order (ties by original index)
// whose cumulative weight reaches P percent of the total. P = 100 keeps all.
Dataset trim_by_weight_mass(const Dataset& ds, int weight_threshold);

// n draws with replacement, instance i with probability weight_i / total;
// every sampled instance gets weight 1/n
Dataset weighted_resample(const Dataset& ds, size_t n, uint64_t seed);

BoostEnsemble boost_train(const Dataset& ds, const BoostParams& params);

}  // namespace miniboost
