#pragma once

#include <memory>
#include <variant>

#include "classifier.hpp"
#include "dataset.hpp"

namespace miniboost {

// Laplace-smoothed per-class value counts; probabilities per class sum to 1.
struct NominalEstimator {
  std::vector<std::vector<double>> counts;  // [class][value], raw + 1
  std::vector<double> denom;                // [class], known weight + #values

  double probability(int cls, int value) const { return counts[cls][value] / denom[cls]; }
};

struct GaussianEstimator {
  std::vector<double> mean;    // per class
  std::vector<double> stddev;  // per class, floored at 1e-6
  bool any_known = false;      // false = the attribute never had a value; skip it

  double log_density(int cls, double x) const;
};

class NaiveBayesModel final : public Classifier {
 public:
  using Estimator = std::variant<std::monostate, NominalEstimator, GaussianEstimator>;

  NaiveBayesModel(std::shared_ptr<const Schema> schema, std::vector<double> priors,
                  std::vector<Estimator> estimators);

  std::vector<double> distribution(const Instance& x) const override;
  std::string dump() const override;

  const std::vector<double>& priors() const { return priors_; }
  const Estimator& estimator(int attribute) const { return estimators_[attribute]; }
  const Schema& schema() const override { return *schema_; }

 private:
  std::shared_ptr<const Schema> schema_;
  std::vector<double> priors_;
  std::vector<Estimator> estimators_;  // class slot holds monostate
};

// Priors and nominal conditionals are Laplace smoothed (+1); numeric
// attributes get one Gaussian per class with the stddev floored at 1e-6;
// MISSING cells are skipped per attribute.
NaiveBayesModel train_nb(const Dataset& ds);

std::vector<double> predict_nb(const NaiveBayesModel& model, const Instance& x);

}  // namespace miniboost
