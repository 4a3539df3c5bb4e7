#include "naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace miniboost {

namespace {

constexpr double kStddevFloor = 1e-6;

struct Moments {
  double weight = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

Moments weighted_moments(const std::vector<std::pair<double, double>>& value_weight) {
  Moments m;
  for (auto [v, w] : value_weight) m.weight += w;
  if (m.weight <= 0.0) return m;
  for (auto [v, w] : value_weight) m.mean += v * w;
  m.mean /= m.weight;
  for (auto [v, w] : value_weight) m.variance += w * (v - m.mean) * (v - m.mean);
  m.variance /= m.weight;
  return m;
}

}  // namespace

double GaussianEstimator::log_density(int cls, double x) const {
  double s = stddev[cls];
  double z = (x - mean[cls]) / s;
  return -0.5 * z * z - std::log(s) - 0.5 * std::log(2.0 * std::numbers::pi);
}

NaiveBayesModel::NaiveBayesModel(std::shared_ptr<const Schema> schema,
                                 std::vector<double> priors, std::vector<Estimator> estimators)
    : schema_(std::move(schema)),
      priors_(std::move(priors)),
      estimators_(std::move(estimators)) {}

NaiveBayesModel train_nb(const Dataset& ds) {
  if (ds.empty()) throw std::invalid_argument("cannot train on an empty dataset");
  const Schema& schema = ds.schema();
  const int K = ds.num_classes();

  std::vector<double> class_w(K, 0.0);
  double total_w = 0.0;
  for (size_t i = 0; i < ds.size(); ++i) {
    int c = ds.class_of(i);
    if (c < 0) throw std::invalid_argument("training instance with missing class");
    class_w[c] += ds.weight(i);
    total_w += ds.weight(i);
  }
  std::vector<double> priors(K);
  for (int c = 0; c < K; ++c) priors[c] = (class_w[c] + 1.0) / (total_w + K);

  std::vector<NaiveBayesModel::Estimator> estimators(schema.num_attributes());
  for (int a = 0; a < schema.num_attributes(); ++a) {
    if (a == schema.class_index) continue;
    const Attribute& attr = schema.attributes[a];
    if (!attr.numeric()) {
      const int V = static_cast<int>(attr.values.size());
      NominalEstimator est;
      est.counts.assign(K, std::vector<double>(V, 1.0));
      est.denom.assign(K, static_cast<double>(V));
      for (size_t i = 0; i < ds.size(); ++i) {
        double v = ds.value(i, a);
        if (is_missing(v)) continue;
        int c = ds.class_of(i);
        est.counts[c][static_cast<int>(v)] += ds.weight(i);
        est.denom[c] += ds.weight(i);
      }
      estimators[a] = std::move(est);
    } else {
      GaussianEstimator est;
      est.mean.assign(K, 0.0);
      est.stddev.assign(K, kStddevFloor);
      std::vector<std::vector<std::pair<double, double>>> per_class(K);
      std::vector<std::pair<double, double>> pooled;
      for (size_t i = 0; i < ds.size(); ++i) {
        double v = ds.value(i, a);
        if (is_missing(v)) continue;
        per_class[ds.class_of(i)].emplace_back(v, ds.weight(i));
        pooled.emplace_back(v, ds.weight(i));
      }
      Moments global = weighted_moments(pooled);
      est.any_known = global.weight > 0.0;
      for (int c = 0; c < K; ++c) {
        // a class that never saw this attribute falls back to the pooled fit
        Moments m = per_class[c].empty() ? global : weighted_moments(per_class[c]);
        est.mean[c] = m.mean;
        est.stddev[c] = std::max(std::sqrt(m.variance), kStddevFloor);
      }
      estimators[a] = std::move(est);
    }
  }
  return NaiveBayesModel(ds.schema_ptr(), std::move(priors), std::move(estimators));
}

std::vector<double> NaiveBayesModel::distribution(const Instance& x) const {
  if (static_cast<int>(x.values.size()) != schema_->num_attributes()) {
    throw std::invalid_argument("instance does not conform to the model schema");
  }
  const int K = schema_->num_classes();
  std::vector<double> log_score(K);
  for (int c = 0; c < K; ++c) log_score[c] = std::log(priors_[c]);
  for (int a = 0; a < schema_->num_attributes(); ++a) {
    if (a == schema_->class_index) continue;
    double v = x.values[a];
    if (is_missing(v)) continue;
    if (const auto* nom = std::get_if<NominalEstimator>(&estimators_[a])) {
      int idx = static_cast<int>(v);
      if (idx < 0 || idx >= static_cast<int>(nom->counts[0].size())) {
        throw std::invalid_argument("instance does not conform to the model schema");
      }
      for (int c = 0; c < K; ++c) log_score[c] += std::log(nom->probability(c, idx));
    } else if (const auto* gauss = std::get_if<GaussianEstimator>(&estimators_[a])) {
      if (!gauss->any_known) continue;
      for (int c = 0; c < K; ++c) log_score[c] += gauss->log_density(c, v);
    }
  }
  double top = *std::max_element(log_score.begin(), log_score.end());
  std::vector<double> posterior(K);
  double total = 0.0;
  for (int c = 0; c < K; ++c) {
    posterior[c] = std::exp(log_score[c] - top);
    total += posterior[c];
  }
  for (double& p : posterior) p /= total;
  return posterior;
}

std::string NaiveBayesModel::dump() const {
  std::ostringstream out;
  out << "naive bayes (" << schema_->num_classes() << " classes)\n";
  out << "priors:";
  for (int c = 0; c < schema_->num_classes(); ++c) {
    out << " " << schema_->class_attribute().values[c] << "=" << priors_[c];
  }
  out << "\n";
  for (int a = 0; a < schema_->num_attributes(); ++a) {
    if (a == schema_->class_index) continue;
    const Attribute& attr = schema_->attributes[a];
    out << attr.name << ": ";
    if (const auto* nom = std::get_if<NominalEstimator>(&estimators_[a])) {
      out << "nominal\n";
      for (int c = 0; c < schema_->num_classes(); ++c) {
        out << "  " << schema_->class_attribute().values[c] << ":";
        for (size_t v = 0; v < attr.values.size(); ++v) {
          out << " " << attr.values[v] << "=" << nom->probability(c, static_cast<int>(v));
        }
        out << "\n";
      }
    } else if (const auto* gauss = std::get_if<GaussianEstimator>(&estimators_[a])) {
      out << "gaussian\n";
      for (int c = 0; c < schema_->num_classes(); ++c) {
        out << "  " << schema_->class_attribute().values[c] << ": mean=" << gauss->mean[c]
            << " stddev=" << gauss->stddev[c] << "\n";
      }
    }
  }
  return out.str();
}

std::vector<double> predict_nb(const NaiveBayesModel& model, const Instance& x) {
  return model.distribution(x);
}

}  // namespace miniboost
