#include "adaboost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rng.hpp"

namespace miniboost {

namespace {

constexpr double kBetaFloor = 1e-10;
constexpr double kEpsilonCap = 0.5 - 1e-9;
constexpr double kMassEps = 1e-9;
constexpr int kResampleRetries = 10;

std::vector<int> predictions(const Classifier& model, const Dataset& ds) {
  std::vector<int> preds(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) preds[i] = model.predict(ds.instance(i));
  return preds;
}

double error_from_predictions(const Dataset& ds, const std::vector<int>& preds) {
  double mis = 0.0, total = 0.0;
  for (size_t i = 0; i < ds.size(); ++i) {
    int c = ds.class_of(i);
    if (c < 0) throw std::invalid_argument("instance with missing class in error computation");
    total += ds.weight(i);
    if (preds[i] != c) mis += ds.weight(i);
  }
  if (total <= 0.0) throw std::invalid_argument("error of an empty dataset");
  return mis / total;
}

Dataset reweight_from_predictions(const Dataset& ds, const std::vector<int>& preds,
                                  double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("reweight needs epsilon in (0, 0.5)");
  }
  const double beta = epsilon / (1.0 - epsilon);
  std::vector<double> w(ds.size());
  double total = 0.0;
  for (size_t i = 0; i < ds.size(); ++i) {
    w[i] = ds.weight(i) * (preds[i] == ds.class_of(i) ? beta : 1.0);
    total += w[i];
  }
  for (double& x : w) x /= total;
  return ds.with_weights(std::move(w));
}

Dataset normalized(const Dataset& ds) {
  double total = total_weight(ds);
  if (total <= 0.0) throw std::invalid_argument("dataset has no weight");
  std::vector<double> w(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) w[i] = ds.weight(i) / total;
  return ds.with_weights(std::move(w));
}

// base learners see weights on the instance-count scale so that the tree's
// min-instances parameter keeps its meaning under boosted distributions
Dataset count_scaled(const Dataset& ds) {
  double total = total_weight(ds);
  std::vector<double> w(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) {
    w[i] = ds.weight(i) / total * static_cast<double>(ds.size());
  }
  return ds.with_weights(std::move(w));
}

std::shared_ptr<const Classifier> train_base(const Dataset& ds, const WeakLearner& base,
                                             uint64_t seed) {
  if (base.stump) {
    return std::make_shared<DecisionTreeModel>(train_stump(ds));
  }
  TreeParams params = base.tree;
  params.seed = seed;
  return std::make_shared<DecisionTreeModel>(train_tree(ds, params));
}

}  // namespace

void BoostParams::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (weight_threshold < 1 || weight_threshold > 100) {
    throw std::invalid_argument("weight threshold must be in [1, 100]");
  }
  base.tree.validate();
}

BoostEnsemble::BoostEnsemble(std::shared_ptr<const Schema> schema, std::vector<BoostRound> rounds,
                             StopReason stop, double training_error, double error_bound)
    : schema_(std::move(schema)),
      rounds_(std::move(rounds)),
      stop_(stop),
      training_error_(training_error),
      error_bound_(error_bound) {}

std::vector<double> BoostEnsemble::distribution(const Instance& x) const {
  if (rounds_.empty()) throw std::logic_error("empty ensemble");
  std::vector<double> scores(schema_->num_classes(), 0.0);
  for (const BoostRound& round : rounds_) {
    scores[round.model->predict(x)] += round.vote;
  }
  double total = std::accumulate(scores.begin(), scores.end(), 0.0);
  if (total <= 0.0) throw std::logic_error("ensemble has no vote mass");
  for (double& s : scores) s /= total;
  return scores;
}

std::string BoostEnsemble::dump() const {
  std::ostringstream out;
  out << "adaboost ensemble, " << rounds_.size() << " round(s), stop=";
  switch (stop_) {
    case StopReason::Completed: out << "completed"; break;
    case StopReason::PerfectFit: out << "perfect_fit"; break;
    case StopReason::ErrorTooHigh: out << "error_too_high"; break;
  }
  out << "\n";
  for (size_t t = 0; t < rounds_.size(); ++t) {
    out << "--- round " << (t + 1) << ": epsilon=" << rounds_[t].epsilon
        << " vote=" << rounds_[t].vote << "\n";
    out << rounds_[t].model->dump();
  }
  return out.str();
}

double weighted_error(const Classifier& model, const Dataset& ds) {
  if (ds.empty()) throw std::invalid_argument("error of an empty dataset");
  return error_from_predictions(ds, predictions(model, ds));
}

Dataset reweight(const Dataset& ds, const Classifier& model, double epsilon) {
  return reweight_from_predictions(ds, predictions(model, ds), epsilon);
}

Dataset trim_by_weight_mass(const Dataset& ds, int weight_threshold) {
  if (weight_threshold < 1 || weight_threshold > 100) {
    throw std::invalid_argument("weight threshold must be in [1, 100]");
  }
  if (weight_threshold == 100 || ds.empty()) return ds;
  std::vector<int> order(ds.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ds.weight(a) != ds.weight(b)) return ds.weight(a) > ds.weight(b);
    return a < b;
  });
  const double target = total_weight(ds) * weight_threshold / 100.0;
  double cum = 0.0;
  size_t kept = 0;
  while (kept < order.size() && cum + kMassEps < target) {
    cum += ds.weight(order[kept]);
    ++kept;
  }
  order.resize(kept);
  std::sort(order.begin(), order.end());
  return ds.select(order);
}

Dataset weighted_resample(const Dataset& ds, size_t n, uint64_t seed) {
  if (ds.empty()) throw std::invalid_argument("cannot resample an empty dataset");
  if (n < 1) throw std::invalid_argument("sample size must be at least 1");
  std::vector<double> cumulative(ds.size());
  double total = 0.0;
  for (size_t i = 0; i < ds.size(); ++i) {
    total += ds.weight(i);
    cumulative[i] = total;
  }
  Rng rng(seed);
  std::vector<int> picks(n);
  for (size_t j = 0; j < n; ++j) {
    double u = rng.unit() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    picks[j] = static_cast<int>(it - cumulative.begin());
  }
  return ds.resample(picks, 1.0 / static_cast<double>(n));
}

BoostEnsemble boost_train(const Dataset& ds, const BoostParams& params) {
  params.validate();
  if (ds.empty()) throw std::invalid_argument("cannot train on an empty dataset");

  Dataset working = normalized(ds);
  std::vector<BoostRound> rounds;
  StopReason stop = StopReason::Completed;

  for (int t = 0; t < params.iterations; ++t) {
    Dataset trimmed = trim_by_weight_mass(working, params.weight_threshold);

    std::shared_ptr<const Classifier> model;
    double epsilon = 0.0;
    std::vector<int> preds;
    int attempts = params.resample ? 1 + kResampleRetries : 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
      uint64_t round_seed = mix_seed(params.seed, (uint64_t(t) << 8) | uint64_t(attempt));
      Dataset base_data = params.resample
                              ? weighted_resample(normalized(trimmed), trimmed.size(), round_seed)
                              : trimmed;
      model = train_base(count_scaled(base_data), params.base, round_seed);
      // epsilon always comes from the full weighted training set
      preds = predictions(*model, working);
      epsilon = error_from_predictions(working, preds);
      if (epsilon < 0.5) break;
    }

    if (epsilon >= 0.5) {
      if (rounds.empty()) {
        // nothing better than chance: fall back to one majority-class round
        // with epsilon clamped just below 1/2 so the vote stays positive
        auto majority = std::make_shared<DecisionTreeModel>(train_majority_leaf(working));
        double maj_eps = std::min(weighted_error(*majority, working), kEpsilonCap);
        maj_eps = std::max(maj_eps, kBetaFloor);
        double beta = std::max(maj_eps / (1.0 - maj_eps), kBetaFloor);
        rounds.push_back({majority, maj_eps, beta, std::log(1.0 / beta)});
      }
      stop = StopReason::ErrorTooHigh;
      break;
    }

    double beta = epsilon > 0.0 ? epsilon / (1.0 - epsilon) : kBetaFloor;
    beta = std::max(beta, kBetaFloor);
    rounds.push_back({model, epsilon, beta, std::log(1.0 / beta)});

    if (epsilon == 0.0) {
      stop = StopReason::PerfectFit;
      break;
    }
    working = reweight_from_predictions(working, preds, epsilon);

    // reweight algebra: total mass 1, misclassified mass 1/2
    double total = 0.0, mis = 0.0;
    for (size_t i = 0; i < working.size(); ++i) {
      total += working.weight(i);
      if (preds[i] != working.class_of(i)) mis += working.weight(i);
    }
    if (std::abs(total - 1.0) > kMassEps || std::abs(mis - 0.5) > kMassEps) {
      throw std::logic_error("reweight invariant violated");
    }
  }

  if (rounds.empty()) throw std::logic_error("boosting produced no rounds");

  double bound = 1.0;
  for (const BoostRound& r : rounds) {
    bound *= 2.0 * std::sqrt(r.epsilon * (1.0 - r.epsilon));
  }

  // weighted-vote training error on the input distribution
  Dataset original = normalized(ds);
  std::vector<std::vector<int>> round_preds;
  round_preds.reserve(rounds.size());
  for (const BoostRound& r : rounds) round_preds.push_back(predictions(*r.model, original));
  double train_err = 0.0;
  std::vector<double> scores(ds.num_classes());
  for (size_t i = 0; i < original.size(); ++i) {
    std::fill(scores.begin(), scores.end(), 0.0);
    for (size_t t = 0; t < rounds.size(); ++t) {
      scores[round_preds[t][i]] += rounds[t].vote;
    }
    if (argmax_index(scores) != original.class_of(i)) train_err += original.weight(i);
  }
  if (train_err > bound + kMassEps) {
    throw std::logic_error("boosting training-error bound violated");
  }
  return BoostEnsemble(ds.schema_ptr(), std::move(rounds), stop, train_err, bound);
}

}  // namespace miniboost
