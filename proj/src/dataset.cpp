#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "rng.hpp"

namespace miniboost {

int Attribute::value_index(std::string_view v) const {
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] == v) return static_cast<int>(i);
  }
  return -1;
}

void Schema::validate() const {
  if (attributes.empty()) throw std::invalid_argument("schema has no attributes");
  std::set<std::string> names;
  for (const auto& a : attributes) {
    if (!names.insert(a.name).second) {
      throw std::invalid_argument("duplicate attribute name '" + a.name + "'");
    }
    if (a.kind == AttrKind::Nominal) {
      if (a.values.empty()) {
        throw std::invalid_argument("nominal attribute '" + a.name + "' has no values");
      }
      std::set<std::string> vals(a.values.begin(), a.values.end());
      if (vals.size() != a.values.size()) {
        throw std::invalid_argument("nominal attribute '" + a.name + "' has duplicate values");
      }
    }
  }
  if (class_index < 0 || class_index >= num_attributes()) {
    throw std::invalid_argument("class index out of range");
  }
  if (class_attribute().numeric()) {
    throw std::invalid_argument("class attribute '" + class_attribute().name +
                                "' must be nominal");
  }
}

bool Schema::compatible(const Schema& other) const {
  if (class_index != other.class_index) return false;
  if (attributes.size() != other.attributes.size()) return false;
  for (size_t i = 0; i < attributes.size(); ++i) {
    const auto& a = attributes[i];
    const auto& b = other.attributes[i];
    if (a.name != b.name || a.kind != b.kind || a.values != b.values) return false;
  }
  return true;
}

Dataset::Dataset(Schema schema) : Dataset(std::make_shared<const Schema>(std::move(schema))) {}

Dataset::Dataset(std::shared_ptr<const Schema> schema)
    : schema_(std::move(schema)), pool_(std::make_shared<std::vector<Instance>>()) {
  schema_->validate();
}

void Dataset::add(Instance inst) {
  if (!pool_) throw std::logic_error("dataset has no schema");
  if (pool_.use_count() > 1) {
    throw std::logic_error("dataset storage is shared; datasets are immutable once copied");
  }
  if (static_cast<int>(inst.values.size()) != schema_->num_attributes()) {
    throw std::invalid_argument("instance has wrong number of values");
  }
  if (!std::isfinite(inst.weight) || inst.weight <= 0.0) {
    throw std::invalid_argument("instance weight must be finite and positive");
  }
  for (int a = 0; a < schema_->num_attributes(); ++a) {
    double v = inst.values[a];
    if (is_missing(v)) continue;
    const Attribute& attr = schema_->attributes[a];
    if (attr.numeric()) {
      if (!std::isfinite(v)) throw std::invalid_argument("numeric cell must be finite");
    } else {
      int idx = static_cast<int>(v);
      if (idx < 0 || idx >= static_cast<int>(attr.values.size()) || v != idx) {
        throw std::invalid_argument("nominal cell index out of range for attribute '" +
                                    attr.name + "'");
      }
    }
  }
  weights_.push_back(inst.weight);
  index_.push_back(static_cast<int>(pool_->size()));
  pool_->push_back(std::move(inst));
}

int Dataset::class_of(size_t i) const {
  double v = value(i, class_index());
  return is_missing(v) ? -1 : static_cast<int>(v);
}

Dataset Dataset::with_weights(std::vector<double> weights) const {
  if (weights.size() != size()) throw std::invalid_argument("weight vector size mismatch");
  for (double w : weights) {
    if (!std::isfinite(w) || w <= 0.0) {
      throw std::invalid_argument("weights must be finite and positive");
    }
  }
  Dataset out = *this;
  out.weights_ = std::move(weights);
  return out;
}

Dataset Dataset::select(const std::vector<int>& entries) const {
  Dataset out;
  out.schema_ = schema_;
  out.pool_ = pool_;
  out.index_.reserve(entries.size());
  out.weights_.reserve(entries.size());
  for (int e : entries) {
    if (e < 0 || static_cast<size_t>(e) >= size()) {
      throw std::out_of_range("select: entry out of range");
    }
    out.index_.push_back(index_[e]);
    out.weights_.push_back(weights_[e]);
  }
  return out;
}

Dataset Dataset::resample(const std::vector<int>& entries, double each_weight) const {
  Dataset out = select(entries);
  std::fill(out.weights_.begin(), out.weights_.end(), each_weight);
  return out;
}

double total_weight(const Dataset& ds) {
  double sum = 0.0;
  for (size_t i = 0; i < ds.size(); ++i) sum += ds.weight(i);
  return sum;
}

namespace {

// entries of ds grouped by class value, in original order
std::vector<std::vector<int>> entries_by_class(const Dataset& ds) {
  std::vector<std::vector<int>> by_class(ds.num_classes());
  for (size_t i = 0; i < ds.size(); ++i) {
    int c = ds.class_of(i);
    if (c < 0) throw std::invalid_argument("instance with missing class cannot be partitioned");
    by_class[c].push_back(static_cast<int>(i));
  }
  return by_class;
}

}  // namespace

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, double train_fraction,
                                             uint64_t seed) {
  if (ds.empty()) throw std::invalid_argument("cannot split an empty dataset");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must be in (0, 1)");
  }
  Rng rng(seed);
  std::vector<bool> in_train(ds.size(), false);
  for (auto& entries : entries_by_class(ds)) {
    shuffle(entries, rng);
    auto take = static_cast<size_t>(std::lround(train_fraction * entries.size()));
    for (size_t i = 0; i < take; ++i) in_train[entries[i]] = true;
  }
  std::vector<int> train, test;
  for (size_t i = 0; i < ds.size(); ++i) {
    (in_train[i] ? train : test).push_back(static_cast<int>(i));
  }
  return {ds.select(train), ds.select(test)};
}

FoldPartition stratified_folds(const Dataset& ds, int k, uint64_t seed) {
  if (k < 2) throw std::invalid_argument("fold count must be at least 2");
  if (static_cast<size_t>(k) > ds.size()) {
    throw std::invalid_argument("fold count exceeds dataset size; some fold would be empty");
  }
  Rng rng(seed);
  FoldPartition fp;
  fp.k = k;
  fp.fold_of.assign(ds.size(), -1);
  int cursor = 0;
  for (auto& entries : entries_by_class(ds)) {
    shuffle(entries, rng);
    for (int e : entries) {
      fp.fold_of[e] = cursor;
      cursor = (cursor + 1) % k;
    }
  }
  return fp;
}

namespace {

Dataset fold_subset(const Dataset& ds, const FoldPartition& fp, int fold, bool complement) {
  if (fp.fold_of.size() != ds.size()) throw std::invalid_argument("fold partition size mismatch");
  if (fold < 0 || fold >= fp.k) throw std::out_of_range("fold id out of range");
  std::vector<int> entries;
  for (size_t i = 0; i < ds.size(); ++i) {
    if ((fp.fold_of[i] == fold) != complement) entries.push_back(static_cast<int>(i));
  }
  return ds.select(entries);
}

}  // namespace

Dataset fold_train_subset(const Dataset& ds, const FoldPartition& fp, int fold) {
  return fold_subset(ds, fp, fold, true);
}

Dataset fold_test_subset(const Dataset& ds, const FoldPartition& fp, int fold) {
  return fold_subset(ds, fp, fold, false);
}

}  // namespace miniboost
