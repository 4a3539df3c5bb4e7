#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace miniboost {

inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double v) { return std::isnan(v); }

enum class AttrKind { Nominal, Numeric };

struct Attribute {
  std::string name;
  AttrKind kind = AttrKind::Numeric;
  std::vector<std::string> values;  // nominal only, declaration order

  bool numeric() const { return kind == AttrKind::Numeric; }
  // case-sensitive lookup; -1 if undeclared
  int value_index(std::string_view v) const;
};

struct Schema {
  std::string relation;
  std::vector<Attribute> attributes;
  int class_index = -1;

  int num_attributes() const { return static_cast<int>(attributes.size()); }
  const Attribute& class_attribute() const { return attributes[class_index]; }
  int num_classes() const { return static_cast<int>(class_attribute().values.size()); }
  // unique names, non-empty duplicate-free nominal value lists, nominal class
  void validate() const;
  bool compatible(const Schema& other) const;
};

struct Instance {
  std::vector<double> values;  // nominal cells hold the value index; NaN = missing
  double weight = 1.0;
};

// Weighted instance collection. Copies share the instance storage; subset,
// reweight and resample build views with their own index/weight arrays, so
// derived datasets never touch the data they came from.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(Schema schema);
  explicit Dataset(std::shared_ptr<const Schema> schema);

  // build-time only: the instance pool must not be shared yet
  void add(Instance inst);

  const Schema& schema() const { return *schema_; }
  std::shared_ptr<const Schema> schema_ptr() const { return schema_; }
  int class_index() const { return schema_->class_index; }
  int num_classes() const { return schema_->num_classes(); }
  int num_attributes() const { return schema_->num_attributes(); }

  size_t size() const { return index_.size(); }
  bool empty() const { return index_.empty(); }
  const Instance& instance(size_t i) const { return (*pool_)[index_[i]]; }
  double value(size_t i, int attr) const { return instance(i).values[attr]; }
  double weight(size_t i) const { return weights_[i]; }
  // class value of entry i; -1 when the class cell is missing
  int class_of(size_t i) const;

  Dataset with_weights(std::vector<double> weights) const;
  // keeps the given entries in the given order, with their current weights
  Dataset select(const std::vector<int>& entries) const;
  // like select but every kept entry gets the same weight
  Dataset resample(const std::vector<int>& entries, double each_weight) const;

 private:
  std::shared_ptr<const Schema> schema_;
  std::shared_ptr<std::vector<Instance>> pool_;
  std::vector<int> index_;
  std::vector<double> weights_;
};

struct FoldPartition {
  int k = 0;
  std::vector<int> fold_of;  // per-entry fold id in [0, k)
};

double total_weight(const Dataset& ds);

// Per-class train counts are round(train_fraction * class count); which
// instances land where is decided by a seeded shuffle. Original instance
// order is preserved within each part.
std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, double train_fraction,
                                             uint64_t seed);

// Stratified k folds: per-class counts differ by at most 1 across folds.
// Instances are dealt to folds cyclically with the cursor carried across
// classes, so k == |ds| degenerates to leave-one-out.
FoldPartition stratified_folds(const Dataset& ds, int k, uint64_t seed);

Dataset fold_train_subset(const Dataset& ds, const FoldPartition& fp, int fold);
Dataset fold_test_subset(const Dataset& ds, const FoldPartition& fp, int fold);

}  // namespace miniboost
