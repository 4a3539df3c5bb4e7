#pragma once

#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"

namespace miniboost {

// argmax with ties broken by lowest index
int argmax_index(std::span<const double> scores);

class Classifier {
 public:
  virtual ~Classifier() = default;

  // per-class distribution aligned with the schema's class values; sums to 1
  virtual std::vector<double> distribution(const Instance& x) const = 0;

  // indented text rendering for debugging and golden-file tests
  virtual std::string dump() const = 0;

  // the schema the model was trained on
  virtual const Schema& schema() const = 0;

  int predict(const Instance& x) const {
    auto d = distribution(x);
    return argmax_index(d);
  }
};

}  // namespace miniboost
