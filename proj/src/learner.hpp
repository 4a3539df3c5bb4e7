#pragma once

#include <memory>
#include <string>

#include "adaboost.hpp"
#include "classifier.hpp"
#include "naive_bayes.hpp"
#include "tree.hpp"

namespace miniboost {

// A parsed learner specification, e.g.
//   nb
//   stump
//   j48(C=0.25, M=2)
//   adaboost(base=j48, I=20, P=50, Q=on, C=0.25, M=2, seed=7)
struct LearnerSpec {
  enum Kind { kNaiveBayes, kStump, kTree, kBoost };
  Kind kind = kNaiveBayes;
  TreeParams tree;    // kTree
  BoostParams boost;  // kBoost
  bool seed_set = false;
};

LearnerSpec parse_learner_spec(const std::string& text);
std::string format_learner_spec(const LearnerSpec& spec);

// grid tuning hook; names follow the CLI letters P, I, Q, C, M, N
void apply_learner_param(LearnerSpec& spec, const std::string& name, double value);

// default_seed is used unless the spec carries its own seed
std::unique_ptr<Classifier> train_learner(const LearnerSpec& spec, const Dataset& ds,
                                          uint64_t default_seed);

}  // namespace miniboost
