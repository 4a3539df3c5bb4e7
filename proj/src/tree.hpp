#pragma once

#include <memory>
#include <optional>
#include <span>

#include "classifier.hpp"
#include "dataset.hpp"

namespace miniboost {

struct SplitTest {
  int attribute = -1;
  bool is_numeric = false;
  double threshold = 0.0;  // numeric only; values <= threshold take branch 0

  int branch_count(const Schema& schema) const;
};

enum class PruneMode { Confidence, ReducedError, None };

struct TreeParams {
  double confidence = 0.25;     // C: pruning confidence, (0, 0.5]
  int min_instances = 2;        // M: minimum known weight each child must receive
  PruneMode pruning = PruneMode::Confidence;
  int reduced_error_folds = 3;  // N: one fold held out as the pruning set
  bool numeric_penalty = true;  // subtract log2(d)/W from numeric-threshold gains
  bool mean_gain_filter = true; // only tests with gain >= mean gain are candidates
  double prune_slack = 0.1;     // error-count slack, avoids collapse oscillation on ties
  uint64_t seed = 0;

  void validate() const;
};

struct TreeNode {
  std::vector<double> class_weights;  // training distribution, kept for pruning
  int predicted = 0;                  // argmax of class_weights, ties to lowest index
  std::optional<SplitTest> test;      // absent = leaf
  std::vector<std::unique_ptr<TreeNode>> children;  // one per branch
  std::unique_ptr<TreeNode> missing_child;  // stumps route MISSING here; grown trees
                                            // use fractional descent instead
  std::vector<double> branch_fractions;     // known-weight share per branch

  bool is_leaf() const { return !test.has_value(); }
  size_t node_count() const;
  size_t leaf_count() const;
};

// weighted view into a dataset; the weight may differ from the instance's own
struct Row {
  int entry = 0;
  double weight = 0.0;
};

std::vector<Row> all_rows(const Dataset& ds);

// Shannon entropy in bits of a nonnegative weight vector
double entropy(std::span<const double> class_weights);

// Gain over known-valued weight, scaled by known/total weight. Instances with
// a MISSING test attribute are excluded from the branch statistics.
double info_gain(const Dataset& ds, std::span<const Row> rows, const SplitTest& test);
double info_gain(const Dataset& ds, const SplitTest& test);

// entropy of the known-weight branch proportions
double split_info(const Dataset& ds, std::span<const Row> rows, const SplitTest& test);
double split_info(const Dataset& ds, const SplitTest& test);

// info_gain / split_info; tests with split_info <= 1e-9 are ineligible and
// report a ratio of 0
double gain_ratio(const Dataset& ds, std::span<const Row> rows, const SplitTest& test);
double gain_ratio(const Dataset& ds, const SplitTest& test);

struct ThresholdChoice {
  double threshold = 0.0;
  double gain = 0.0;  // penalized when numeric_penalty is on
};

// Candidate thresholds are midpoints between adjacent distinct sorted known
// values; returns the one maximizing info_gain (ties to the lower threshold).
// With numeric_penalty, log2(d)/W is subtracted and nullopt is returned when
// the penalized gain is not positive. min_child_weight restricts candidates
// to those leaving at least that much known weight on each side.
std::optional<ThresholdChoice> best_numeric_threshold(const Dataset& ds,
                                                      std::span<const Row> rows, int attribute,
                                                      bool numeric_penalty,
                                                      double min_child_weight = 0.0);
std::optional<ThresholdChoice> best_numeric_threshold(const Dataset& ds, int attribute,
                                                      bool numeric_penalty = false);

// Upper confidence bound on a leaf's error rate via the normal approximation
// to the binomial; n = branch weight, e = misclassified weight.
double pessimistic_error(double n, double e, double confidence);

std::unique_ptr<TreeNode> grow_tree(const Dataset& ds, std::vector<Row> rows,
                                    const TreeParams& params);
std::unique_ptr<TreeNode> grow_tree(const Dataset& ds, const TreeParams& params);

// bottom-up subtree replacement driven by pessimistic error estimates
void prune_confidence(TreeNode& root, const TreeParams& params);

// bottom-up subtree replacement whenever it does not increase misclassified
// weight on the pruning set (ties collapse)
void prune_reduced_error(TreeNode& root, const Dataset& prune_ds, std::span<const Row> prune_rows);
void prune_reduced_error(TreeNode& root, const Dataset& prune_ds);

class DecisionTreeModel final : public Classifier {
 public:
  DecisionTreeModel(std::shared_ptr<const Schema> schema, std::unique_ptr<TreeNode> root,
                    TreeParams params);

  std::vector<double> distribution(const Instance& x) const override;
  std::string dump() const override;

  const TreeNode& root() const { return *root_; }
  const Schema& schema() const override { return *schema_; }
  const TreeParams& params() const { return params_; }

 private:
  std::shared_ptr<const Schema> schema_;
  std::shared_ptr<const TreeNode> root_;  // shared so models copy cheaply
  TreeParams params_;
};

// grow + prune per params
DecisionTreeModel train_tree(const Dataset& ds, const TreeParams& params);

// Depth-1 tree minimizing weighted training error. Numeric attributes split
// on the best single threshold; MISSING gets its own branch. Ties break by
// lowest attribute index, then lowest threshold; a split must beat the
// majority-class leaf strictly to be used.
DecisionTreeModel train_stump(const Dataset& ds);

// single majority-class leaf

DecisionTreeModel train_majority_leaf(const Dataset& ds);

}  // namespace miniboost
