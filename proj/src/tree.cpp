#include "tree.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace miniboost {

namespace {

constexpr double kWeightEps = 1e-9;
constexpr double kSplitInfoEps = 1e-9;

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Acklam's rational approximation of the standard normal quantile,
// sharpened with one Newton step against the erfc-based CDF.
double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
  double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (pdf > 0.0) x -= (cdf - p) / pdf;
  return x;
}

// z with P(Z > z) = tail, tail in (0, 0.5]
double normal_upper_quantile(double tail) {
  if (tail >= 0.5) return 0.0;
  return -inverse_normal_cdf(tail);
}

struct BranchStats {
  std::vector<std::vector<double>> class_w;  // [branch][class]
  std::vector<double> branch_w;              // known weight per branch
  std::vector<double> known_class_w;         // class weights over known rows
  double known_w = 0.0;
  double total_w = 0.0;
};

BranchStats branch_stats(const Dataset& ds, std::span<const Row> rows, const SplitTest& test) {
  const int K = ds.num_classes();
  const int B = test.branch_count(ds.schema());
  BranchStats st;
  st.class_w.assign(B, std::vector<double>(K, 0.0));
  st.branch_w.assign(B, 0.0);
  st.known_class_w.assign(K, 0.0);
  for (const Row& r : rows) {
    st.total_w += r.weight;
    double v = ds.value(r.entry, test.attribute);
    if (is_missing(v)) continue;
    int b = test.is_numeric ? (v <= test.threshold ? 0 : 1) : static_cast<int>(v);
    int c = ds.class_of(r.entry);
    if (c < 0) throw std::invalid_argument("training instance with missing class");
    st.class_w[b][c] += r.weight;
    st.branch_w[b] += r.weight;
    st.known_class_w[c] += r.weight;
    st.known_w += r.weight;
  }
  return st;
}

double gain_from_stats(const BranchStats& st) {
  if (st.known_w <= 0.0 || st.total_w <= 0.0) return 0.0;
  double after = 0.0;
  for (size_t b = 0; b < st.branch_w.size(); ++b) {
    if (st.branch_w[b] > 0.0) {
      after += (st.branch_w[b] / st.known_w) * entropy(st.class_w[b]);
    }
  }
  double gain = entropy(st.known_class_w) - after;
  return (st.known_w / st.total_w) * gain;
}

double split_info_from_stats(const BranchStats& st) {
  if (st.known_w <= 0.0) return 0.0;
  return entropy(st.branch_w);
}

struct NumericScan {
  double threshold = 0.0;
  double gain = 0.0;       // as selected (penalized when requested)
  bool found = false;
};

NumericScan scan_numeric(const Dataset& ds, std::span<const Row> rows, int attribute,
                         bool numeric_penalty, double min_child_weight) {
  const int K = ds.num_classes();
  struct Known {
    double value;
    int cls;
    double weight;
  };
  std::vector<Known> known;
  known.reserve(rows.size());
  double total_w = 0.0;
  for (const Row& r : rows) {
    total_w += r.weight;
    double v = ds.value(r.entry, attribute);
    if (is_missing(v)) continue;
    int c = ds.class_of(r.entry);
    if (c < 0) throw std::invalid_argument("training instance with missing class");
    known.push_back({v, c, r.weight});
  }
  NumericScan best;
  if (known.size() < 2) return best;
  std::sort(known.begin(), known.end(),
            [](const Known& a, const Known& b) { return a.value < b.value; });

  std::vector<double> right(K, 0.0);
  double known_w = 0.0;
  for (const Known& k : known) {
    right[k.cls] += k.weight;
    known_w += k.weight;
  }
  const double parent_entropy = entropy(right);
  const double known_fraction = known_w / total_w;

  int distinct = 1;
  for (size_t i = 1; i < known.size(); ++i) {
    if (known[i].value != known[i - 1].value) ++distinct;
  }
  if (distinct < 2) return best;

  std::vector<double> left(K, 0.0);
  double left_w = 0.0;
  for (size_t i = 0; i + 1 < known.size(); ++i) {
    left[known[i].cls] += known[i].weight;
    right[known[i].cls] -= known[i].weight;
    left_w += known[i].weight;
    if (known[i + 1].value == known[i].value) continue;
    double right_w = known_w - left_w;
    if (left_w < min_child_weight || right_w < min_child_weight) continue;
    double after = (left_w / known_w) * entropy(left) + (right_w / known_w) * entropy(right);
    double gain = known_fraction * (parent_entropy - after);
    if (!best.found || gain > best.gain) {
      best.found = true;
      best.threshold = (known[i].value + known[i + 1].value) / 2.0;
      best.gain = gain;
    }
  }
  if (!best.found) return best;
  if (numeric_penalty) {
    best.gain -= std::log2(static_cast<double>(distinct)) / known_w;
    if (best.gain <= 0.0) best.found = false;
  }
  return best;
}

void collapse_to_leaf(TreeNode& node) {
  node.test.reset();
  node.children.clear();
  node.missing_child.reset();
  node.branch_fractions.clear();
}

std::vector<double> normalized_or_uniform(std::span<const double> w) {
  double total = sum(w);
  std::vector<double> out(w.size());
  if (total > 0.0) {
    for (size_t i = 0; i < w.size(); ++i) out[i] = w[i] / total;
  } else {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(w.size()));
  }
  return out;
}

}  // namespace

int SplitTest::branch_count(const Schema& schema) const {
  if (is_numeric) return 2;
  return static_cast<int>(schema.attributes[attribute].values.size());
}

void TreeParams::validate() const {
  if (!(confidence > 0.0 && confidence <= 0.5)) {
    throw std::invalid_argument("confidence must be in (0, 0.5]");
  }
  if (min_instances < 1) throw std::invalid_argument("min instances must be at least 1");
  if (pruning == PruneMode::ReducedError && reduced_error_folds < 2) {
    throw std::invalid_argument("reduced-error pruning needs at least 2 folds");
  }
}

size_t TreeNode::node_count() const {
  size_t n = 1;
  for (const auto& ch : children) n += ch->node_count();
  if (missing_child) n += missing_child->node_count();
  return n;
}

size_t TreeNode::leaf_count() const {
  if (is_leaf()) return 1;
  size_t n = 0;
  for (const auto& ch : children) n += ch->leaf_count();
  if (missing_child) n += missing_child->leaf_count();
  return n;
}

std::vector<Row> all_rows(const Dataset& ds) {
  std::vector<Row> rows;
  rows.reserve(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) {
    rows.push_back({static_cast<int>(i), ds.weight(i)});
  }
  return rows;
}

double entropy(std::span<const double> class_weights) {
  double total = 0.0;
  for (double w : class_weights) {
    // incremental sweeps can leave -1e-17 residue on emptied classes
    if (w < -kWeightEps) throw std::invalid_argument("negative class weight");
    if (w > 0.0) total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("entropy of all-zero weights");
  double h = 0.0;
  for (double w : class_weights) {
    if (w > 0.0) {
      double p = w / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double info_gain(const Dataset& ds, std::span<const Row> rows, const SplitTest& test) {
  if (rows.empty()) throw std::invalid_argument("info gain of an empty dataset");
  return gain_from_stats(branch_stats(ds, rows, test));
}

double info_gain(const Dataset& ds, const SplitTest& test) {
  auto rows = all_rows(ds);
  return info_gain(ds, rows, test);
}

double split_info(const Dataset& ds, std::span<const Row> rows, const SplitTest& test) {
  return split_info_from_stats(branch_stats(ds, rows, test));
}

double split_info(const Dataset& ds, const SplitTest& test) {
  auto rows = all_rows(ds);
  return split_info(ds, rows, test);
}

double gain_ratio(const Dataset& ds, std::span<const Row> rows, const SplitTest& test) {
  BranchStats st = branch_stats(ds, rows, test);
  double si = split_info_from_stats(st);
  if (si <= kSplitInfoEps) return 0.0;
  return gain_from_stats(st) / si;
}

double gain_ratio(const Dataset& ds, const SplitTest& test) {
  auto rows = all_rows(ds);
  return gain_ratio(ds, rows, test);
}

std::optional<ThresholdChoice> best_numeric_threshold(const Dataset& ds,
                                                      std::span<const Row> rows, int attribute,
                                                      bool numeric_penalty,
                                                      double min_child_weight) {
  if (!ds.schema().attributes[attribute].numeric()) {
    throw std::invalid_argument("threshold search on a nominal attribute");
  }
  NumericScan scan = scan_numeric(ds, rows, attribute, numeric_penalty, min_child_weight);
  if (!scan.found) return std::nullopt;
  return ThresholdChoice{scan.threshold, scan.gain};
}

std::optional<ThresholdChoice> best_numeric_threshold(const Dataset& ds, int attribute,
                                                      bool numeric_penalty) {
  auto rows = all_rows(ds);
  return best_numeric_threshold(ds, rows, attribute, numeric_penalty, 0.0);
}

double pessimistic_error(double n, double e, double confidence) {
  if (n <= 0.0) throw std::invalid_argument("pessimistic error needs positive weight");
  if (!(confidence > 0.0 && confidence <= 0.5)) {
    throw std::invalid_argument("confidence must be in (0, 0.5]");
  }
  e = std::clamp(e, 0.0, n);
  double f = e / n;
  double z = normal_upper_quantile(confidence);
  if (z == 0.0) return f;
  double z2 = z * z;
  double radicand = std::max(0.0, f / n - f * f / n + z2 / (4.0 * n * n));
  double value = (f + z2 / (2.0 * n) + z * std::sqrt(radicand)) / (1.0 + z2 / n);
  return std::min(value, 1.0);
}

namespace {

struct Candidate {
  SplitTest test;
  double gain = 0.0;
  double split_info = 0.0;
};

std::unique_ptr<TreeNode> grow_node(const Dataset& ds, std::vector<Row> rows,
                                    const TreeParams& p) {
  const int K = ds.num_classes();
  auto node = std::make_unique<TreeNode>();
  node->class_weights.assign(K, 0.0);
  double total = 0.0;
  for (const Row& r : rows) {
    int c = ds.class_of(r.entry);
    if (c < 0) throw std::invalid_argument("training instance with missing class");
    node->class_weights[c] += r.weight;
    total += r.weight;
  }
  node->predicted = argmax_index(node->class_weights);
  if (rows.empty()) return node;
  if (total - node->class_weights[node->predicted] <= kWeightEps) return node;  // pure

  const double min_child = static_cast<double>(p.min_instances);
  std::vector<Candidate> candidates;
  for (int a = 0; a < ds.num_attributes(); ++a) {
    if (a == ds.class_index()) continue;
    const Attribute& attr = ds.schema().attributes[a];
    if (attr.numeric()) {
      NumericScan scan = scan_numeric(ds, rows, a, p.numeric_penalty, min_child);
      if (!scan.found) continue;
      SplitTest test{a, true, scan.threshold};
      BranchStats st = branch_stats(ds, rows, test);
      double si = split_info_from_stats(st);
      if (si <= kSplitInfoEps) continue;
      candidates.push_back({test, scan.gain, si});
    } else {
      SplitTest test{a, false, 0.0};
      BranchStats st = branch_stats(ds, rows, test);
      if (st.known_w <= 0.0) continue;
      bool usable = true;
      for (double bw : st.branch_w) {
        if (bw < min_child) {
          usable = false;
          break;
        }
      }
      if (!usable) continue;
      double si = split_info_from_stats(st);
      if (si <= kSplitInfoEps) continue;
      candidates.push_back({test, gain_from_stats(st), si});
    }
  }
  if (candidates.empty()) return node;

  double mean_gain = 0.0;
  for (const auto& c : candidates) mean_gain += c.gain;
  mean_gain /= static_cast<double>(candidates.size());

  const Candidate* best = nullptr;
  double best_ratio = 0.0;
  for (const auto& c : candidates) {
    if (p.mean_gain_filter && c.gain + 1e-12 < mean_gain) continue;
    double ratio = c.gain / c.split_info;
    if (!best || ratio > best_ratio) {
      best = &c;
      best_ratio = ratio;
    }
  }
  if (!best) return node;

  BranchStats st = branch_stats(ds, rows, best->test);
  const int B = best->test.branch_count(ds.schema());
  node->test = best->test;
  node->branch_fractions.resize(B);
  for (int b = 0; b < B; ++b) node->branch_fractions[b] = st.branch_w[b] / st.known_w;

  std::vector<std::vector<Row>> child_rows(B);
  std::vector<Row> missing_rows;
  for (const Row& r : rows) {
    double v = ds.value(r.entry, best->test.attribute);
    if (is_missing(v)) {
      missing_rows.push_back(r);
      continue;
    }
    int b = best->test.is_numeric ? (v <= best->test.threshold ? 0 : 1) : static_cast<int>(v);
    child_rows[b].push_back(r);
  }
  // MISSING descends into every branch at the branch's known-weight share
  for (const Row& r : missing_rows) {
    for (int b = 0; b < B; ++b) {
      double f = node->branch_fractions[b];
      if (f > 0.0) child_rows[b].push_back({r.entry, r.weight * f});
    }
  }
  rows.clear();
  rows.shrink_to_fit();
  for (int b = 0; b < B; ++b) {
    node->children.push_back(grow_node(ds, std::move(child_rows[b]), p));
  }
  return node;
}

}  // namespace

std::unique_ptr<TreeNode> grow_tree(const Dataset& ds, std::vector<Row> rows,
                                    const TreeParams& params) {
  params.validate();
  if (rows.empty()) throw std::invalid_argument("cannot grow a tree from an empty dataset");
  return grow_node(ds, std::move(rows), params);
}

std::unique_ptr<TreeNode> grow_tree(const Dataset& ds, const TreeParams& params) {
  if (ds.empty()) throw std::invalid_argument("cannot grow a tree from an empty dataset");
  return grow_tree(ds, all_rows(ds), params);
}

namespace {

// returns the post-prune estimated error count of the subtree
double prune_confidence_walk(TreeNode& node, const TreeParams& p) {
  double n = sum(node.class_weights);
  double e = n - (node.class_weights.empty() ? 0.0 : node.class_weights[node.predicted]);
  double leaf_estimate = n > 0.0 ? n * pessimistic_error(n, e, p.confidence) : 0.0;
  if (node.is_leaf()) return leaf_estimate;
  double child_estimate = 0.0;
  for (auto& ch : node.children) child_estimate += prune_confidence_walk(*ch, p);
  if (node.missing_child) child_estimate += prune_confidence_walk(*node.missing_child, p);
  if (leaf_estimate <= child_estimate + p.prune_slack) {
    collapse_to_leaf(node);
    return leaf_estimate;
  }
  return child_estimate;
}

// returns the post-prune misclassified weight of the subtree on the rows
double prune_reduced_walk(TreeNode& node, const Dataset& ds, std::vector<Row> rows) {
  double leaf_err = 0.0;
  for (const Row& r : rows) {
    if (ds.class_of(r.entry) != node.predicted) leaf_err += r.weight;
  }
  if (node.is_leaf()) return leaf_err;

  const SplitTest& test = *node.test;
  const int B = static_cast<int>(node.children.size());
  std::vector<std::vector<Row>> child_rows(B);
  std::vector<Row> missing_child_rows;
  for (const Row& r : rows) {
    double v = ds.value(r.entry, test.attribute);
    if (is_missing(v)) {
      if (node.missing_child) {
        missing_child_rows.push_back(r);
      } else {
        for (int b = 0; b < B; ++b) {
          double f = node.branch_fractions[b];
          if (f > 0.0) child_rows[b].push_back({r.entry, r.weight * f});
        }
      }
      continue;
    }
    int b = test.is_numeric ? (v <= test.threshold ? 0 : 1) : static_cast<int>(v);
    if (b >= 0 && b < B) child_rows[b].push_back(r);
  }
  double subtree_err = 0.0;
  for (int b = 0; b < B; ++b) {
    subtree_err += prune_reduced_walk(*node.children[b], ds, std::move(child_rows[b]));
  }
  if (node.missing_child) {
    subtree_err += prune_reduced_walk(*node.missing_child, ds, std::move(missing_child_rows));
  }
  if (leaf_err <= subtree_err + kWeightEps) {
    collapse_to_leaf(node);
    return leaf_err;
  }
  return subtree_err;
}

}  // namespace

void prune_confidence(TreeNode& root, const TreeParams& params) {
  params.validate();
  prune_confidence_walk(root, params);
}

void prune_reduced_error(TreeNode& root, const Dataset& prune_ds,
                         std::span<const Row> prune_rows) {
  if (prune_rows.empty()) throw std::invalid_argument("empty pruning set");
  prune_reduced_walk(root, prune_ds, std::vector<Row>(prune_rows.begin(), prune_rows.end()));
}

void prune_reduced_error(TreeNode& root, const Dataset& prune_ds) {
  auto rows = all_rows(prune_ds);
  prune_reduced_error(root, prune_ds, rows);
}

namespace {

void mix_leaf_distributions(const TreeNode& node, const Instance& x, double fraction,
                            std::vector<double>& acc) {
  if (fraction <= 0.0) return;
  if (node.is_leaf()) {
    auto dist = normalized_or_uniform(node.class_weights);
    for (size_t c = 0; c < acc.size(); ++c) acc[c] += fraction * dist[c];
    return;
  }
  const SplitTest& test = *node.test;
  double v = x.values[test.attribute];
  if (is_missing(v)) {
    if (node.missing_child) {
      mix_leaf_distributions(*node.missing_child, x, fraction, acc);
      return;
    }
    double assigned = 0.0;
    for (size_t b = 0; b < node.children.size(); ++b) {
      double f = node.branch_fractions[b];
      if (f > 0.0) {
        mix_leaf_distributions(*node.children[b], x, fraction * f, acc);
        assigned += f;
      }
    }
    if (assigned <= 0.0) {
      // no known-weight information: fall back to this node's distribution
      auto dist = normalized_or_uniform(node.class_weights);
      for (size_t c = 0; c < acc.size(); ++c) acc[c] += fraction * dist[c];
    }
    return;
  }
  int b = test.is_numeric ? (v <= test.threshold ? 0 : 1) : static_cast<int>(v);
  if (b < 0 || b >= static_cast<int>(node.children.size())) {
    throw std::invalid_argument("instance does not conform to the model schema");
  }
  mix_leaf_distributions(*node.children[b], x, fraction, acc);
}

std::string format_weight(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string leaf_text(const Schema& schema, const TreeNode& node) {
  std::ostringstream out;
  out << schema.class_attribute().values[node.predicted] << " [";
  for (size_t c = 0; c < node.class_weights.size(); ++c) {
    if (c) out << ", ";
    out << format_weight(node.class_weights[c]);
  }
  out << "]";
  return out.str();
}

void dump_node(const Schema& schema, const TreeNode& node, int depth, std::ostringstream& out) {
  auto indent = [&]() {
    for (int i = 0; i < depth; ++i) out << "|  ";
  };
  if (node.is_leaf()) {
    indent();
    out << leaf_text(schema, node) << "\n";
    return;
  }
  const SplitTest& test = *node.test;
  const Attribute& attr = schema.attributes[test.attribute];
  auto branch_label = [&](int b) {
    std::ostringstream label;
    if (test.is_numeric) {
      label << attr.name << (b == 0 ? " <= " : " > ") << test.threshold;
    } else {
      label << attr.name << " = " << attr.values[b];
    }
    return label.str();
  };
  for (size_t b = 0; b < node.children.size(); ++b) {
    indent();
    out << branch_label(static_cast<int>(b));
    if (node.children[b]->is_leaf()) {
      out << ": " << leaf_text(schema, *node.children[b]) << "\n";
    } else {
      out << "\n";
      dump_node(schema, *node.children[b], depth + 1, out);
    }
  }
  if (node.missing_child) {
    indent();
    out << attr.name << " = ?";
    if (node.missing_child->is_leaf()) {
      out << ": " << leaf_text(schema, *node.missing_child) << "\n";
    } else {
      out << "\n";
      dump_node(schema, *node.missing_child, depth + 1, out);
    }
  }
}

}  // namespace

DecisionTreeModel::DecisionTreeModel(std::shared_ptr<const Schema> schema,
                                     std::unique_ptr<TreeNode> root, TreeParams params)
    : schema_(std::move(schema)), root_(std::move(root)), params_(params) {
  if (!schema_ || !root_) throw std::invalid_argument("tree model needs a schema and a root");
}

std::vector<double> DecisionTreeModel::distribution(const Instance& x) const {
  if (static_cast<int>(x.values.size()) != schema_->num_attributes()) {
    throw std::invalid_argument("instance does not conform to the model schema");
  }
  std::vector<double> acc(schema_->num_classes(), 0.0);
  mix_leaf_distributions(*root_, x, 1.0, acc);
  double total = sum(acc);
  if (total > 0.0) {
    for (double& v : acc) v /= total;
  } else {
    std::fill(acc.begin(), acc.end(), 1.0 / acc.size());
  }
  return acc;
}

std::string DecisionTreeModel::dump() const {
  std::ostringstream out;
  if (root_->is_leaf()) {
    out << leaf_text(*schema_, *root_) << "\n";
  } else {
    dump_node(*schema_, *root_, 0, out);
  }
  return out.str();
}

DecisionTreeModel train_tree(const Dataset& ds, const TreeParams& params) {
  params.validate();
  if (ds.empty()) throw std::invalid_argument("cannot train on an empty dataset");
  if (params.pruning == PruneMode::ReducedError) {
    int folds = params.reduced_error_folds;
    // shrink rather than fail on tiny boosted subsets
    if (static_cast<size_t>(folds) > ds.size()) folds = static_cast<int>(ds.size());
    if (folds >= 2) {
      FoldPartition fp = stratified_folds(ds, folds, params.seed);
      Dataset grow_ds = fold_train_subset(ds, fp, 0);
      Dataset prune_ds = fold_test_subset(ds, fp, 0);
      if (!grow_ds.empty() && !prune_ds.empty()) {
        auto root = grow_tree(grow_ds, params);
        prune_reduced_error(*root, prune_ds);
        return DecisionTreeModel(ds.schema_ptr(), std::move(root), params);
      }
    }
  }
  auto root = grow_tree(ds, params);
  if (params.pruning == PruneMode::Confidence) {
    prune_confidence(*root, params);
  }
  return DecisionTreeModel(ds.schema_ptr(), std::move(root), params);
}

namespace {

struct StumpPlan {
  bool use_split = false;
  SplitTest test;
  double error = 0.0;
};

std::unique_ptr<TreeNode> make_leaf(std::vector<double> class_weights) {
  auto leaf = std::make_unique<TreeNode>();
  leaf->predicted = argmax_index(class_weights);
  leaf->class_weights = std::move(class_weights);
  return leaf;
}

double branch_error(const std::vector<double>& class_w) {
  double total = 0.0, best = 0.0;
  for (double w : class_w) total += w;
  if (class_w.empty()) return 0.0;
  best = class_w[argmax_index(class_w)];
  return total - best;
}

}  // namespace

DecisionTreeModel train_stump(const Dataset& ds) {
  if (ds.empty()) throw std::invalid_argument("cannot train on an empty dataset");
  const int K = ds.num_classes();
  std::vector<double> totals(K, 0.0);
  for (size_t i = 0; i < ds.size(); ++i) {
    int c = ds.class_of(i);
    if (c < 0) throw std::invalid_argument("training instance with missing class");
    totals[c] += ds.weight(i);
  }
  const double majority_error = branch_error(totals);
  auto rows = all_rows(ds);

  StumpPlan best;
  best.error = majority_error;
  for (int a = 0; a < ds.num_attributes(); ++a) {
    if (a == ds.class_index()) continue;
    const Attribute& attr = ds.schema().attributes[a];
    if (!attr.numeric()) {
      SplitTest test{a, false, 0.0};
      BranchStats st = branch_stats(ds, rows, test);
      double err = 0.0;
      for (const auto& bw : st.class_w) err += branch_error(bw);
      // missing branch predicts its own majority
      std::vector<double> miss(K, 0.0);
      for (size_t i = 0; i < ds.size(); ++i) {
        if (is_missing(ds.value(i, a))) miss[ds.class_of(i)] += ds.weight(i);
      }
      err += branch_error(miss);
      if (err < best.error - kWeightEps) {
        best = {true, test, err};
      }
    } else {
      // sweep all midpoints for the error-minimizing threshold
      struct Known {
        double value;
        int cls;
        double weight;
      };
      std::vector<Known> known;
      std::vector<double> miss(K, 0.0);
      for (size_t i = 0; i < ds.size(); ++i) {
        double v = ds.value(i, a);
        if (is_missing(v)) {
          miss[ds.class_of(i)] += ds.weight(i);
        } else {
          known.push_back({v, ds.class_of(i), ds.weight(i)});
        }
      }
      if (known.size() < 2) continue;
      std::sort(known.begin(), known.end(),
                [](const Known& x, const Known& y) { return x.value < y.value; });
      std::vector<double> left(K, 0.0), right(K, 0.0);
      for (const Known& k : known) right[k.cls] += k.weight;
      const double miss_err = branch_error(miss);
      for (size_t i = 0; i + 1 < known.size(); ++i) {
        left[known[i].cls] += known[i].weight;
        right[known[i].cls] -= known[i].weight;
        if (known[i + 1].value == known[i].value) continue;
        double err = branch_error(left) + branch_error(right) + miss_err;
        if (err < best.error - kWeightEps) {
          best = {true, SplitTest{a, true, (known[i].value + known[i + 1].value) / 2.0}, err};
        }
      }
    }
  }

  auto root = std::make_unique<TreeNode>();
  root->class_weights = totals;
  root->predicted = argmax_index(totals);
  if (best.use_split) {
    BranchStats st = branch_stats(ds, rows, best.test);
    root->test = best.test;
    const int B = best.test.branch_count(ds.schema());
    root->branch_fractions.resize(B);
    for (int b = 0; b < B; ++b) {
      root->branch_fractions[b] = st.known_w > 0.0 ? st.branch_w[b] / st.known_w : 0.0;
      // an empty branch falls back to the overall distribution
      root->children.push_back(
          make_leaf(st.branch_w[b] > 0.0 ? st.class_w[b] : totals));
    }
    std::vector<double> miss(K, 0.0);
    bool any_missing = false;
    for (size_t i = 0; i < ds.size(); ++i) {
      if (is_missing(ds.value(i, best.test.attribute))) {
        miss[ds.class_of(i)] += ds.weight(i);
        any_missing = true;
      }
    }
    root->missing_child = make_leaf(any_missing ? miss : totals);
  }
  TreeParams params;
  params.pruning = PruneMode::None;
  return DecisionTreeModel(ds.schema_ptr(), std::move(root), params);
}

DecisionTreeModel train_majority_leaf(const Dataset& ds) {
  if (ds.empty()) throw std::invalid_argument("cannot train on an empty dataset");
  std::vector<double> totals(ds.num_classes(), 0.0);
  for (size_t i = 0; i < ds.size(); ++i) {
    int c = ds.class_of(i);
    if (c < 0) throw std::invalid_argument("training instance with missing class");
    totals[c] += ds.weight(i);
  }
  TreeParams params;
  params.pruning = PruneMode::None;
  return DecisionTreeModel(ds.schema_ptr(), make_leaf(std::move(totals)), params);
}

}  // namespace miniboost
