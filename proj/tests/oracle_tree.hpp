#pragma once

// Independent brute-force reference grower used to cross-check grow_tree.
// Deliberately naive: every candidate test is enumerated and scored with
// fresh statistics; no incremental sweeps, no shared helpers with the
// implementation. Works on datasets without missing values. The mean-gain
// filter and the numeric distinct-value penalty are not applied here, so
// compare against grow_tree with both flags off.

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "dataset.hpp"
#include "tree.hpp"

namespace oracle {

using miniboost::Dataset;

struct Node {
  std::vector<double> class_weights;
  int predicted = 0;
  bool leaf = true;
  int attribute = -1;
  bool is_numeric = false;
  double threshold = 0.0;
  std::vector<std::unique_ptr<Node>> children;
};

inline double entropy_of(const std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) total += x;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double x : w) {
    if (x > 0.0) {
      double p = x / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

inline int argmax_of(const std::vector<double>& w) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(w.size()); ++i) {
    if (w[i] > w[best]) best = i;
  }
  return best;
}

struct Scored {
  int attribute;
  bool is_numeric;
  double threshold;
  double gain;
  double split_info;
};

// class tallies per branch for a concrete test over the given entries
inline std::vector<std::vector<double>> tally(const Dataset& ds, const std::vector<int>& entries,
                                              int attribute, bool numeric, double threshold,
                                              int branches) {
  std::vector<std::vector<double>> out(branches,
                                       std::vector<double>(ds.num_classes(), 0.0));
  for (int e : entries) {
    double v = ds.value(e, attribute);
    int b = numeric ? (v <= threshold ? 0 : 1) : static_cast<int>(v);
    out[b][ds.class_of(e)] += ds.weight(e);
  }
  return out;
}

inline double gain_of(const Dataset& ds, const std::vector<int>& entries,
                      const std::vector<std::vector<double>>& branches) {
  std::vector<double> parent(ds.num_classes(), 0.0);
  double total = 0.0;
  for (int e : entries) {
    parent[ds.class_of(e)] += ds.weight(e);
    total += ds.weight(e);
  }
  double after = 0.0;
  for (const auto& branch : branches) {
    double bw = 0.0;
    for (double x : branch) bw += x;
    if (bw > 0.0) after += (bw / total) * entropy_of(branch);
  }
  return entropy_of(parent) - after;
}

inline double split_info_of(const std::vector<std::vector<double>>& branches) {
  std::vector<double> weights;
  for (const auto& branch : branches) {
    double bw = 0.0;
    for (double x : branch) bw += x;
    weights.push_back(bw);
  }
  return entropy_of(weights);
}

inline std::unique_ptr<Node> grow(const Dataset& ds, const std::vector<int>& entries,
                                  int min_instances) {
  auto node = std::make_unique<Node>();
  node->class_weights.assign(ds.num_classes(), 0.0);
  double total = 0.0;
  for (int e : entries) {
    node->class_weights[ds.class_of(e)] += ds.weight(e);
    total += ds.weight(e);
  }
  node->predicted = argmax_of(node->class_weights);
  if (total - node->class_weights[node->predicted] <= 1e-9) return node;

  std::vector<Scored> candidates;
  for (int a = 0; a < ds.num_attributes(); ++a) {
    if (a == ds.class_index()) continue;
    const auto& attr = ds.schema().attributes[a];
    if (attr.numeric()) {
      std::vector<double> values;
      for (int e : entries) values.push_back(ds.value(e, a));
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      bool have = false;
      Scored best{};
      for (size_t i = 0; i + 1 < values.size(); ++i) {
        double threshold = (values[i] + values[i + 1]) / 2.0;
        auto branches = tally(ds, entries, a, true, threshold, 2);
        double lo = 0.0, hi = 0.0;
        for (double x : branches[0]) lo += x;
        for (double x : branches[1]) hi += x;
        if (lo < min_instances || hi < min_instances) continue;
        double g = gain_of(ds, entries, branches);
        if (!have || g > best.gain) {
          have = true;
          best = {a, true, threshold, g, split_info_of(branches)};
        }
      }
      if (have && best.split_info > 1e-9) candidates.push_back(best);
    } else {
      int branches_n = static_cast<int>(attr.values.size());
      auto branches = tally(ds, entries, a, false, 0.0, branches_n);
      bool usable = true;
      for (const auto& branch : branches) {
        double bw = 0.0;
        for (double x : branch) bw += x;
        if (bw < min_instances) usable = false;
      }
      if (!usable) continue;
      double si = split_info_of(branches);
      if (si <= 1e-9) continue;
      candidates.push_back({a, false, 0.0, gain_of(ds, entries, branches), si});
    }
  }
  if (candidates.empty()) return node;

  const Scored* best = nullptr;
  double best_ratio = 0.0;
  for (const auto& c : candidates) {
    double ratio = c.gain / c.split_info;
    if (!best || ratio > best_ratio) {
      best = &c;
      best_ratio = ratio;
    }
  }

  node->leaf = false;
  node->attribute = best->attribute;
  node->is_numeric = best->is_numeric;
  node->threshold = best->threshold;
  int branches_n =
      best->is_numeric ? 2
                       : static_cast<int>(ds.schema().attributes[best->attribute].values.size());
  for (int b = 0; b < branches_n; ++b) {
    std::vector<int> part;
    for (int e : entries) {
      double v = ds.value(e, best->attribute);
      int branch = best->is_numeric ? (v <= best->threshold ? 0 : 1) : static_cast<int>(v);
      if (branch == b) part.push_back(e);
    }
    node->children.push_back(grow(ds, part, min_instances));
  }
  return node;
}

inline std::unique_ptr<Node> grow(const Dataset& ds, int min_instances) {
  std::vector<int> entries;
  for (size_t i = 0; i < ds.size(); ++i) entries.push_back(static_cast<int>(i));
  return grow(ds, entries, min_instances);
}

// structural equality against the implementation's tree
inline bool same_tree(const Node& expect, const miniboost::TreeNode& got) {
  if (expect.class_weights.size() != got.class_weights.size()) return false;
  for (size_t c = 0; c < expect.class_weights.size(); ++c) {
    if (std::abs(expect.class_weights[c] - got.class_weights[c]) > 1e-9) return false;
  }
  if (expect.predicted != got.predicted) return false;
  if (expect.leaf != got.is_leaf()) return false;
  if (expect.leaf) return true;
  if (expect.attribute != got.test->attribute) return false;
  if (expect.is_numeric != got.test->is_numeric) return false;
  if (expect.is_numeric && expect.threshold != got.test->threshold) return false;
  if (expect.children.size() != got.children.size()) return false;
  for (size_t b = 0; b < expect.children.size(); ++b) {
    if (!same_tree(*expect.children[b], *got.children[b])) return false;
  }
  return true;
}

// independent standard-normal upper-tail quantile by bisection on erfc
inline double upper_quantile_by_bisection(double tail) {
  double lo = 0.0, hi = 40.0;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = (lo + hi) / 2.0;
    double p = 0.5 * std::erfc(mid / std::sqrt(2.0));
    if (p > tail) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2.0;
}

}  // namespace oracle
