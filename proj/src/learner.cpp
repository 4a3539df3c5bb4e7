#include "learner.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace miniboost {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::pair<std::string, std::string>> parse_kv_list(const std::string& body,
                                                               const std::string& context) {
  std::vector<std::pair<std::string, std::string>> kvs;
  std::stringstream stream(body);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(context + ": expected key=value, got '" + item + "'");
    }
    kvs.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }
  return kvs;
}

double parse_number(const std::string& value, const std::string& key) {
  double out;
  const char* begin = value.c_str();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("invalid numeric value '" + value + "' for " + key);
  }
  return out;
}

bool parse_flag(const std::string& value, const std::string& key) {
  std::string v = lower(value);
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("invalid flag value '" + value + "' for " + key + " (use on|off)");
}

PruneMode parse_prune(const std::string& value) {
  std::string v = lower(value);
  if (v == "confidence") return PruneMode::Confidence;
  if (v == "reduced" || v == "reduced-error") return PruneMode::ReducedError;
  if (v == "none" || v == "off") return PruneMode::None;
  throw std::invalid_argument("invalid pruning mode '" + value +
                              "' (use confidence|reduced|none)");
}

void apply_tree_param(TreeParams& tree, const std::string& key, const std::string& value) {
  std::string k = lower(key);
  if (k == "c") {
    tree.confidence = parse_number(value, "C");
  } else if (k == "m") {
    tree.min_instances = static_cast<int>(std::lround(parse_number(value, "M")));
  } else if (k == "n") {
    tree.reduced_error_folds = static_cast<int>(std::lround(parse_number(value, "N")));
  } else if (k == "prune") {
    tree.pruning = parse_prune(value);
  } else {
    throw std::invalid_argument("unknown tree parameter '" + key + "'");
  }
}

}  // namespace

LearnerSpec parse_learner_spec(const std::string& text) {
  std::string s = trim(text);
  std::string name = s, body;
  auto open = s.find('(');
  if (open != std::string::npos) {
    if (s.back() != ')') throw std::invalid_argument("learner spec is missing ')'");
    name = trim(s.substr(0, open));
    body = s.substr(open + 1, s.size() - open - 2);
  }
  name = lower(name);

  LearnerSpec spec;
  if (name == "nb" || name == "naive_bayes" || name == "naivebayes") {
    spec.kind = LearnerSpec::kNaiveBayes;
    if (!body.empty()) throw std::invalid_argument("nb takes no parameters");
    return spec;
  }
  if (name == "stump") {
    spec.kind = LearnerSpec::kStump;
    if (!body.empty()) throw std::invalid_argument("stump takes no parameters");
    return spec;
  }
  if (name == "j48" || name == "tree" || name == "c45") {
    spec.kind = LearnerSpec::kTree;
    for (const auto& [key, value] : parse_kv_list(body, name)) {
      std::string k = lower(key);
      if (k == "seed") {
        spec.tree.seed = static_cast<uint64_t>(parse_number(value, "seed"));
        spec.seed_set = true;
      } else {
        apply_tree_param(spec.tree, key, value);
      }
    }
    spec.tree.validate();
    return spec;
  }
  if (name == "adaboost" || name == "boost" || name == "adaboostm1") {
    spec.kind = LearnerSpec::kBoost;
    for (const auto& [key, value] : parse_kv_list(body, name)) {
      std::string k = lower(key);
      if (k == "base") {
        std::string v = lower(value);
        if (v == "stump") {
          spec.boost.base.stump = true;
        } else if (v == "j48" || v == "tree" || v == "c45") {
          spec.boost.base.stump = false;
        } else {
          throw std::invalid_argument("unknown base learner '" + value + "' (use j48|stump)");
        }
      } else if (k == "i") {
        spec.boost.iterations = static_cast<int>(std::lround(parse_number(value, "I")));
      } else if (k == "p") {
        spec.boost.weight_threshold = static_cast<int>(std::lround(parse_number(value, "P")));
      } else if (k == "q") {
        spec.boost.resample = parse_flag(value, "Q");
      } else if (k == "seed") {
        spec.boost.seed = static_cast<uint64_t>(parse_number(value, "seed"));
        spec.seed_set = true;
      } else {
        apply_tree_param(spec.boost.base.tree, key, value);
      }
    }
    spec.boost.validate();
    return spec;
  }
  throw std::invalid_argument("unknown learner '" + name + "' (use nb|stump|j48|adaboost)");
}

namespace {

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string format_tree_params(const TreeParams& t) {
  std::ostringstream out;
  out << "C=" << format_number(t.confidence) << ", M=" << t.min_instances;
  if (t.pruning == PruneMode::ReducedError) {
    out << ", N=" << t.reduced_error_folds << ", prune=reduced";
  } else if (t.pruning == PruneMode::None) {
    out << ", prune=none";
  }
  return out.str();
}

}  // namespace

std::string format_learner_spec(const LearnerSpec& spec) {
  switch (spec.kind) {
    case LearnerSpec::kNaiveBayes:
      return "nb";
    case LearnerSpec::kStump:
      return "stump";
    case LearnerSpec::kTree:
      return "j48(" + format_tree_params(spec.tree) + ")";
    case LearnerSpec::kBoost: {
      std::ostringstream out;
      out << "adaboost(base=" << (spec.boost.base.stump ? "stump" : "j48")
          << ", I=" << spec.boost.iterations << ", P=" << spec.boost.weight_threshold
          << ", Q=" << (spec.boost.resample ? "on" : "off");
      if (!spec.boost.base.stump) out << ", " << format_tree_params(spec.boost.base.tree);
      out << ")";
      return out.str();
    }
  }
  throw std::logic_error("unreachable");
}

void apply_learner_param(LearnerSpec& spec, const std::string& name, double value) {
  std::string k = lower(name);
  if (spec.kind == LearnerSpec::kBoost) {
    if (k == "p") {
      spec.boost.weight_threshold = static_cast<int>(std::lround(value));
      return;
    }
    if (k == "i") {
      spec.boost.iterations = static_cast<int>(std::lround(value));
      return;
    }
    if (k == "q") {
      spec.boost.resample = value != 0.0;
      return;
    }
    TreeParams& t = spec.boost.base.tree;
    if (k == "c") {
      t.confidence = value;
    } else if (k == "m") {
      t.min_instances = static_cast<int>(std::lround(value));
    } else if (k == "n") {
      t.reduced_error_folds = static_cast<int>(std::lround(value));
    } else {
      throw std::invalid_argument("unknown tunable parameter '" + name + "'");
    }
    return;
  }
  if (spec.kind == LearnerSpec::kTree) {
    apply_tree_param(spec.tree, name, format_number(value));
    return;
  }
  throw std::invalid_argument("learner has no tunable parameter '" + name + "'");
}

std::unique_ptr<Classifier> train_learner(const LearnerSpec& spec, const Dataset& ds,
                                          uint64_t default_seed) {
  switch (spec.kind) {
    case LearnerSpec::kNaiveBayes:
      return std::make_unique<NaiveBayesModel>(train_nb(ds));
    case LearnerSpec::kStump:
      return std::make_unique<DecisionTreeModel>(train_stump(ds));
    case LearnerSpec::kTree: {
      TreeParams params = spec.tree;
      if (!spec.seed_set) params.seed = default_seed;
      return std::make_unique<DecisionTreeModel>(train_tree(ds, params));
    }
    case LearnerSpec::kBoost: {
      BoostParams params = spec.boost;
      if (!spec.seed_set) params.seed = default_seed;
      return std::make_unique<BoostEnsemble>(boost_train(ds, params));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace miniboost
