#pragma once

// Seeded synthetic dataset generators shared by the unit and acceptance
// suites. Interaction-heavy generators favor tree ensembles; the
// conditionally independent one favors Naive Bayes.

#include <cmath>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "rng.hpp"

namespace synth {

using miniboost::AttrKind;
using miniboost::Attribute;
using miniboost::Dataset;
using miniboost::Instance;
using miniboost::Rng;
using miniboost::Schema;

inline Attribute nominal(const std::string& name, std::vector<std::string> values) {
  Attribute a;
  a.name = name;
  a.kind = AttrKind::Nominal;
  a.values = std::move(values);
  return a;
}

inline Attribute numeric(const std::string& name) {
  Attribute a;
  a.name = name;
  a.kind = AttrKind::Numeric;
  return a;
}

inline Schema binary_schema(int feature_count, bool numeric_features) {
  Schema schema;
  schema.relation = "synthetic";
  for (int i = 0; i < feature_count; ++i) {
    std::string name = "f" + std::to_string(i);
    schema.attributes.push_back(numeric_features ? numeric(name) : nominal(name, {"0", "1"}));
  }
  schema.attributes.push_back(nominal("class", {"a", "b"}));
  schema.class_index = feature_count;
  return schema;
}

// class = parity of three binary attributes, plus noise attributes and 5%
// label noise; stumps cannot see parity, trees can
inline Dataset parity(int n, uint64_t seed) {
  Rng rng(seed);
  Dataset ds(binary_schema(5, false));
  for (int i = 0; i < n; ++i) {
    Instance inst;
    int bits[5];
    for (int& b : bits) b = static_cast<int>(rng.below(2));
    int label = (bits[0] + bits[1] + bits[2]) % 2;
    if (rng.unit() < 0.05) label = 1 - label;
    inst.values = {double(bits[0]), double(bits[1]), double(bits[2]),
                   double(bits[3]), double(bits[4]), double(label)};
    ds.add(std::move(inst));
  }
  return ds;
}

// class = inside either of two axis-aligned rectangles in [0,10]^2
inline Dataset rectangles(int n, uint64_t seed) {
  Rng rng(seed);
  Schema schema;
  schema.relation = "rects";
  schema.attributes = {numeric("x"), numeric("y"), nominal("class", {"in", "out"})};
  schema.class_index = 2;
  Dataset ds(std::move(schema));
  for (int i = 0; i < n; ++i) {
    double x = rng.unit() * 10.0;
    double y = rng.unit() * 10.0;
    bool inside = (x > 1.0 && x < 4.0 && y > 1.0 && y < 4.0) ||
                  (x > 6.0 && x < 9.0 && y > 5.0 && y < 9.0);
    if (rng.unit() < 0.03) inside = !inside;
    Instance inst;
    inst.values = {x, y, inside ? 0.0 : 1.0};
    ds.add(std::move(inst));
  }
  return ds;
}

// three classes decided by rules over pairs of nominal attributes
inline Dataset rules(int n, uint64_t seed) {
  Rng rng(seed);
  Schema schema;
  schema.relation = "rules";
  schema.attributes = {nominal("shape", {"circle", "square", "triangle"}),
                       nominal("tone", {"light", "dark"}),
                       nominal("size", {"small", "medium", "large"}),
                       nominal("class", {"k0", "k1", "k2"})};
  schema.class_index = 3;
  Dataset ds(std::move(schema));
  for (int i = 0; i < n; ++i) {
    int shape = static_cast<int>(rng.below(3));
    int tone = static_cast<int>(rng.below(2));
    int size = static_cast<int>(rng.below(3));
    int label;
    if (shape == 0 && tone == 1) label = 0;
    else if (shape == 2 || size == 2) label = 1;
    else label = 2;
    if (rng.unit() < 0.05) label = static_cast<int>(rng.below(3));
    Instance inst;
    inst.values = {double(shape), double(tone), double(size), double(label)};
    ds.add(std::move(inst));
  }
  return ds;
}

// conditionally independent gaussians per class: Naive Bayes territory
inline Dataset independent_gaussians(int n, uint64_t seed) {
  Rng rng(seed);
  Schema schema;
  schema.relation = "gaussians";
  schema.attributes = {numeric("g0"), numeric("g1"), numeric("g2"),
                       nominal("class", {"a", "b"})};
  schema.class_index = 3;
  Dataset ds(std::move(schema));
  auto normal = [&rng]() {
    // Box-Muller on the deterministic unit draws
    double u1 = rng.unit();
    double u2 = rng.unit();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  };
  for (int i = 0; i < n; ++i) {
    int label = static_cast<int>(rng.below(2));
    double shift = label == 0 ? -1.0 : 1.0;
    Instance inst;
    inst.values = {normal() + shift, normal() + 0.5 * shift, normal() - 0.5 * shift,
                   double(label)};
    ds.add(std::move(inst));
  }
  return ds;
}

// numeric xor: sign(x) == sign(y) decides the class
inline Dataset xor_numeric(int n, uint64_t seed) {
  Rng rng(seed);
  Dataset ds(binary_schema(2, true));
  for (int i = 0; i < n; ++i) {
    double x = rng.unit() * 2.0 - 1.0;
    double y = rng.unit() * 2.0 - 1.0;
    int label = (x > 0) == (y > 0) ? 0 : 1;
    if (rng.unit() < 0.03) label = 1 - label;
    Instance inst;
    inst.values = {x, y, double(label)};
    ds.add(std::move(inst));
  }
  return ds;
}

// the 4-instance XOR over two binary nominal attributes
inline Dataset xor4() {
  Dataset ds(binary_schema(2, false));
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Instance inst;
      inst.values = {double(a), double(b), double(a ^ b)};
      ds.add(std::move(inst));
    }
  }
  return ds;
}

// mixed dataset with missing cells sprinkled in
inline Dataset with_missing(int n, uint64_t seed) {
  Rng rng(seed);
  Schema schema;
  schema.relation = "missing";
  schema.attributes = {nominal("m0", {"u", "v", "w"}), numeric("m1"),
                       nominal("class", {"a", "b"})};
  schema.class_index = 2;
  Dataset ds(std::move(schema));
  for (int i = 0; i < n; ++i) {
    int v0 = static_cast<int>(rng.below(3));
    double v1 = rng.unit() * 4.0;
    int label = (v0 == 2 || v1 > 2.5) ? 0 : 1;
    if (rng.unit() < 0.05) label = 1 - label;
    Instance inst;
    inst.values = {double(v0), v1, double(label)};
    if (rng.unit() < 0.1) inst.values[0] = miniboost::missing_value();
    if (rng.unit() < 0.1) inst.values[1] = miniboost::missing_value();
    ds.add(std::move(inst));
  }
  return ds;
}

// random small dataset for the tree-oracle comparison: unit weights, no
// missing values, 2-4 attributes, up to 16 instances
inline Dataset random_small(uint64_t seed) {
  Rng rng(seed);
  Schema schema;
  schema.relation = "random";
  int attrs = 2 + static_cast<int>(rng.below(3));  // 2..4 incl. class
  int classes = 2 + static_cast<int>(rng.below(2));
  for (int a = 0; a + 1 < attrs; ++a) {
    std::string name = "r" + std::to_string(a);
    if (rng.below(2) == 0) {
      int card = 2 + static_cast<int>(rng.below(2));
      std::vector<std::string> values;
      for (int v = 0; v < card; ++v) values.push_back("v" + std::to_string(v));
      schema.attributes.push_back(nominal(name, std::move(values)));
    } else {
      schema.attributes.push_back(numeric(name));
    }
  }
  std::vector<std::string> class_values;
  for (int c = 0; c < classes; ++c) class_values.push_back("c" + std::to_string(c));
  schema.attributes.push_back(nominal("class", std::move(class_values)));
  schema.class_index = attrs - 1;

  Dataset ds(std::move(schema));
  int n = 4 + static_cast<int>(rng.below(13));  // 4..16
  for (int i = 0; i < n; ++i) {
    Instance inst;
    inst.values.resize(attrs);
    for (int a = 0; a + 1 < attrs; ++a) {
      const Attribute& attr = ds.schema().attributes[a];
      if (attr.numeric()) {
        inst.values[a] = static_cast<double>(rng.below(8));  // small integer grid
      } else {
        inst.values[a] = static_cast<double>(rng.below(attr.values.size()));
      }
    }
    inst.values[attrs - 1] = static_cast<double>(rng.below(classes));
    ds.add(std::move(inst));
  }
  return ds;
}

struct NamedDataset {
  std::string name;
  Dataset data;
};

// the standing fixture roster used by boosting and degeneracy checks
inline std::vector<NamedDataset> fixture_roster() {
  std::vector<NamedDataset> out;
  out.push_back({"parity", parity(120, 11)});
  out.push_back({"rects", rectangles(150, 22)});
  out.push_back({"rules", rules(120, 33)});
  out.push_back({"gaussians", independent_gaussians(120, 44)});
  out.push_back({"xor_numeric", xor_numeric(100, 55)});
  out.push_back({"xor4", xor4()});
  out.push_back({"missing", with_missing(120, 66)});
  return out;
}

}  // namespace synth
