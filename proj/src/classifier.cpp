#include "classifier.hpp"

#include <stdexcept>

namespace miniboost {

int argmax_index(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("argmax of empty vector");
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

}  // namespace miniboost
