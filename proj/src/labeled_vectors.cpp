#include "hatepipe/labeled_vectors.hpp"

#include <algorithm>
#include <cmath>

namespace hatepipe {

std::vector<std::size_t> LabeledVectors::class_counts() const {
  std::vector<std::size_t> counts(num_classes, 0);
  for (auto c : y) ++counts.at(c);
  return counts;
}

std::size_t ClassDistribution::argmax() const {
  std::size_t best = 0;
  for (std::size_t c = 1; c < probabilities.size(); ++c) {
    if (probabilities[c] > probabilities[best]) best = c;
  }
  return best;
}

ClassDistribution softmax(const std::vector<double>& log_scores) {
  ClassDistribution out;
  if (log_scores.empty()) return out;
  const double top = *std::max_element(log_scores.begin(), log_scores.end());
  out.probabilities.resize(log_scores.size());
  double total = 0.0;
  for (std::size_t c = 0; c < log_scores.size(); ++c) {
    out.probabilities[c] = std::exp(log_scores[c] - top);
    total += out.probabilities[c];
  }
  for (auto& p : out.probabilities) p /= total;
  return out;
}

}  // namespace hatepipe
