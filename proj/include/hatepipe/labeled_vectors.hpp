#pragma once

#include <cstddef>
#include <vector>

#include "hatepipe/sparse_vector.hpp"

namespace hatepipe {

// Featurized training or test data: one sparse row and class index per instance.
struct LabeledVectors {
  std::vector<SparseVector> x;
  std::vector<std::size_t> y;
  std::size_t num_classes = 0;
  std::size_t dimension = 0;

  std::size_t size() const { return x.size(); }
  bool empty() const { return x.empty(); }
  std::vector<std::size_t> class_counts() const;
};

// Probability per class label.
struct ClassDistribution {
  std::vector<double> probabilities;

  std::size_t size() const { return probabilities.size(); }
  double operator[](std::size_t c) const { return probabilities[c]; }
  // Most probable class; ties go to the lowest index.
  std::size_t argmax() const;

  bool operator==(const ClassDistribution&) const = default;
};

// Normalizes log-scores with the max-shift softmax.
ClassDistribution softmax(const std::vector<double>& log_scores);

}  // namespace hatepipe
