#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hatepipe/labeled_vectors.hpp"

namespace hatepipe {

enum class NbVariant { kMultinomial, kGaussian };

std::string_view to_string(NbVariant v);

struct NBModel {
  NbVariant variant = NbVariant::kMultinomial;
  double alpha = 1.0;
  std::size_t num_classes = 0;
  std::size_t dimension = 0;
  // Laplace-corrected: (N_c + 1) / (N + C).
  std::vector<double> priors;
  // Multinomial: theta[c][t], each row sums to 1.
  std::vector<std::vector<double>> term_probabilities;
  // Gaussian: per class, per attribute.
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> stddevs;

  bool operator==(const NBModel&) const = default;
};

// Multinomial theta(t,c) = (count(t,c) + alpha) / (sum_t count(t,c) + alpha |V|)
// where counts are summed feature weights. Gaussian keeps per-class sample
// mean and standard deviation, the latter floored at 1e-3 times the global
// standard deviation of the attribute (1e-3 when that is zero).
// Throws TrainingError on empty data, an absent class, alpha <= 0 or negative
// multinomial feature values.
NBModel train_nb(const LabeledVectors& train, NbVariant variant, double alpha = 1.0);

// Posterior over classes. An evidence-free multinomial input returns the
// priors unchanged. Throws ValidationError on a dimension mismatch.
ClassDistribution predict_nb(const NBModel& model, const SparseVector& x);

}  // namespace hatepipe
