#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hatepipe/labeled_vectors.hpp"

namespace hatepipe {

struct SvmHyper {
  double lambda = 1e-4;
  std::size_t epochs = 10;
  std::uint64_t seed = 1;
};

// Sigmoid p(positive | f) = 1 / (1 + exp(a f + b)).
struct PlattCalibration {
  double a = 0.0;
  double b = 0.0;

  double probability(double decision) const;
  bool operator==(const PlattCalibration&) const = default;
};

struct SVMModel {
  std::vector<double> weights;
  double bias = 0.0;
  double lambda = 1e-4;
  PlattCalibration calibration;
  // Class index mapped to y = +1; the other class is y = -1.
  std::size_t positive_class = 1;

  std::size_t dimension() const { return weights.size(); }
  bool operator==(const SVMModel&) const = default;
};

// Minimizes (lambda/2)|w|^2 + (1/N) sum max(0, 1 - y (w.x + b)) by stochastic
// subgradient descent with step 1/(lambda t), a seeded shuffle per epoch and an
// unregularized bias, then fits Platt calibration on the training decisions.
// Throws TrainingError unless there are exactly two classes, both present.
SVMModel train_svm(const LabeledVectors& train, const SvmHyper& hyper);

// f = w.x + b. Throws ValidationError on a dimension mismatch.
double decision_svm(const SVMModel& model, const SparseVector& x);

struct SvmPrediction {
  std::size_t label = 0;  // positive iff f > 0, otherwise class 0
  double decision = 0.0;
  ClassDistribution distribution;  // calibrated
};

SvmPrediction predict_svm(const SVMModel& model, const SparseVector& x);

// +1 for the positive class, -1 otherwise.
inline double svm_sign(std::size_t label, std::size_t positive_class) {
  return label == positive_class ? 1.0 : -1.0;
}

double svm_objective(const LabeledVectors& data, std::span<const double> w, double b,
                     double lambda, std::size_t positive_class = 1);

struct SvmSubgradient {
  std::vector<double> w;
  double b = 0.0;
};

// Subgradient of svm_objective; instances exactly on the margin contribute 0.
SvmSubgradient svm_subgradient(const LabeledVectors& data, std::span<const double> w, double b,
                               double lambda, std::size_t positive_class = 1);

// Newton fit of the sigmoid to decision values with Platt's smoothed targets
// (at most 100 iterations, gradient tolerance 1e-10, backtracking line search).
PlattCalibration fit_platt(std::span<const double> decisions, const std::vector<bool>& positive);

}  // namespace hatepipe
