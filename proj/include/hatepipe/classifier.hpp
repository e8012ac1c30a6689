#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "hatepipe/naive_bayes.hpp"
#include "hatepipe/svm.hpp"

namespace hatepipe {

using TrainedModel = std::variant<NBModel, SVMModel>;

struct Prediction {
  std::size_t label = 0;
  ClassDistribution distribution;
  // SVM: decision value. Naive Bayes: posterior of the predicted label.
  double score = 0.0;
};

Prediction predict(const TrainedModel& model, const SparseVector& x);

std::size_t model_dimension(const TrainedModel& model);

// "nb-multinomial", "nb-gaussian" or "svm".
std::string model_kind(const TrainedModel& model);

}  // namespace hatepipe
