#include "hatepipe/classifier.hpp"

namespace hatepipe {

Prediction predict(const TrainedModel& model, const SparseVector& x) {
  if (const auto* nb = std::get_if<NBModel>(&model)) {
    Prediction out;
    out.distribution = predict_nb(*nb, x);
    out.label = out.distribution.argmax();
    out.score = out.distribution[out.label];
    return out;
  }
  auto svm = predict_svm(std::get<SVMModel>(model), x);
  return {svm.label, std::move(svm.distribution), svm.decision};
}

std::size_t model_dimension(const TrainedModel& model) {
  if (const auto* nb = std::get_if<NBModel>(&model)) return nb->dimension;
  return std::get<SVMModel>(model).dimension();
}

std::string model_kind(const TrainedModel& model) {
  if (const auto* nb = std::get_if<NBModel>(&model)) {
    return nb->variant == NbVariant::kMultinomial ? "nb-multinomial" : "nb-gaussian";
  }
  return "svm";
}

}  // namespace hatepipe
