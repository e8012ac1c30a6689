#include "hatepipe/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hatepipe/error.hpp"
#include "hatepipe/random.hpp"

namespace hatepipe {

double PlattCalibration::probability(double decision) const {
  const double z = a * decision + b;
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

SVMModel train_svm(const LabeledVectors& train, const SvmHyper& hyper) {
  if (train.num_classes != 2) {
    throw TrainingError("linear SVM needs exactly two classes, got " +
                        std::to_string(train.num_classes));
  }
  if (train.empty()) throw TrainingError("cannot train an SVM on an empty dataset");
  const auto counts = train.class_counts();
  if (counts[0] == 0 || counts[1] == 0) {
    throw TrainingError("all training instances belong to one class");
  }
  if (!(hyper.lambda > 0.0)) throw TrainingError("SVM lambda must be > 0");
  if (hyper.epochs < 1) throw TrainingError("SVM needs at least one epoch");

  SVMModel model;
  model.lambda = hyper.lambda;
  model.positive_class = 1;

  // w = scale * v keeps the shrink step O(1) for sparse inputs.
  std::vector<double> v(train.dimension, 0.0);
  double scale = 1.0;
  double bias = 0.0;
  std::vector<std::size_t> order(train.size());
  Rng rng(hyper.seed);
  std::uint64_t t = 0;
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(order), rng);
    for (auto i : order) {
      ++t;
      const auto& x = train.x[i];
      const double y = svm_sign(train.y[i], model.positive_class);
      const double eta = 1.0 / (hyper.lambda * static_cast<double>(t));
      const double margin = y * (scale * x.dot(v) + bias);
      const double shrink = 1.0 - eta * hyper.lambda;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
      } else {
        scale *= shrink;
      }
      if (margin < 1.0) {
        const double step = eta * y / scale;
        for (const auto& [index, weight] : x) v[index] += step * weight;
        bias += eta * y;
      }
      if (scale < 1e-9) {
        for (auto& vi : v) vi *= scale;
        scale = 1.0;
      }
    }
  }
  model.weights.resize(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) model.weights[j] = scale * v[j];
  model.bias = bias;
  for (double w : model.weights) {
    if (!std::isfinite(w)) throw TrainingError("SVM training diverged");
  }
  if (!std::isfinite(model.bias)) throw TrainingError("SVM training diverged");

  std::vector<double> decisions;
  decisions.reserve(train.size());
  std::vector<bool> positive_flags;
  positive_flags.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    decisions.push_back(train.x[i].dot(model.weights) + model.bias);
    positive_flags.push_back(train.y[i] == model.positive_class);
  }
  model.calibration = fit_platt(decisions, positive_flags);
  return model;
}

double decision_svm(const SVMModel& model, const SparseVector& x) {
  if (x.dimension() != model.dimension()) {
    throw ValidationError("feature dimension " + std::to_string(x.dimension()) +
                          " does not match model dimension " + std::to_string(model.dimension()));
  }
  return x.dot(model.weights) + model.bias;
}

SvmPrediction predict_svm(const SVMModel& model, const SparseVector& x) {
  SvmPrediction out;
  out.decision = decision_svm(model, x);
  out.label = out.decision > 0.0 ? model.positive_class : 1 - model.positive_class;
  const double p = model.calibration.probability(out.decision);
  out.distribution.probabilities.assign(2, 0.0);
  out.distribution.probabilities[model.positive_class] = p;
  out.distribution.probabilities[1 - model.positive_class] = 1.0 - p;
  return out;
}

double svm_objective(const LabeledVectors& data, std::span<const double> w, double b,
                     double lambda, std::size_t positive_class) {
  double norm = 0.0;
  for (double wi : w) norm += wi * wi;
  double loss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double y = svm_sign(data.y[i], positive_class);
    loss += std::max(0.0, 1.0 - y * (data.x[i].dot(w) + b));
  }
  return 0.5 * lambda * norm + (data.empty() ? 0.0 : loss / static_cast<double>(data.size()));
}

SvmSubgradient svm_subgradient(const LabeledVectors& data, std::span<const double> w, double b,
                               double lambda, std::size_t positive_class) {
  SvmSubgradient g;
  g.w.resize(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) g.w[j] = lambda * w[j];
  if (data.empty()) return g;
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double y = svm_sign(data.y[i], positive_class);
    if (y * (data.x[i].dot(w) + b) < 1.0) {
      for (const auto& [index, weight] : data.x[i]) g.w[index] -= inv_n * y * weight;
      g.b -= inv_n * y;
    }
  }
  return g;
}

PlattCalibration fit_platt(std::span<const double> decisions, const std::vector<bool>& positive) {
  constexpr int kMaxIterations = 100;
  constexpr double kTolerance = 1e-10;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;

  const std::size_t n = decisions.size();
  double num_pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) num_pos += positive[i] ? 1.0 : 0.0;
  const double num_neg = static_cast<double>(n) - num_pos;
  const double hi_target = (num_pos + 1.0) / (num_pos + 2.0);
  const double lo_target = 1.0 / (num_neg + 2.0);
  std::vector<double> target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = positive[i] ? hi_target : lo_target;

  auto objective = [&](double a, double b) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = decisions[i] * a + b;
      if (z >= 0.0) {
        f += target[i] * z + std::log1p(std::exp(-z));
      } else {
        f += (target[i] - 1.0) * z + std::log1p(std::exp(z));
      }
    }
    return f;
  };

  PlattCalibration cal{0.0, std::log((num_neg + 1.0) / (num_pos + 1.0))};
  double fval = objective(cal.a, cal.b);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = decisions[i] * cal.a + cal.b;
      double p, q;
      if (z >= 0.0) {
        const double e = std::exp(-z);
        p = e / (1.0 + e);
        q = 1.0 / (1.0 + e);
      } else {
        const double e = std::exp(z);
        p = 1.0 / (1.0 + e);
        q = e / (1.0 + e);
      }
      const double d2 = p * q;
      h11 += decisions[i] * decisions[i] * d2;
      h22 += d2;
      h21 += decisions[i] * d2;
      const double d1 = target[i] - p;
      g1 += decisions[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < kTolerance && std::abs(g2) < kTolerance) break;

    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    bool moved = false;
    while (step >= kMinStep) {
      const double na = cal.a + step * da;
      const double nb = cal.b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        cal = {na, nb};
        fval = nf;
        moved = true;
        break;
      }
      step /= 2.0;
    }
    if (!moved) break;
  }
  return cal;
}

}  // namespace hatepipe
