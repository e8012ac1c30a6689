#include "hatepipe/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hatepipe/error.hpp"

namespace hatepipe {

std::string_view to_string(NbVariant v) {
  return v == NbVariant::kMultinomial ? "multinomial" : "gaussian";
}

NBModel train_nb(const LabeledVectors& train, NbVariant variant, double alpha) {
  if (train.empty()) throw TrainingError("cannot train naive Bayes on an empty dataset");
  if (train.num_classes < 2) throw TrainingError("naive Bayes needs at least two classes");
  const auto counts = train.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) {
      throw TrainingError("class " + std::to_string(c) + " is absent from the training data");
    }
  }

  NBModel model;
  model.variant = variant;
  model.alpha = alpha;
  model.num_classes = train.num_classes;
  model.dimension = train.dimension;
  const double n = static_cast<double>(train.size());
  const double num_classes = static_cast<double>(train.num_classes);
  for (auto nc : counts) model.priors.push_back((static_cast<double>(nc) + 1.0) / (n + num_classes));

  const std::size_t dim = train.dimension;
  if (variant == NbVariant::kMultinomial) {
    if (!(alpha > 0.0)) throw TrainingError("multinomial smoothing alpha must be > 0");
    std::vector<std::vector<double>> mass(train.num_classes, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < train.size(); ++i) {
      for (const auto& [t, w] : train.x[i]) {
        if (w < 0.0) throw TrainingError("multinomial naive Bayes needs non-negative features");
        mass[train.y[i]][t] += w;
      }
    }
    for (auto& row : mass) {
      double total = 0.0;
      for (double m : row) total += m;
      const double denom = total + alpha * static_cast<double>(dim);
      for (auto& m : row) m = (m + alpha) / denom;
    }
    model.term_probabilities = std::move(mass);
    return model;
  }

  // Gaussian: dense accumulation, absent entries are zeros.
  std::vector<std::vector<double>> sum(train.num_classes, std::vector<double>(dim, 0.0));
  std::vector<double> global_sum(dim, 0.0);
  for (std::size_t i = 0; i < train.size(); ++i) {
    for (const auto& [t, w] : train.x[i]) {
      sum[train.y[i]][t] += w;
      global_sum[t] += w;
    }
  }
  model.means.assign(train.num_classes, std::vector<double>(dim, 0.0));
  for (std::size_t c = 0; c < train.num_classes; ++c) {
    for (std::size_t t = 0; t < dim; ++t) model.means[c][t] = sum[c][t] / static_cast<double>(counts[c]);
  }
  std::vector<double> global_mean(dim);
  for (std::size_t t = 0; t < dim; ++t) global_mean[t] = global_sum[t] / n;

  // Squared deviations, starting from the contribution of implicit zeros.
  std::vector<std::vector<double>> dev(train.num_classes, std::vector<double>(dim, 0.0));
  std::vector<double> global_dev(dim, 0.0);
  std::vector<std::vector<std::size_t>> present(train.num_classes, std::vector<std::size_t>(dim, 0));
  std::vector<std::size_t> global_present(dim, 0);
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto c = train.y[i];
    for (const auto& [t, w] : train.x[i]) {
      dev[c][t] += (w - model.means[c][t]) * (w - model.means[c][t]);
      global_dev[t] += (w - global_mean[t]) * (w - global_mean[t]);
      ++present[c][t];
      ++global_present[t];
    }
  }
  model.stddevs.assign(train.num_classes, std::vector<double>(dim, 0.0));
  for (std::size_t t = 0; t < dim; ++t) {
    const double zeros = n - static_cast<double>(global_present[t]);
    const double g_var =
        n > 1 ? (global_dev[t] + zeros * global_mean[t] * global_mean[t]) / (n - 1) : 0.0;
    const double g_sd = std::sqrt(std::max(0.0, g_var));
    const double floor = g_sd > 0.0 ? 1e-3 * g_sd : 1e-3;
    for (std::size_t c = 0; c < train.num_classes; ++c) {
      const double nc = static_cast<double>(counts[c]);
      const double z = nc - static_cast<double>(present[c][t]);
      const double mu = model.means[c][t];
      const double var = nc > 1 ? (dev[c][t] + z * mu * mu) / (nc - 1) : 0.0;
      model.stddevs[c][t] = std::max(std::sqrt(std::max(0.0, var)), floor);
    }
  }
  return model;
}

ClassDistribution predict_nb(const NBModel& model, const SparseVector& x) {
  if (x.dimension() != model.dimension) {
    throw ValidationError("feature dimension " + std::to_string(x.dimension()) +
                          " does not match model dimension " + std::to_string(model.dimension));
  }
  if (model.variant == NbVariant::kMultinomial && x.empty()) return {model.priors};

  std::vector<double> scores(model.num_classes);
  for (std::size_t c = 0; c < model.num_classes; ++c) {
    double s = std::log(model.priors[c]);
    if (model.variant == NbVariant::kMultinomial) {
      const auto& theta = model.term_probabilities[c];
      for (const auto& [t, w] : x) s += w * std::log(theta[t]);
    } else {
      const auto& mu = model.means[c];
      const auto& sd = model.stddevs[c];
      const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
      auto it = x.begin();
      for (std::size_t t = 0; t < model.dimension; ++t) {
        double v = 0.0;
        if (it != x.end() && it->first == t) {
          v = it->second;
          ++it;
        }
        const double z = (v - mu[t]) / sd[t];
        s -= half_log_2pi + std::log(sd[t]) + 0.5 * z * z;
      }
    }
    scores[c] = s;
  }
  return softmax(scores);
}

}  // namespace hatepipe
