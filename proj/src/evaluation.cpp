#include "hatepipe/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hatepipe/error.hpp"
#include "hatepipe/random.hpp"

namespace hatepipe {

std::vector<std::size_t> stratified_test_counts(std::span<const std::size_t> class_counts,
                                                double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ValidationError("test fraction must lie strictly between 0 and 1");
  }
  const std::size_t n = std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0});
  const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(n) * fraction));

  std::vector<std::size_t> counts(class_counts.size());
  std::vector<double> remainder(class_counts.size());
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < class_counts.size(); ++c) {
    const double exact = static_cast<double>(class_counts[c]) * fraction;
    counts[c] = std::min(class_counts[c], static_cast<std::size_t>(std::floor(exact)));
    remainder[c] = exact - static_cast<double>(counts[c]);
    assigned += counts[c];
  }
  std::vector<std::size_t> order(class_counts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (auto c : order) {
    if (assigned >= target) break;
    if (counts[c] < class_counts[c]) {
      ++counts[c];
      ++assigned;
    }
  }
  return counts;
}

SplitIndices stratified_split_indices(const Dataset& ds, double fraction, std::uint64_t seed) {
  const auto class_counts = ds.class_counts();
  const auto test_counts = stratified_test_counts(class_counts, fraction);

  std::vector<std::vector<std::size_t>> members(class_counts.size());
  for (std::size_t i = 0; i < ds.size(); ++i) members[ds.label(i).index].push_back(i);

  Rng rng(seed);
  SplitIndices split;
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto& rows = members[c];
    shuffle(std::span<std::size_t>(rows), rng);
    split.test.insert(split.test.end(), rows.begin(), rows.begin() + test_counts[c]);
    split.train.insert(split.train.end(), rows.begin() + test_counts[c], rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, double fraction,
                                             std::uint64_t seed) {
  const auto split = stratified_split_indices(ds, fraction, seed);
  return {ds.subset(split.train), ds.subset(split.test)};
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels,
                                 std::vector<std::vector<std::uint64_t>> counts)
    : labels_(std::move(labels)), counts_(std::move(counts)) {
  if (counts_.size() != labels_.size()) throw ValidationError("confusion matrix must be square");
  for (const auto& row : counts_) {
    if (row.size() != labels_.size()) throw ValidationError("confusion matrix must be square");
  }
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : counts_) {
    for (auto v : row) sum += v;
  }
  return sum;
}

std::uint64_t ConfusionMatrix::correct() const {
  std::uint64_t sum = 0;
  for (std::size_t c = 0; c < counts_.size(); ++c) sum += counts_[c][c];
  return sum;
}

std::uint64_t ConfusionMatrix::row_total(std::size_t actual) const {
  std::uint64_t sum = 0;
  for (auto v : counts_.at(actual)) sum += v;
  return sum;
}

std::uint64_t ConfusionMatrix::column_total(std::size_t predicted) const {
  std::uint64_t sum = 0;
  for (const auto& row : counts_) sum += row.at(predicted);
  return sum;
}

double ConfusionMatrix::accuracy() const {
  const auto n = total();
  return n ? static_cast<double>(correct()) / static_cast<double>(n) : 0.0;
}

ConfusionMatrix confusion(std::span<const std::size_t> actuals,
                          std::span<const std::size_t> predictions,
                          std::vector<std::string> labels) {
  if (actuals.size() != predictions.size()) {
    throw ValidationError("actual and predicted label counts differ");
  }
  const auto k = labels.size();
  std::vector<std::vector<std::uint64_t>> counts(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    if (actuals[i] >= k || predictions[i] >= k) {
      throw ValidationError("unknown class label index at instance " + std::to_string(i));
    }
    ++counts[actuals[i]][predictions[i]];
  }
  return ConfusionMatrix(std::move(labels), std::move(counts));
}

double kappa(const ConfusionMatrix& cm) {
  const double n = static_cast<double>(cm.total());
  if (n == 0.0) throw EvaluationError("kappa of an empty confusion matrix");
  const double observed = static_cast<double>(cm.correct()) / n;
  double expected = 0.0;
  for (std::size_t c = 0; c < cm.num_classes(); ++c) {
    expected += static_cast<double>(cm.row_total(c)) * static_cast<double>(cm.column_total(c));
  }
  expected /= n * n;
  if (expected >= 1.0) return 0.0;
  return (observed - expected) / (1.0 - expected);
}

std::optional<double> roc_auc(std::span<const double> scores, std::span<const std::size_t> actuals,
                              std::size_t positive_class) {
  if (scores.size() != actuals.size()) throw ValidationError("score and label counts differ");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  double num_pos = 0.0;
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo;
    while (hi + 1 < order.size() && scores[order[hi + 1]] == scores[order[lo]]) ++hi;
    // 1-based ranks lo+1 .. hi+1 share their average.
    const double rank = (static_cast<double>(lo + 1) + static_cast<double>(hi + 1)) / 2.0;
    for (std::size_t k = lo; k <= hi; ++k) {
      if (actuals[order[k]] == positive_class) {
        positive_rank_sum += rank;
        num_pos += 1.0;
      }
    }
    lo = hi + 1;
  }
  const double num_neg = static_cast<double>(scores.size()) - num_pos;
  if (num_pos == 0.0 || num_neg == 0.0) return std::nullopt;
  return (positive_rank_sum - num_pos * (num_pos + 1.0) / 2.0) / (num_pos * num_neg);
}

PerClassStats per_class_stats(const ConfusionMatrix& cm,
                              std::span<const ClassDistribution> distributions,
                              std::span<const std::size_t> actuals) {
  const auto k = cm.num_classes();
  const double n = static_cast<double>(cm.total());
  PerClassStats out;
  out.classes.resize(k);
  const bool with_auc = !distributions.empty();
  if (with_auc && distributions.size() != actuals.size()) {
    throw ValidationError("distribution and label counts differ");
  }
  std::vector<double> scores(distributions.size());

  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
  for (std::size_t c = 0; c < k; ++c) {
    const double tp = static_cast<double>(cm.at(c, c));
    const double actual_pos = static_cast<double>(cm.row_total(c));
    const double predicted_pos = static_cast<double>(cm.column_total(c));
    const double fn = actual_pos - tp;
    const double fp = predicted_pos - tp;
    const double tn = n - tp - fn - fp;
    auto& s = out.classes[c];
    s.tp_rate = ratio(tp, tp + fn);
    s.recall = s.tp_rate;
    s.fp_rate = ratio(fp, fp + tn);
    s.precision = ratio(tp, tp + fp);
    s.f_measure = s.precision + s.recall > 0.0
                      ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
                      : 0.0;
    if (with_auc) {
      for (std::size_t i = 0; i < distributions.size(); ++i) scores[i] = distributions[i][c];
      s.roc_area = roc_auc(scores, actuals, c);
    }
  }

  if (n > 0.0) {
    auto& w = out.weighted;
    double auc_sum = 0.0, auc_weight = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double support = static_cast<double>(cm.row_total(c));
      const auto& s = out.classes[c];
      w.fp_rate += support * s.fp_rate;
      w.precision += support * s.precision;
      w.f_measure += support * s.f_measure;
      if (s.roc_area) {
        auc_sum += support * *s.roc_area;
        auc_weight += support;
      }
    }
    // The support-weighted TP rate is sum(TP)/N.
    w.tp_rate = cm.accuracy();
    w.recall = w.tp_rate;
    w.fp_rate /= n;
    w.precision /= n;
    w.f_measure /= n;
    if (auc_weight > 0.0) w.roc_area = auc_sum / auc_weight;
  }
  return out;
}

namespace {

void check_inputs(std::span<const ClassDistribution> distributions,
                  std::span<const std::size_t> actuals, std::span<const double> priors) {
  if (distributions.size() != actuals.size()) {
    throw ValidationError("distribution and label counts differ");
  }
  for (std::size_t i = 0; i < distributions.size(); ++i) {
    if (distributions[i].size() != priors.size() || actuals[i] >= priors.size()) {
      throw ValidationError("instance " + std::to_string(i) + " does not match the class count");
    }
  }
}

double clamp_probability(double p) {
  return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
}

}  // namespace

ErrorStats error_stats(std::span<const ClassDistribution> distributions,
                       std::span<const std::size_t> actuals, std::span<const double> priors) {
  check_inputs(distributions, actuals, priors);
  const std::size_t k = priors.size();
  double abs_model = 0.0, sq_model = 0.0, abs_prior = 0.0, sq_prior = 0.0;
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      const double y = actuals[i] == c ? 1.0 : 0.0;
      const double dm = distributions[i][c] - y;
      const double dp = priors[c] - y;
      abs_model += std::abs(dm);
      sq_model += dm * dm;
      abs_prior += std::abs(dp);
      sq_prior += dp * dp;
    }
  }
  ErrorStats out;
  if (actuals.empty()) return out;
  const double denom = static_cast<double>(actuals.size() * k);
  out.mean_absolute = abs_model / denom;
  out.root_mean_squared = std::sqrt(sq_model / denom);
  const double prior_mae = abs_prior / denom;
  const double prior_rmse = std::sqrt(sq_prior / denom);
  if (prior_mae > 0.0) out.relative_absolute = 100.0 * (abs_model / abs_prior);
  if (prior_rmse > 0.0) out.root_relative_squared = 100.0 * std::sqrt(sq_model / sq_prior);
  return out;
}

KbScores kb_scores(std::span<const ClassDistribution> distributions,
                   std::span<const std::size_t> actuals, std::span<const double> priors) {
  check_inputs(distributions, actuals, priors);
  KbScores out;
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    const double q = priors[actuals[i]];
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("K&B scores need priors strictly in (0, 1)");
    const double p = clamp_probability(distributions[i][actuals[i]]);
    const double info = p >= q ? std::log2(p / q) : -std::log2((1.0 - p) / (1.0 - q));
    out.total_bits += info;
    out.relative_percent += 100.0 * info / -std::log2(q);
  }
  if (!actuals.empty()) out.bits_per_instance = out.total_bits / static_cast<double>(actuals.size());
  return out;
}

ClassComplexity class_complexity(std::span<const ClassDistribution> distributions,
                                 std::span<const std::size_t> actuals,
                                 std::span<const double> priors) {
  check_inputs(distributions, actuals, priors);
  ClassComplexity out;
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    out.order0_bits -= std::log2(priors[actuals[i]]);
    out.scheme_bits -= std::log2(clamp_probability(distributions[i][actuals[i]]));
  }
  out.improvement_bits = out.order0_bits - out.scheme_bits;
  if (!actuals.empty()) {
    const double n = static_cast<double>(actuals.size());
    out.order0_per_instance = out.order0_bits / n;
    out.scheme_per_instance = out.scheme_bits / n;
    out.improvement_per_instance = out.improvement_bits / n;
  }
  return out;
}

EvaluationReport evaluate(std::span<const Prediction> predictions,
                          std::span<const std::size_t> actuals,
                          const std::vector<std::string>& labels, std::span<const double> priors,
                          std::string title) {
  if (predictions.empty()) throw EvaluationError("cannot evaluate on an empty test set");
  if (predictions.size() != actuals.size()) {
    throw ValidationError("prediction and label counts differ");
  }
  if (priors.size() != labels.size()) throw ValidationError("prior and label counts differ");

  std::vector<std::size_t> predicted;
  std::vector<ClassDistribution> distributions;
  predicted.reserve(predictions.size());
  distributions.reserve(predictions.size());
  for (const auto& p : predictions) {
    predicted.push_back(p.label);
    distributions.push_back(p.distribution);
  }

  EvaluationReport r;
  r.title = std::move(title);
  r.matrix = confusion(actuals, predicted, labels);
  r.num_instances = r.matrix.total();
  r.correct = r.matrix.correct();
  r.incorrect = r.num_instances - r.correct;
  const double n = static_cast<double>(r.num_instances);
  r.correct_percent = 100.0 * static_cast<double>(r.correct) / n;
  r.incorrect_percent = 100.0 * static_cast<double>(r.incorrect) / n;
  r.kappa = kappa(r.matrix);
  r.kb = kb_scores(distributions, actuals, priors);
  r.complexity = class_complexity(distributions, actuals, priors);
  r.errors = error_stats(distributions, actuals, priors);
  r.per_class = per_class_stats(r.matrix, distributions, actuals);
  return r;
}

EvaluationReport evaluate(const TrainedModel& model, const LabeledVectors& test,
                          const std::vector<std::string>& labels, std::span<const double> priors,
                          std::string title) {
  std::vector<Prediction> predictions;
  predictions.reserve(test.size());
  for (const auto& x : test.x) predictions.push_back(predict(model, x));
  return evaluate(predictions, test.y, labels, priors, std::move(title));
}

std::vector<double> laplace_priors(std::span<const std::size_t> class_counts) {
  const double n = static_cast<double>(
      std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0}));
  const double k = static_cast<double>(class_counts.size());
  std::vector<double> priors;
  priors.reserve(class_counts.size());
  for (auto c : class_counts) priors.push_back((static_cast<double>(c) + 1.0) / (n + k));
  return priors;
}

}  // namespace hatepipe
