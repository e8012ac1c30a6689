#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "hatepipe/classifier.hpp"
#include "hatepipe/error.hpp"
#include "hatepipe/naive_bayes.hpp"
#include "hatepipe/svm.hpp"
#include "test_support.hpp"

namespace hatepipe {
namespace {

using testing::dense_problem;

// "bad bad" -> offensive (1), "good" -> non-offensive (0); V = {bad, good}.
LabeledVectors bad_good() { return dense_problem({{2, 0}, {0, 1}}, {1, 0}, 2); }

SparseVector dense(std::vector<double> v) { return SparseVector::from_dense(v); }

double sum(const ClassDistribution& d) {
  return std::accumulate(d.probabilities.begin(), d.probabilities.end(), 0.0);
}

void expect_distribution(const ClassDistribution& d) {
  EXPECT_NEAR(sum(d), 1.0, 1e-9);
  for (double p : d.probabilities) {
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(NaiveBayes, HandSmoothedParameters) {
  const auto m = train_nb(bad_good(), NbVariant::kMultinomial, 1.0);
  EXPECT_EQ(m.priors, (std::vector<double>{0.5, 0.5}));
  EXPECT_DOUBLE_EQ(m.term_probabilities[1][0], 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(m.term_probabilities[0][0], 1.0 / 3.0);
  for (const auto& row : m.term_probabilities) {
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-15);
  }
}

TEST(NaiveBayes, HandPosterior) {
  const auto m = train_nb(bad_good(), NbVariant::kMultinomial, 1.0);
  const auto d = predict_nb(m, dense({1, 0}));
  EXPECT_NEAR(d[1], (0.5 * 0.75) / (0.5 * 0.75 + 0.5 / 3.0), 1e-15);
  EXPECT_NEAR(d[1], 0.6923, 5e-5);
  EXPECT_EQ(d.argmax(), 1u);
}

TEST(NaiveBayes, EmptyDocumentReturnsPriors) {
  const auto train = dense_problem({{2, 0}, {0, 1}, {1, 1}}, {1, 0, 0}, 2);
  const auto m = train_nb(train, NbVariant::kMultinomial, 1.0);
  EXPECT_EQ(predict_nb(m, SparseVector::from_entries({}, 2)).probabilities, m.priors);
}

TEST(NaiveBayes, SymmetricModelIsUniform) {
  const auto m = train_nb(dense_problem({{1, 1}, {1, 1}}, {0, 1}, 2), NbVariant::kMultinomial);
  const auto d = predict_nb(m, dense({3, 1}));
  EXPECT_EQ(d[0], 0.5);
  EXPECT_EQ(d[1], 0.5);
  EXPECT_EQ(d.argmax(), 0u);  // tie goes to the lowest index
}

TEST(NaiveBayes, TrainingErrors) {
  EXPECT_THROW(train_nb(dense_problem({{1}}, {0}, 2), NbVariant::kMultinomial), TrainingError);
  EXPECT_THROW(train_nb(dense_problem({{1}}, {0}, 1), NbVariant::kMultinomial), TrainingError);
  EXPECT_THROW(train_nb(dense_problem({}, {}, 2), NbVariant::kMultinomial), TrainingError);
  EXPECT_THROW(train_nb(dense_problem({{-1}, {1}}, {0, 1}, 2), NbVariant::kMultinomial), TrainingError);
  EXPECT_THROW(train_nb(bad_good(), NbVariant::kMultinomial, 0.0), TrainingError);
}

TEST(NaiveBayes, DimensionMismatch) {
  const auto m = train_nb(bad_good(), NbVariant::kMultinomial);
  EXPECT_THROW(predict_nb(m, dense({1, 0, 0})), ValidationError);
}

TEST(NaiveBayes, GaussianZeroVarianceIsFloored) {
  const auto train = dense_problem({{1, 0}, {1, 2}, {1, 4}, {3, 1}, {5, 3}}, {0, 0, 0, 1, 1}, 2);
  const auto m = train_nb(train, NbVariant::kGaussian);
  // Sample std of attribute 0 over {1,1,1,3,5}: mean 2.2, squared deviations 12.8.
  const double global = std::sqrt(12.8 / 4.0);
  EXPECT_DOUBLE_EQ(m.stddevs[0][0], 1e-3 * global);
  EXPECT_DOUBLE_EQ(m.means[0][1], 2.0);
  EXPECT_DOUBLE_EQ(m.stddevs[0][1], 2.0);
  const auto d = predict_nb(m, dense({1, 2}));
  expect_distribution(d);
  EXPECT_EQ(d.argmax(), 0u);
  expect_distribution(predict_nb(m, dense({100, -7})));
}

TEST(NaiveBayes, GaussianConstantAttributeUsesAbsoluteFloor) {
  const auto m = train_nb(dense_problem({{2}, {2}}, {0, 1}, 2), NbVariant::kGaussian);
  EXPECT_EQ(m.stddevs[0][0], 1e-3);
  EXPECT_EQ(m.stddevs[1][0], 1e-3);
}

// predict_nb against an explicit product of probabilities.
TEST(NaiveBayes, MatchesBruteForceOracle) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t v = 1 + rng() % 5;
    const std::size_t classes = 2 + rng() % 2;
    const std::size_t n = classes + rng() % (6 - classes);
    std::vector<std::vector<int>> docs(n, std::vector<int>(v));
    std::vector<std::size_t> labels(n);
    for (std::size_t d = 0; d < n; ++d) {
      labels[d] = d < classes ? d : rng() % classes;
      for (auto& c : docs[d]) c = static_cast<int>(rng() % 4);
    }
    std::vector<std::vector<double>> rows;
    for (const auto& doc : docs) rows.emplace_back(doc.begin(), doc.end());
    const double alpha = trial % 3 == 0 ? 0.5 : 1.0;
    const auto m = train_nb(dense_problem(rows, labels, classes), NbVariant::kMultinomial, alpha);
    for (int q = 0; q < 5; ++q) {
      std::vector<int> query(v);
      for (auto& c : query) c = static_cast<int>(rng() % 4);
      const auto expected = testing::brute_force_nb_posterior(docs, labels, classes, alpha, query);
      const auto got = predict_nb(m, dense(std::vector<double>(query.begin(), query.end())));
      for (std::size_t c = 0; c < classes; ++c) EXPECT_NEAR(got[c], expected[c], 1e-9);
    }
  }
}

TEST(Softmax, ShiftInvariance) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> scores(2 + rng() % 3);
    for (auto& s : scores) s = u(rng);
    auto shifted = scores;
    const double c = u(rng);
    for (auto& s : shifted) s += c;
    const auto a = softmax(scores);
    const auto b = softmax(shifted);
    expect_distribution(a);
    for (std::size_t i = 0; i < scores.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
    EXPECT_EQ(a.argmax(), b.argmax());
  }
}

TEST(Svm, SeparableToyTrainsToFullAccuracy) {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> labels;
  for (int copy = 0; copy < 10; ++copy) {
    rows.push_back({0, 0});
    labels.push_back(0);
    rows.push_back({1, 1});
    labels.push_back(1);
  }
  const auto train = dense_problem(rows, labels, 2);
  const auto m = train_svm(train, {});
  for (std::size_t i = 0; i < train.size(); ++i) EXPECT_EQ(predict_svm(m, train.x[i]).label, train.y[i]);
}

LabeledVectors random_problem(std::uint64_t seed, std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = i % 2;
    for (std::size_t j = 0; j < dim; ++j) rows[i][j] = g(rng) + (labels[i] ? 0.5 : -0.5) * (j == 0);
  }
  return dense_problem(rows, labels, 2);
}

TEST(Svm, DeterministicForFixedSeed) {
  const auto train = random_problem(9, 60, 4);
  const auto a = train_svm(train, {1e-2, 5, 42});
  const auto b = train_svm(train, {1e-2, 5, 42});
  EXPECT_EQ(a, b);
  EXPECT_NE(a.weights, train_svm(train, {1e-2, 5, 43}).weights);
}

TEST(Svm, ObjectiveBeatsZeroStart) {
  const auto train = random_problem(2024, 50, 5);
  const std::vector<double> zero(5, 0.0);
  EXPECT_EQ(svm_objective(train, zero, 0.0, 1e-4), 1.0);
  for (double lambda : {1e-4, 1e-3, 1e-2, 1e-1}) {
    const auto m = train_svm(train, {lambda, 10, 1});
    EXPECT_LE(svm_objective(train, m.weights, m.bias, lambda), 1.0) << "lambda " << lambda;
  }
}

TEST(Svm, DecisionAndLabelRule) {
  SVMModel m;
  m.weights = {0, 0};
  EXPECT_EQ(decision_svm(m, dense({3, 4})), 0.0);
  EXPECT_EQ(predict_svm(m, dense({3, 4})).label, 0u);
  m.weights = {0.5, 0};
  m.bias = -0.5;
  EXPECT_EQ(decision_svm(m, dense({3, 1})), 1.0);
  EXPECT_EQ(predict_svm(m, dense({3, 1})).label, 1u);
  EXPECT_THROW(decision_svm(m, dense({1})), ValidationError);
}

TEST(Svm, CalibrationIsIncreasingInDecision) {
  const auto train = random_problem(5, 80, 3);
  const auto m = train_svm(train, {1e-2, 10, 1});
  EXPECT_LT(m.calibration.a, 0.0);
  for (double f = -5; f < 5; f += 0.5) {
    EXPECT_LT(m.calibration.probability(f), m.calibration.probability(f + 1));
    expect_distribution(predict_svm(m, dense({f, 0, 1})).distribution);
  }
}

TEST(Svm, PlattFitOnSeparatedDecisions) {
  const std::vector<double> f = {-3, -2, -1, -0.5, 0.5, 1, 2, 3};
  const std::vector<bool> pos = {false, false, false, true, false, true, true, true};
  const auto cal = fit_platt(f, pos);
  EXPECT_LT(cal.a, 0.0);
  EXPECT_GT(cal.probability(3), 0.5);
  EXPECT_LT(cal.probability(-3), 0.5);
  // Extreme arguments stay finite and inside [0, 1].
  EXPECT_EQ((PlattCalibration{-1, 0}.probability(1e6)), 1.0);
  EXPECT_EQ((PlattCalibration{-1, 0}.probability(-1e6)), 0.0);
}

TEST(Svm, TrainingErrors) {
  EXPECT_THROW(train_svm(dense_problem({{1}, {2}, {3}}, {0, 1, 2}, 3), {}), TrainingError);
  EXPECT_THROW(train_svm(dense_problem({{1}, {2}}, {1, 1}, 2), {}), TrainingError);
  EXPECT_THROW(train_svm(bad_good(), {0.0, 1, 1}), TrainingError);
  EXPECT_THROW(train_svm(bad_good(), {1e-4, 0, 1}), TrainingError);
}

// Central differences at points where no instance sits on the hinge.
TEST(Svm, SubgradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  int checked = 0;
  while (checked < 100) {
    const std::size_t dim = 1 + rng() % 5;
    const auto data = random_problem(rng(), 3 + rng() % 10, dim);
    std::vector<double> w(dim);
    for (auto& wi : w) wi = g(rng);
    const double b = g(rng);
    const double lambda = std::pow(10.0, -static_cast<double>(rng() % 4));
    bool kink = false;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double y = svm_sign(data.y[i], 1);
      if (std::abs(1.0 - y * (data.x[i].dot(w) + b)) < 1e-3) kink = true;
    }
    if (kink) continue;
    ++checked;
    const auto grad = svm_subgradient(data, w, b, lambda);
    const double h = 1e-6;
    double scale = 1.0;
    for (double gi : grad.w) scale = std::max(scale, std::abs(gi));
    scale = std::max(scale, std::abs(grad.b));
    for (std::size_t j = 0; j <= dim; ++j) {
      auto wp = w, wm = w;
      double bp = b, bm = b;
      if (j < dim) {
        wp[j] += h;
        wm[j] -= h;
      } else {
        bp += h;
        bm -= h;
      }
      const double fd = (svm_objective(data, wp, bp, lambda) - svm_objective(data, wm, bm, lambda)) / (2 * h);
      const double analytic = j < dim ? grad.w[j] : grad.b;
      EXPECT_LE(std::abs(fd - analytic) / scale, 1e-4);
    }
  }
}

TEST(Classifier, DistributionsAreNormalized) {
  std::mt19937_64 rng(44);
  const auto train = random_problem(8, 40, 3);
  auto positive = train;
  for (auto& x : positive.x) {
    std::vector<double> d = x.to_dense();
    for (auto& v : d) v = std::abs(v);
    x = SparseVector::from_dense(d);
  }
  const std::vector<TrainedModel> models = {train_nb(positive, NbVariant::kMultinomial),
                                            train_nb(train, NbVariant::kGaussian), train_svm(train, {})};
  std::normal_distribution<double> g(0, 10);
  for (const auto& model : models) {
    for (int i = 0; i < 200; ++i) {
      std::vector<double> x(3);
      for (auto& v : x) v = std::holds_alternative<NBModel>(model) ? std::abs(g(rng)) : g(rng);
      const auto p = predict(model, dense(x));
      expect_distribution(p.distribution);
      EXPECT_LT(p.label, 2u);
    }
  }
}

}  // namespace
}  // namespace hatepipe
