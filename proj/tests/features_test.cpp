#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hatepipe/error.hpp"
#include "hatepipe/features.hpp"
#include "hatepipe/sparse_vector.hpp"

namespace hatepipe {
namespace {

using Strings = std::vector<std::string>;

VocabularyConfig words(std::size_t lo, std::size_t hi, std::size_t min_df) {
  return {Analyzer::kWord, lo, hi, min_df};
}

Strings terms(const Vocabulary& v) {
  Strings out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v.term(i));
  return out;
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("kill them all"), (Strings{"kill", "them", "all"}));
  EXPECT_EQ(tokenize(""), Strings{});
  EXPECT_EQ(tokenize("don't stop-now"), (Strings{"don't", "stop", "now"}));
  EXPECT_EQ(tokenize("a,b!!c  \t9"), (Strings{"a", "b", "c", "9"}));
  EXPECT_EQ(tokenize("caf\xc3\xa9\xe3\x80\x80ok"), (Strings{"caf\xc3\xa9", "ok"}));
}

TEST(Analyze, WordAndCharNgrams) {
  EXPECT_EQ(analyze("a b c", words(1, 2, 1)), (Strings{"a", "b", "c", "a b", "b c"}));
  EXPECT_EQ(analyze("abc", {Analyzer::kChar, 2, 2, 1}), (Strings{"ab", "bc"}));
  // Character n-grams count code points, not bytes.
  EXPECT_EQ(analyze("\xc3\xa9z", {Analyzer::kChar, 2, 2, 1}), (Strings{"\xc3\xa9z"}));
}

TEST(BuildVocabulary, Examples) {
  const Strings corpus = {"a b", "b c"};
  const auto v = build_vocabulary(corpus, words(1, 1, 1));
  EXPECT_EQ(terms(v), (Strings{"a", "b", "c"}));
  EXPECT_EQ(v.df(*v.index_of("b")), 2u);
  EXPECT_EQ(v.doc_count(), 2u);
  EXPECT_EQ(terms(build_vocabulary(corpus, words(1, 1, 2))), Strings{"b"});
  EXPECT_EQ(terms(build_vocabulary(Strings{"abc"}, {Analyzer::kChar, 2, 2, 1})), (Strings{"ab", "bc"}));
}

TEST(BuildVocabulary, EmptyCorpusFails) {
  EXPECT_THROW(build_vocabulary(Strings{}, words(1, 1, 1)), ValidationError);
}

TEST(BuildVocabulary, InvariantsAndPermutationIndependence) {
  std::mt19937_64 rng(4);
  const Strings pool = {"x", "y", "zz", "don't", "y-x", "q"};
  for (int trial = 0; trial < 100; ++trial) {
    Strings corpus(1 + rng() % 8);
    for (auto& doc : corpus) {
      for (std::size_t i = 0, n = rng() % 6; i < n; ++i) doc += pool[rng() % pool.size()] + " ";
    }
    const auto config = words(1, 1 + rng() % 2, 1 + rng() % 2);
    const auto v = build_vocabulary(corpus, config);
    const auto names = terms(v);
    EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
    EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_GE(v.df(i), config.min_df);
      EXPECT_LE(v.df(i), corpus.size());
      EXPECT_EQ(v.index_of(v.term(i)), i);
    }
    Strings shuffled = corpus;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(build_vocabulary(shuffled, config), v);
  }
}

TEST(Vectorize, Examples) {
  const auto v = build_vocabulary(Strings{"a", "a b"}, words(1, 1, 1));
  EXPECT_TRUE(vectorize("zzz qq", v, Weighting::kTfidf).empty());
  const auto tf = vectorize("a a b", v, Weighting::kTf);
  EXPECT_EQ(tf.dimension(), 2u);
  EXPECT_EQ(tf.get(0), 2.0);
  EXPECT_EQ(tf.get(1), 1.0);
  // D = 2, df(a) = 2: idf = ln(3/3) = 0, so the weight is dropped.
  EXPECT_TRUE(vectorize("a", v, Weighting::kTfidf).empty());
  EXPECT_DOUBLE_EQ(vectorize("b b", v, Weighting::kTfidf).get(1), 2.0 * std::log(3.0 / 2.0));
  EXPECT_EQ(vectorize("a a b", v, Weighting::kBinary).get(0), 1.0);
}

TEST(Vectorize, L2Option) {
  const auto v = build_vocabulary(Strings{"a", "b", "c"}, words(1, 1, 1));
  const auto x = vectorize("a b b", v, Weighting::kTf, true);
  EXPECT_NEAR(x.squared_norm(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(x.get(1), 2.0 / std::sqrt(5.0));
}

TEST(Vectorize, TfLinearityAndSharedSupport) {
  std::mt19937_64 rng(6);
  const Strings pool = {"a", "b", "c", "d", "e"};
  Strings corpus;
  for (int i = 0; i < 20; ++i) corpus.push_back(pool[rng() % 5] + " " + pool[rng() % 5] + " " + pool[rng() % 5]);
  const auto v = build_vocabulary(corpus, words(1, 2, 1));
  for (int trial = 0; trial < 100; ++trial) {
    std::string doc;
    for (std::size_t i = 0, n = rng() % 6; i < n; ++i) doc += pool[rng() % 5] + " ";
    const auto tf = vectorize(doc, v, Weighting::kTf);
    const auto binary = vectorize(doc, v, Weighting::kBinary);
    ASSERT_EQ(tf.nonzeros(), binary.nonzeros());
    for (std::size_t i = 0; i < tf.nonzeros(); ++i) {
      EXPECT_EQ(tf.entries()[i].first, binary.entries()[i].first);
    }
    // Repeating a document k times scales its unigram counts by k; n-grams
    // crossing the seam are excluded by comparing unigrams only.
    const auto unigrams = build_vocabulary(corpus, words(1, 1, 1));
    const int k = 1 + static_cast<int>(rng() % 4);
    std::string repeated;
    for (int r = 0; r < k; ++r) repeated += doc + " ";
    const auto base = vectorize(doc, unigrams, Weighting::kTf);
    const auto scaled = vectorize(repeated, unigrams, Weighting::kTf);
    ASSERT_EQ(base.nonzeros(), scaled.nonzeros());
    for (std::size_t i = 0; i < base.nonzeros(); ++i) {
      EXPECT_EQ(scaled.entries()[i].second, k * base.entries()[i].second);
    }
  }
}

TEST(Vectorize, IndependentOfCorpusOrder) {
  Strings corpus = {"b a", "c a", "a d d", "c"};
  const auto v1 = build_vocabulary(corpus, words(1, 2, 1));
  std::reverse(corpus.begin(), corpus.end());
  const auto v2 = build_vocabulary(corpus, words(1, 2, 1));
  EXPECT_EQ(vectorize("a c a d", v1, Weighting::kTfidf), vectorize("a c a d", v2, Weighting::kTfidf));
}

TEST(Vocabulary, ConstructorValidates) {
  EXPECT_THROW(Vocabulary(words(1, 1, 1), 2, {{"b", 1}, {"a", 1}}), ValidationError);
  EXPECT_THROW(Vocabulary(words(1, 1, 1), 2, {{"a", 3}}), ValidationError);
  EXPECT_THROW(Vocabulary(words(1, 1, 1), 2, {{"a", 0}}), ValidationError);
}

TEST(SparseVector, FromEntriesNormalizes) {
  const auto x = SparseVector::from_entries({{3, 1.0}, {1, 2.0}, {3, -1.0}, {0, 0.0}, {1, 0.5}}, 4);
  ASSERT_EQ(x.nonzeros(), 1u);
  EXPECT_EQ(x.entries()[0], (SparseVector::Entry{1, 2.5}));
  EXPECT_THROW(SparseVector::from_entries({{4, 1.0}}, 4), std::out_of_range);
  EXPECT_EQ(SparseVector::from_dense(std::vector<double>{0, 2, 0}).to_dense(), (std::vector<double>{0, 2, 0}));
}

}  // namespace
}  // namespace hatepipe
