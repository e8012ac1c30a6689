#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hatepipe/sparse_vector.hpp"

namespace hatepipe {

enum class Analyzer { kWord, kChar };
enum class Weighting { kBinary, kTf, kTfidf };

std::string_view to_string(Analyzer a);
std::string_view to_string(Weighting w);
// Throw ValidationError on unknown names.
Analyzer parse_analyzer(std::string_view name);
Weighting parse_weighting(std::string_view name);

struct VocabularyConfig {
  Analyzer analyzer = Analyzer::kWord;
  std::size_t ngram_min = 1;
  std::size_t ngram_max = 2;
  std::size_t min_df = 2;

  bool operator==(const VocabularyConfig&) const = default;
};

// Maximal runs of letters, digits and apostrophes. Any other ASCII character
// separates tokens; non-ASCII code points count as letters except Unicode
// whitespace.
std::vector<std::string> tokenize(std::string_view text);

// Every n-gram the analyzer produces for a document, with repetition. Word
// n-grams join tokens with a single space; character n-grams run over UTF-8
// code points of the whole document.
std::vector<std::string> analyze(std::string_view doc, const VocabularyConfig& config);

// Term index fitted on a training corpus: terms in lexicographic order with
// their document frequencies.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Restores a fitted vocabulary. Terms must be strictly increasing with
  // 1 <= df <= doc_count; throws ValidationError otherwise.
  Vocabulary(VocabularyConfig config, std::size_t doc_count,
             std::vector<std::pair<std::string, std::size_t>> terms);

  const VocabularyConfig& config() const { return config_; }
  std::size_t doc_count() const { return doc_count_; }
  std::size_t size() const { return terms_.size(); }
  const std::string& term(std::size_t i) const { return terms_.at(i); }
  std::size_t df(std::size_t i) const { return df_.at(i); }
  std::optional<std::size_t> index_of(std::string_view term) const;
  // Smoothed ln((1 + D) / (1 + df)).
  double idf(std::size_t i) const;

  bool operator==(const Vocabulary& other) const {
    return config_ == other.config_ && doc_count_ == other.doc_count_ &&
           terms_ == other.terms_ && df_ == other.df_;
  }

 private:
  VocabularyConfig config_;
  std::size_t doc_count_ = 0;
  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Keeps n-grams with df >= min_df. Throws ValidationError on an empty corpus
// or an invalid config.
Vocabulary build_vocabulary(std::span<const std::string> corpus, const VocabularyConfig& config);

// binary: 1 per present term; tf: raw count; tfidf: count * idf. Unknown
// terms are ignored. With l2_normalize the result has unit length (unless
// empty).
SparseVector vectorize(std::string_view doc, const Vocabulary& vocab, Weighting weighting,
                       bool l2_normalize = false);

}  // namespace hatepipe
