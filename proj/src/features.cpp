#include "hatepipe/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hatepipe/error.hpp"

namespace hatepipe {
namespace {

// Length of the UTF-8 sequence starting at s[pos], 1 for invalid bytes.
std::size_t utf8_length(std::string_view s, std::size_t pos) {
  const auto c = static_cast<unsigned char>(s[pos]);
  std::size_t len = 1;
  if (c >= 0xF0 && c < 0xF8) {
    len = 4;
  } else if (c >= 0xE0) {
    len = c < 0xF0 ? 3 : 1;
  } else if (c >= 0xC0) {
    len = 2;
  }
  if (pos + len > s.size()) return 1;
  for (std::size_t i = 1; i < len; ++i) {
    if ((static_cast<unsigned char>(s[pos + i]) & 0xC0) != 0x80) return 1;
  }
  return len;
}

char32_t decode(std::string_view s, std::size_t pos, std::size_t len) {
  const auto b = [&](std::size_t i) { return static_cast<char32_t>(static_cast<unsigned char>(s[pos + i])); };
  switch (len) {
    case 2:
      return ((b(0) & 0x1F) << 6) | (b(1) & 0x3F);
    case 3:
      return ((b(0) & 0x0F) << 12) | ((b(1) & 0x3F) << 6) | (b(2) & 0x3F);
    case 4:
      return ((b(0) & 0x07) << 18) | ((b(1) & 0x3F) << 12) | ((b(2) & 0x3F) << 6) | (b(3) & 0x3F);
    default:
      return b(0);
  }
}

bool is_unicode_space(char32_t cp) {
  return cp == 0x85 || cp == 0xA0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) ||
         cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'';
}

}  // namespace

std::string_view to_string(Analyzer a) { return a == Analyzer::kWord ? "word" : "char"; }

std::string_view to_string(Weighting w) {
  switch (w) {
    case Weighting::kBinary:
      return "binary";
    case Weighting::kTf:
      return "tf";
    case Weighting::kTfidf:
      return "tfidf";
  }
  return "tfidf";
}

Analyzer parse_analyzer(std::string_view name) {
  if (name == "word") return Analyzer::kWord;
  if (name == "char") return Analyzer::kChar;
  throw ValidationError("unknown analyzer '" + std::string(name) + "'");
}

Weighting parse_weighting(std::string_view name) {
  if (name == "binary") return Weighting::kBinary;
  if (name == "tf") return Weighting::kTf;
  if (name == "tfidf") return Weighting::kTfidf;
  throw ValidationError("unknown weighting '" + std::string(name) + "'");
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (static_cast<unsigned char>(c) < 0x80) {
      if (is_token_char(c)) {
        current.push_back(c);
      } else if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
      ++pos;
      continue;
    }
    const auto len = utf8_length(text, pos);
    if (is_unicode_space(decode(text, pos, len))) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.append(text.substr(pos, len));
    }
    pos += len;
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> analyze(std::string_view doc, const VocabularyConfig& config) {
  std::vector<std::string> grams;
  if (config.analyzer == Analyzer::kWord) {
    const auto tokens = tokenize(doc);
    for (std::size_t n = config.ngram_min; n <= config.ngram_max; ++n) {
      for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string gram = tokens[i];
        for (std::size_t j = 1; j < n; ++j) {
          gram.push_back(' ');
          gram += tokens[i + j];
        }
        grams.push_back(std::move(gram));
      }
    }
    return grams;
  }
  // Code point boundaries, plus the end offset.
  std::vector<std::size_t> starts;
  for (std::size_t pos = 0; pos < doc.size(); pos += utf8_length(doc, pos)) starts.push_back(pos);
  const std::size_t count = starts.size();
  starts.push_back(doc.size());
  for (std::size_t n = config.ngram_min; n <= config.ngram_max; ++n) {
    for (std::size_t i = 0; i + n <= count; ++i) {
      grams.emplace_back(doc.substr(starts[i], starts[i + n] - starts[i]));
    }
  }
  return grams;
}

namespace {

void validate(const VocabularyConfig& config) {
  if (config.ngram_min < 1 || config.ngram_min > config.ngram_max) {
    throw ValidationError("n-gram range must satisfy 1 <= min <= max");
  }
  if (config.min_df < 1) throw ValidationError("min_df must be >= 1");
}

}  // namespace

Vocabulary::Vocabulary(VocabularyConfig config, std::size_t doc_count,
                       std::vector<std::pair<std::string, std::size_t>> terms)
    : config_(config), doc_count_(doc_count) {
  validate(config_);
  terms_.reserve(terms.size());
  df_.reserve(terms.size());
  for (auto& [term, df] : terms) {
    if (!terms_.empty() && !(terms_.back() < term)) {
      throw ValidationError("vocabulary terms must be strictly increasing");
    }
    if (df < 1 || df > doc_count_) {
      throw ValidationError("document frequency of '" + term + "' outside [1, D]");
    }
    index_.emplace(term, terms_.size());
    terms_.push_back(std::move(term));
    df_.push_back(df);
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Vocabulary::idf(std::size_t i) const {
  return std::log((1.0 + static_cast<double>(doc_count_)) / (1.0 + static_cast<double>(df(i))));
}

Vocabulary build_vocabulary(std::span<const std::string> corpus, const VocabularyConfig& config) {
  validate(config);
  if (corpus.empty()) throw ValidationError("cannot build a vocabulary from an empty corpus");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    auto grams = analyze(doc, config);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (auto& g : grams) ++df[std::move(g)];
  }
  std::vector<std::pair<std::string, std::size_t>> terms;
  for (auto& [term, count] : df) {
    if (count >= config.min_df) terms.emplace_back(term, count);
  }
  return Vocabulary(config, corpus.size(), std::move(terms));
}

SparseVector vectorize(std::string_view doc, const Vocabulary& vocab, Weighting weighting,
                       bool l2_normalize) {
  std::vector<SparseVector::Entry> entries;
  for (const auto& gram : analyze(doc, vocab.config())) {
    if (auto idx = vocab.index_of(gram)) entries.emplace_back(static_cast<std::uint32_t>(*idx), 1.0);
  }
  auto counts = SparseVector::from_entries(std::move(entries), vocab.size());
  std::vector<SparseVector::Entry> weighted;
  weighted.reserve(counts.nonzeros());
  for (const auto& [index, tf] : counts) {
    switch (weighting) {
      case Weighting::kBinary:
        weighted.emplace_back(index, 1.0);
        break;
      case Weighting::kTf:
        weighted.emplace_back(index, tf);
        break;
      case Weighting::kTfidf:
        weighted.emplace_back(index, tf * vocab.idf(index));
        break;
    }
  }
  if (l2_normalize) {
    double norm = 0.0;
    for (const auto& e : weighted) norm += e.second * e.second;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (auto& e : weighted) e.second /= norm;
    }
  }
  return SparseVector::from_entries(std::move(weighted), vocab.size());
}

}  // namespace hatepipe
