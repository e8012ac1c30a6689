#include "hatepipe/synthetic.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "hatepipe/error.hpp"
#include "hatepipe/random.hpp"

namespace hatepipe {
namespace {

constexpr std::size_t kFillerWords = 400;
constexpr std::size_t kMarkers = 30;

constexpr std::array<const char*, 16> kOnsets = {"b", "d", "f", "g", "k", "l", "m", "n",
                                                 "p", "r", "s", "t", "v", "z", "sh", "tr"};
constexpr std::array<const char*, 6> kVowels = {"a", "e", "i", "o", "u", "ai"};

// Pseudo-word from the digits of `n`; distinct n give distinct words.
std::string pseudo_word(std::size_t n, std::size_t syllables) {
  std::string word;
  for (std::size_t s = 0; s < syllables; ++s) {
    word += kOnsets[n % kOnsets.size()];
    n /= kOnsets.size();
    word += kVowels[n % kVowels.size()];
    n /= kVowels.size();
  }
  return word;
}

std::vector<std::string> word_list(std::size_t count, std::size_t offset, std::size_t syllables) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(pseudo_word(offset + i, syllables));
  return out;
}

std::size_t zipf_draw(Rng& rng, const std::vector<double>& cumulative) {
  const double u = uniform_unit(rng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
}

}  // namespace

Dataset generate_synthetic_corpus(const SyntheticOptions& o) {
  if (o.min_tokens == 0 || o.min_tokens > o.max_tokens) {
    throw ValidationError("synthetic corpus needs 1 <= min_tokens <= max_tokens");
  }
  // Filler words have two syllables, markers three, so the sets are disjoint.
  const auto filler = word_list(kFillerWords, 0, 2);
  const auto offensive = word_list(kMarkers, 7, 3);
  const auto benign = word_list(kMarkers, 5000, 3);

  std::vector<double> cumulative(filler.size());
  double total = 0.0;
  for (std::size_t i = 0; i < filler.size(); ++i) {
    total += 1.0 / static_cast<double>(i + 1);
    cumulative[i] = total;
  }

  Dataset ds("synthetic",
             {AttributeSpec::text("text"),
              AttributeSpec::nominal("class", {"non-offensive", "offensive"})},
             1);
  ds.reserve(o.documents);
  Rng rng(o.seed);
  for (std::size_t d = 0; d < o.documents; ++d) {
    const bool is_offensive = uniform_unit(rng) < o.offensive_fraction;
    const auto& own = is_offensive ? offensive : benign;
    const auto& other = is_offensive ? benign : offensive;
    const std::size_t length = o.min_tokens + uniform_index(rng, o.max_tokens - o.min_tokens + 1);

    std::vector<std::string> tokens;
    const std::size_t markers = 1 + uniform_index(rng, 3);
    for (std::size_t m = 0; m < markers; ++m) tokens.push_back(own[uniform_index(rng, own.size())]);
    if (uniform_unit(rng) < o.leakage) tokens.push_back(other[uniform_index(rng, other.size())]);
    while (tokens.size() < length) tokens.push_back(filler[zipf_draw(rng, cumulative)]);
    shuffle(std::span<std::string>(tokens), rng);
    if (!is_offensive && uniform_unit(rng) < o.negation) {
      // Negated phrases stay contiguous so word bigrams can see them.
      const auto at = uniform_index(rng, tokens.size() + 1);
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at),
                    {"not", offensive[uniform_index(rng, offensive.size())]});
    }
    if (uniform_unit(rng) < 0.1) tokens.insert(tokens.begin(), "@user" + std::to_string(d % 97));
    if (uniform_unit(rng) < 0.05) tokens.push_back("https://t.co/x" + std::to_string(d));

    std::string text;
    for (const auto& t : tokens) {
      if (!text.empty()) text.push_back(' ');
      text += t;
    }
    bool label = is_offensive;
    if (uniform_unit(rng) < o.label_noise) label = !label;
    ds.add_row({text, NominalIndex{label ? 1u : 0u}});
  }
  return ds;
}

}  // namespace hatepipe
