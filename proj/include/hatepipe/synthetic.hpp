#pragma once

#include <cstddef>
#include <cstdint>

#include "hatepipe/dataset.hpp"

namespace hatepipe {

// Two-class corpus with planted class vocabulary, shared Zipf-distributed
// filler words, cross-class marker leakage and a small label-noise rate.
struct SyntheticOptions {
  std::size_t documents = 5000;
  std::uint64_t seed = 1;
  double offensive_fraction = 0.45;
  double label_noise = 0.02;
  // Chance that a document carries one marker of the other class.
  double leakage = 0.05;
  // Chance that a non-offensive document negates an offensive marker.
  double negation = 0.25;
  std::size_t min_tokens = 6;
  std::size_t max_tokens = 18;
};

// Relation "synthetic" with attributes text (text) and class
// {non-offensive, offensive}. Deterministic in the options.
Dataset generate_synthetic_corpus(const SyntheticOptions& options = {});

}  // namespace hatepipe
