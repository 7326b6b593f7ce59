#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ilion/lexicon.hpp"
#include "ilion/types.hpp"

namespace ilion::test {

/// Valid pack skeleton: 21 labelled dimensions and 8 categories, all with
/// empty term lists. Tests fill in what they need.
inline LexiconPack empty_fixture_pack() {
  LexiconPack pack;
  pack.version = "0.1.0";
  pack.feature_space.version = pack.version;
  for (std::size_t i = 0; i < kFeatureDimensions; ++i) {
    pack.feature_space.dimension_labels.push_back("dim" + std::to_string(i));
    pack.dimension_lexicons.push_back({i, {}});
  }
  for (AttackCategory category : kAllAttackCategories) {
    pack.category_lexicons.push_back({category, {}});
  }
  return pack;
}

inline LexiconPack fixture_pack(
    const std::vector<std::pair<std::size_t, LexiconTerm>>& dimension_terms,
    const std::vector<std::pair<AttackCategory, LexiconTerm>>& category_terms = {}) {
  LexiconPack pack = empty_fixture_pack();
  for (const auto& [index, term] : dimension_terms) {
    pack.dimension_lexicons[index].terms.push_back(term);
  }
  for (const auto& [category, term] : category_terms) {
    pack.category_lexicons[static_cast<std::size_t>(category)].terms.push_back(term);
  }
  return pack;
}

/// Vocabulary used by the randomized encoder/cascade tests: a mix of single
/// and multi-token phrases, some mapped to dimensions, some to categories,
/// some to both, plus filler words mapped to nothing.
struct RandomVocabulary {
  std::vector<std::string> words;   // candidate tokens for generated text
  LexiconPack pack;
};

inline RandomVocabulary make_random_vocabulary(std::mt19937& rng, double max_weight = 1.0) {
  RandomVocabulary vocab;
  vocab.pack = empty_fixture_pack();

  std::vector<std::string> base;
  for (int i = 0; i < 24; ++i) base.push_back("w" + std::to_string(i));
  for (int i = 0; i < 8; ++i) base.push_back("filler" + std::to_string(i));
  vocab.words = base;

  std::uniform_real_distribution<double> weight_dist(0.01, max_weight);
  std::uniform_int_distribution<std::size_t> dim_dist(0, kFeatureDimensions - 1);
  std::uniform_int_distribution<std::size_t> cat_dist(0, kAttackCategoryCount - 1);
  std::uniform_int_distribution<int> len_dist(1, 4);
  std::uniform_int_distribution<std::size_t> word_dist(0, 23);  // only w* tokens in phrases
  std::uniform_int_distribution<int> kind_dist(0, 2);

  std::vector<std::string> used_phrases;
  auto phrase_exists = [&](const std::string& phrase, std::size_t dim, bool is_dim,
                           std::size_t cat) {
    const auto& terms = is_dim ? vocab.pack.dimension_lexicons[dim].terms
                               : vocab.pack.category_lexicons[cat].terms;
    for (const LexiconTerm& t : terms) {
      if (t.phrase == phrase) return true;
    }
    return false;
  };

  for (int i = 0; i < 40; ++i) {
    const int len = len_dist(rng);
    std::string phrase;
    for (int k = 0; k < len; ++k) {
      if (k > 0) phrase.push_back(' ');
      phrase += base[word_dist(rng)];
    }
    const double weight = weight_dist(rng);
    const int kind = kind_dist(rng);  // 0: dimension, 1: category, 2: both
    if (kind == 0 || kind == 2) {
      std::size_t dim = dim_dist(rng);
      if (!phrase_exists(phrase, dim, true, 0)) {
        vocab.pack.dimension_lexicons[dim].terms.push_back({phrase, weight});
      }
    }
    if (kind == 1 || kind == 2) {
      std::size_t cat = cat_dist(rng);
      if (!phrase_exists(phrase, 0, false, cat)) {
        vocab.pack.category_lexicons[cat].terms.push_back({phrase, weight});
      }
    }
  }
  return vocab;
}

inline std::string random_text(std::mt19937& rng, const std::vector<std::string>& words,
                               std::size_t min_tokens = 0, std::size_t max_tokens = 30) {
  std::uniform_int_distribution<std::size_t> len_dist(min_tokens, max_tokens);
  std::uniform_int_distribution<std::size_t> word_dist(0, words.size() - 1);
  const std::size_t n = len_dist(rng);
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) text.push_back(' ');
    text += words[word_dist(rng)];
  }
  return text;
}

}  // namespace ilion::test
