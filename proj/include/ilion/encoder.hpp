#pragma once

#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ilion/lexicon.hpp"
#include "ilion/tokenizer.hpp"
#include "ilion/types.hpp"

namespace ilion {

/// Either a feature-space dimension index or an attack category.
using MatchTarget = std::variant<std::size_t, AttackCategory>;

/// Audit record for one lexicon match.
struct MatchHit {
  std::string phrase;
  MatchTarget target;
  double weight = 0.0;
  std::size_t token_position = 0;
};

/// Phrase lookup table precomputed from a validated pack. Entry order per
/// phrase is fixed (dimensions by index, then categories in enum order), so
/// accumulation is bit-reproducible.
class TermIndex {
 public:
  explicit TermIndex(const LexiconPack& pack);

  struct Entry {
    MatchTarget target;
    double weight;
  };

  const std::vector<Entry>* find(const std::string& phrase) const {
    auto it = phrases_.find(phrase);
    return it == phrases_.end() ? nullptr : &it->second;
  }
  std::size_t max_phrase_tokens() const { return max_phrase_tokens_; }

 private:
  std::unordered_map<std::string, std::vector<Entry>> phrases_;
  std::size_t max_phrase_tokens_ = 1;
};

/// Greedy longest-match scan, left to right: at each position phrases are
/// tried longest first; a match emits hits for every lexicon entry sharing
/// the phrase and the scan advances past the matched span.
std::vector<MatchHit> match_terms(const TokenSequence& tokens, const TermIndex& index);
std::vector<MatchHit> match_terms(const TokenSequence& tokens, const LexiconPack& pack);

/// Role text -> feature vector. Stateless; recomputed per call.
FeatureVector tii_encode(const RoleDefinition& role, const TermIndex& index);
FeatureVector tii_encode(const RoleDefinition& role, const LexiconPack& pack);

struct ActionEncoding {
  FeatureVector vector;
  CategorySignals signals;
};

/// Action text -> feature vector plus category signals. When include_trigger
/// is set and a trigger is present, the trigger text is appended to the
/// action text before encoding.
ActionEncoding svrf_encode(const ActionProposal& action, const TermIndex& index,
                           bool include_trigger = false);
ActionEncoding svrf_encode(const ActionProposal& action, const LexiconPack& pack,
                           bool include_trigger = false);

}  // namespace ilion
