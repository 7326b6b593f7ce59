#include "ilion/encoder.hpp"

#include <algorithm>

#include "ilion/vector_math.hpp"

namespace ilion {

namespace {

/// Runs the greedy scan, invoking on_hit(phrase, entry, position) for every
/// emitted hit. Shared by the audit path and the accumulation paths.
template <typename OnHit>
void scan_tokens(const TokenSequence& tokens, const TermIndex& index, OnHit&& on_hit) {
  std::string candidate;
  const std::size_t n = tokens.size();
  std::size_t pos = 0;
  while (pos < n) {
    std::size_t advance = 1;
    const std::size_t max_len = std::min(index.max_phrase_tokens(), n - pos);
    for (std::size_t len = max_len; len >= 1; --len) {
      candidate.clear();
      for (std::size_t k = 0; k < len; ++k) {
        if (k > 0) candidate.push_back(' ');
        candidate += tokens[pos + k];
      }
      const std::vector<TermIndex::Entry>* entries = index.find(candidate);
      if (entries != nullptr) {
        for (const TermIndex::Entry& entry : *entries) {
          on_hit(candidate, entry, pos);
        }
        advance = len;
        break;
      }
    }
    pos += advance;
  }
}

std::string action_input_text(const ActionProposal& action, bool include_trigger) {
  if (!include_trigger || !action.trigger_text.has_value() || action.trigger_text->empty()) {
    return action.action_text;
  }
  return action.action_text + " " + *action.trigger_text;
}

}  // namespace

TermIndex::TermIndex(const LexiconPack& pack) {
  for (const DimensionLexicon& dim : pack.dimension_lexicons) {
    for (const LexiconTerm& term : dim.terms) {
      phrases_[term.phrase].push_back({MatchTarget{dim.dimension_index}, term.weight});
      max_phrase_tokens_ = std::max(max_phrase_tokens_, tokenize(term.phrase).size());
    }
  }
  for (const CategoryLexicon& cat : pack.category_lexicons) {
    for (const LexiconTerm& term : cat.terms) {
      phrases_[term.phrase].push_back({MatchTarget{cat.category}, term.weight});
      max_phrase_tokens_ = std::max(max_phrase_tokens_, tokenize(term.phrase).size());
    }
  }
}

std::vector<MatchHit> match_terms(const TokenSequence& tokens, const TermIndex& index) {
  std::vector<MatchHit> hits;
  scan_tokens(tokens, index,
              [&hits](const std::string& phrase, const TermIndex::Entry& entry, std::size_t pos) {
                hits.push_back({phrase, entry.target, entry.weight, pos});
              });
  return hits;
}

std::vector<MatchHit> match_terms(const TokenSequence& tokens, const LexiconPack& pack) {
  return match_terms(tokens, TermIndex(pack));
}

FeatureVector tii_encode(const RoleDefinition& role, const TermIndex& index) {
  std::array<double, kFeatureDimensions> sums{};
  TokenSequence tokens = tokenize(role.text);
  scan_tokens(tokens, index,
              [&sums](const std::string&, const TermIndex::Entry& entry, std::size_t) {
                if (const std::size_t* dim = std::get_if<std::size_t>(&entry.target)) {
                  sums[*dim] += entry.weight;
                }
              });
  FeatureVector v;
  for (std::size_t i = 0; i < kFeatureDimensions; ++i) v[i] = clamp01(sums[i]);
  return v;
}

FeatureVector tii_encode(const RoleDefinition& role, const LexiconPack& pack) {
  return tii_encode(role, TermIndex(pack));
}

ActionEncoding svrf_encode(const ActionProposal& action, const TermIndex& index,
                           bool include_trigger) {
  std::array<double, kFeatureDimensions> dim_sums{};
  std::array<double, kAttackCategoryCount> cat_sums{};
  TokenSequence tokens = tokenize(action_input_text(action, include_trigger));
  scan_tokens(tokens, index,
              [&](const std::string&, const TermIndex::Entry& entry, std::size_t) {
                if (const std::size_t* dim = std::get_if<std::size_t>(&entry.target)) {
                  dim_sums[*dim] += entry.weight;
                } else {
                  cat_sums[static_cast<std::size_t>(std::get<AttackCategory>(entry.target))] +=
                      entry.weight;
                }
              });
  ActionEncoding out;
  for (std::size_t i = 0; i < kFeatureDimensions; ++i) out.vector[i] = clamp01(dim_sums[i]);
  for (std::size_t i = 0; i < kAttackCategoryCount; ++i) {
    out.signals.values[i] = clamp01(cat_sums[i]);
  }
  return out;
}

ActionEncoding svrf_encode(const ActionProposal& action, const LexiconPack& pack,
                           bool include_trigger) {
  return svrf_encode(action, TermIndex(pack), include_trigger);
}

}  // namespace ilion
