#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ilion/types.hpp"

namespace ilion {

/// One weighted phrase. Phrases are lowercase, 1-4 whitespace-separated
/// tokens, and must round-trip through tokenize().
struct LexiconTerm {
  std::string phrase;
  double weight = 0.0;  // (0,1]
};

struct DimensionLexicon {
  std::size_t dimension_index = 0;  // 0..kFeatureDimensions-1
  std::vector<LexiconTerm> terms;
};

struct CategoryLexicon {
  AttackCategory category = AttackCategory::kPromptInjection;
  std::vector<LexiconTerm> terms;
};

/// Versioned term mapping driving both the feature-space encoding and the
/// per-category signals. Immutable after load; share freely across threads.
struct LexiconPack {
  FeatureSpace feature_space;
  std::vector<DimensionLexicon> dimension_lexicons;  // one per dimension, sorted by index
  std::vector<CategoryLexicon> category_lexicons;    // one per category, in enum order
  std::string version;                               // semantic version
};

class PackLoadError : public std::runtime_error {
 public:
  explicit PackLoadError(const std::string& message) : std::runtime_error(message) {}
};

/// Built-in pack: 10 capability dimensions, 4 scope dimensions, 7 role-domain
/// dimensions, plus the eight category lexicons.
const LexiconPack& default_pack();

/// Returns every invariant violation as a human-readable string with its
/// location; empty means the pack is valid.
std::vector<std::string> validate_pack(const LexiconPack& pack);

/// Parses and fully validates a pack document. `origin` labels error messages
/// (usually the file path). Throws PackLoadError.
LexiconPack parse_lexicon_pack(std::string_view json_text, std::string_view origin);

LexiconPack load_lexicon_pack(const std::filesystem::path& path);

/// Canonical serialization: fixed key order, 2-space indent, LF line endings,
/// trailing newline. load(serialize(pack)) is byte-stable.
std::string serialize_lexicon_pack(const LexiconPack& pack);

void save_lexicon_pack(const LexiconPack& pack, const std::filesystem::path& path);

}  // namespace ilion
