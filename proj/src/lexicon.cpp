#include "ilion/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ilion/tokenizer.hpp"

namespace ilion {

namespace {

using nlohmann::ordered_json;

bool is_semver(std::string_view s) {
  int part = 0;
  std::size_t digits = 0;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      ++digits;
    } else if (c == '.') {
      if (digits == 0) return false;
      ++part;
      digits = 0;
    } else {
      return false;
    }
  }
  return part == 2 && digits > 0;
}

bool is_lowercase(std::string_view s) {
  for (char c : s) {
    if (c >= 'A' && c <= 'Z') return false;
  }
  return true;
}

void validate_terms(const std::vector<LexiconTerm>& terms, const std::string& where,
                    std::vector<std::string>& out) {
  std::map<std::string_view, std::size_t> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const LexiconTerm& term = terms[i];
    std::string loc = where + " term " + std::to_string(i) + " ('" + term.phrase + "')";
    if (term.phrase.empty()) {
      out.push_back(where + " term " + std::to_string(i) + ": empty phrase");
      continue;
    }
    TokenSequence tokens = tokenize(term.phrase);
    if (tokens.empty() || tokens.size() > 4) {
      out.push_back(loc + ": phrase must be 1-4 tokens");
    } else if (join_tokens(tokens) != term.phrase) {
      out.push_back(loc + ": phrase does not round-trip through tokenization");
    }
    if (!(term.weight > 0.0 && term.weight <= 1.0)) {
      out.push_back(loc + ": weight must be in (0,1]");
    }
    auto [it, inserted] = seen.emplace(term.phrase, i);
    if (!inserted) {
      out.push_back(where + ": duplicate phrase '" + term.phrase + "' (entries " +
                    std::to_string(it->second) + " and " + std::to_string(i) + ")");
    }
  }
}

ordered_json terms_to_json(const std::vector<LexiconTerm>& terms) {
  ordered_json arr = ordered_json::array();
  for (const LexiconTerm& term : terms) {
    ordered_json t;
    t["phrase"] = term.phrase;
    t["weight"] = term.weight;
    arr.push_back(std::move(t));
  }
  return arr;
}

std::vector<LexiconTerm> terms_from_json(const ordered_json& node, const std::string& where) {
  if (!node.is_array()) throw PackLoadError(where + ": 'terms' must be an array");
  std::vector<LexiconTerm> terms;
  terms.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    const ordered_json& t = node[i];
    std::string loc = where + " terms[" + std::to_string(i) + "]";
    if (!t.is_object()) throw PackLoadError(loc + ": must be an object");
    if (!t.contains("phrase") || !t["phrase"].is_string()) {
      throw PackLoadError(loc + ": missing string field 'phrase'");
    }
    if (!t.contains("weight") || !t["weight"].is_number()) {
      throw PackLoadError(loc + ": missing numeric field 'weight'");
    }
    terms.push_back({t["phrase"].get<std::string>(), t["weight"].get<double>()});
  }
  return terms;
}

}  // namespace

std::vector<std::string> validate_pack(const LexiconPack& pack) {
  std::vector<std::string> out;

  if (!is_semver(pack.version)) {
    out.push_back("version: '" + pack.version + "' is not a semantic version");
  }

  const auto& labels = pack.feature_space.dimension_labels;
  if (labels.size() != kFeatureDimensions) {
    out.push_back("feature_space: dimension count must be " +
                  std::to_string(kFeatureDimensions) + ", got " + std::to_string(labels.size()));
  }
  std::map<std::string_view, std::size_t> seen_labels;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) {
      out.push_back("feature_space: label " + std::to_string(i) + " is empty");
      continue;
    }
    if (!is_lowercase(labels[i])) {
      out.push_back("feature_space: label '" + labels[i] + "' must be lowercase");
    }
    auto [it, inserted] = seen_labels.emplace(labels[i], i);
    if (!inserted) {
      out.push_back("feature_space: duplicate label '" + labels[i] + "' (indices " +
                    std::to_string(it->second) + " and " + std::to_string(i) + ")");
    }
  }

  if (pack.dimension_lexicons.size() != kFeatureDimensions) {
    out.push_back("dimensions: dimension count must be " + std::to_string(kFeatureDimensions) +
                  ", got " + std::to_string(pack.dimension_lexicons.size()));
  }
  std::array<int, kFeatureDimensions> index_count{};
  for (const DimensionLexicon& dim : pack.dimension_lexicons) {
    if (dim.dimension_index >= kFeatureDimensions) {
      out.push_back("dimensions: index " + std::to_string(dim.dimension_index) + " out of range");
      continue;
    }
    ++index_count[dim.dimension_index];
    std::string label = dim.dimension_index < labels.size() ? labels[dim.dimension_index]
                                                            : std::to_string(dim.dimension_index);
    validate_terms(dim.terms, "dimensions[" + label + "]", out);
  }
  for (std::size_t i = 0; i < kFeatureDimensions; ++i) {
    if (index_count[i] > 1) {
      out.push_back("dimensions: index " + std::to_string(i) + " appears " +
                    std::to_string(index_count[i]) + " times");
    } else if (index_count[i] == 0 && pack.dimension_lexicons.size() == kFeatureDimensions) {
      out.push_back("dimensions: index " + std::to_string(i) + " is missing");
    }
  }

  if (pack.category_lexicons.size() != kAttackCategoryCount) {
    out.push_back("categories: category count must be " + std::to_string(kAttackCategoryCount) +
                  ", got " + std::to_string(pack.category_lexicons.size()));
  }
  std::array<int, kAttackCategoryCount> category_count{};
  for (const CategoryLexicon& cat : pack.category_lexicons) {
    ++category_count[static_cast<std::size_t>(cat.category)];
    validate_terms(cat.terms, "categories[" + std::string(to_string(cat.category)) + "]", out);
  }
  for (AttackCategory c : kAllAttackCategories) {
    int n = category_count[static_cast<std::size_t>(c)];
    if (n > 1) {
      out.push_back("categories: '" + std::string(to_string(c)) + "' appears " +
                    std::to_string(n) + " times");
    } else if (n == 0 && pack.category_lexicons.size() == kAttackCategoryCount) {
      out.push_back("categories: '" + std::string(to_string(c)) + "' is missing");
    }
  }

  return out;
}

LexiconPack parse_lexicon_pack(std::string_view json_text, std::string_view origin) {
  const std::string where(origin);
  ordered_json doc = ordered_json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) throw PackLoadError(where + ": malformed JSON");
  if (!doc.is_object()) throw PackLoadError(where + ": top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "version" && key != "dimensions" && key != "categories") {
      throw PackLoadError(where + ": unknown top-level key '" + key + "'");
    }
  }
  if (!doc.contains("version") || !doc["version"].is_string()) {
    throw PackLoadError(where + ": missing string field 'version'");
  }
  if (!doc.contains("dimensions") || !doc["dimensions"].is_array()) {
    throw PackLoadError(where + ": missing array field 'dimensions'");
  }
  if (!doc.contains("categories") || !doc["categories"].is_array()) {
    throw PackLoadError(where + ": missing array field 'categories'");
  }

  LexiconPack pack;
  pack.version = doc["version"].get<std::string>();
  pack.feature_space.version = pack.version;

  std::vector<std::pair<std::size_t, std::string>> labels_by_index;
  for (std::size_t i = 0; i < doc["dimensions"].size(); ++i) {
    const ordered_json& d = doc["dimensions"][i];
    std::string loc = where + ": dimensions[" + std::to_string(i) + "]";
    if (!d.is_object()) throw PackLoadError(loc + ": must be an object");
    if (!d.contains("label") || !d["label"].is_string()) {
      throw PackLoadError(loc + ": missing string field 'label'");
    }
    if (!d.contains("index") || !d["index"].is_number_unsigned()) {
      throw PackLoadError(loc + ": missing nonnegative integer field 'index'");
    }
    if (!d.contains("terms")) throw PackLoadError(loc + ": missing field 'terms'");
    DimensionLexicon dim;
    dim.dimension_index = d["index"].get<std::size_t>();
    dim.terms = terms_from_json(d["terms"], loc);
    labels_by_index.emplace_back(dim.dimension_index, d["label"].get<std::string>());
    pack.dimension_lexicons.push_back(std::move(dim));
  }
  std::stable_sort(pack.dimension_lexicons.begin(), pack.dimension_lexicons.end(),
                   [](const DimensionLexicon& a, const DimensionLexicon& b) {
                     return a.dimension_index < b.dimension_index;
                   });
  std::stable_sort(labels_by_index.begin(), labels_by_index.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [index, label] : labels_by_index) {
    pack.feature_space.dimension_labels.push_back(label);
  }

  for (std::size_t i = 0; i < doc["categories"].size(); ++i) {
    const ordered_json& c = doc["categories"][i];
    std::string loc = where + ": categories[" + std::to_string(i) + "]";
    if (!c.is_object()) throw PackLoadError(loc + ": must be an object");
    if (!c.contains("category") || !c["category"].is_string()) {
      throw PackLoadError(loc + ": missing string field 'category'");
    }
    if (!c.contains("terms")) throw PackLoadError(loc + ": missing field 'terms'");
    auto category = attack_category_from_string(c["category"].get<std::string>());
    if (!category) {
      throw PackLoadError(loc + ": unknown category '" + c["category"].get<std::string>() + "'");
    }
    CategoryLexicon cat;
    cat.category = *category;
    cat.terms = terms_from_json(c["terms"], loc);
    pack.category_lexicons.push_back(std::move(cat));
  }
  std::stable_sort(pack.category_lexicons.begin(), pack.category_lexicons.end(),
                   [](const CategoryLexicon& a, const CategoryLexicon& b) {
                     return static_cast<int>(a.category) < static_cast<int>(b.category);
                   });

  std::vector<std::string> violations = validate_pack(pack);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << where << ": invalid pack:";
    for (const std::string& v : violations) msg << "\n  - " << v;
    throw PackLoadError(msg.str());
  }
  return pack;
}

LexiconPack load_lexicon_pack(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PackLoadError(path.string() + ": cannot open pack file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_lexicon_pack(buffer.str(), path.string());
}

std::string serialize_lexicon_pack(const LexiconPack& pack) {
  ordered_json root;
  root["version"] = pack.version;

  ordered_json dims = ordered_json::array();
  std::vector<const DimensionLexicon*> sorted_dims;
  for (const DimensionLexicon& d : pack.dimension_lexicons) sorted_dims.push_back(&d);
  std::stable_sort(sorted_dims.begin(), sorted_dims.end(),
                   [](const DimensionLexicon* a, const DimensionLexicon* b) {
                     return a->dimension_index < b->dimension_index;
                   });
  for (const DimensionLexicon* d : sorted_dims) {
    ordered_json node;
    node["label"] = d->dimension_index < pack.feature_space.dimension_labels.size()
                        ? pack.feature_space.dimension_labels[d->dimension_index]
                        : "";
    node["index"] = d->dimension_index;
    node["terms"] = terms_to_json(d->terms);
    dims.push_back(std::move(node));
  }
  root["dimensions"] = std::move(dims);

  ordered_json cats = ordered_json::array();
  std::vector<const CategoryLexicon*> sorted_cats;
  for (const CategoryLexicon& c : pack.category_lexicons) sorted_cats.push_back(&c);
  std::stable_sort(sorted_cats.begin(), sorted_cats.end(),
                   [](const CategoryLexicon* a, const CategoryLexicon* b) {
                     return to_string(a->category) < to_string(b->category);
                   });
  for (const CategoryLexicon* c : sorted_cats) {
    ordered_json node;
    node["category"] = std::string(to_string(c->category));
    node["terms"] = terms_to_json(c->terms);
    cats.push_back(std::move(node));
  }
  root["categories"] = std::move(cats);

  return root.dump(2) + "\n";
}

void save_lexicon_pack(const LexiconPack& pack, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PackLoadError(path.string() + ": cannot open for writing");
  out << serialize_lexicon_pack(pack);
  if (!out) throw PackLoadError(path.string() + ": write failed");
}

}  // namespace ilion
