#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ilion {

using TokenSequence = std::vector<std::string>;

/// Lowercases and splits text on every maximal run of non-alphanumeric
/// characters. Alphanumeric means ASCII [0-9a-zA-Z]; any other byte
/// (punctuation, whitespace, multi-byte UTF-8 sequences) is a separator.
/// This keeps the result byte-exact across platforms and locales.
TokenSequence tokenize(std::string_view text);

/// Joins tokens with single spaces (the canonical phrase form).
std::string join_tokens(const TokenSequence& tokens);

std::string_view trim(std::string_view text);

/// True when text is empty after whitespace trimming.
bool is_blank(std::string_view text);

}  // namespace ilion
