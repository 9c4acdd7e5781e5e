#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace egraph::text {

bool is_space(char c);

// Leading and trailing whitespace removed.
std::string_view trim(std::string_view s);

// Trimmed, with interior whitespace runs collapsed to one space. Case kept.
std::string collapse_whitespace(std::string_view s);

// ASCII lowercase of collapse_whitespace(s). Used as the comparison key for
// concepts and relation names.
std::string normalize(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

// Lowercased whitespace tokens with punctuation characters removed from each
// token; tokens that become empty are dropped.
std::vector<std::string> match_tokens(std::string_view s);

std::string to_lower(std::string_view s);

}  // namespace egraph::text
