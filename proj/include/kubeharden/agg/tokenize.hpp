#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace kubeharden::agg {

/// Splits text into lowercased alphanumeric runs. This is the single
/// tokenizer used for token-reduction accounting and for the bag-of-tokens
/// similarity scores.
std::vector<std::string> tokenize(const std::string& text);

/// Number of tokens without materializing them.
std::size_t count_tokens(const std::string& text);

std::set<std::string> token_set(const std::string& text);
std::map<std::string, std::size_t> token_counts(const std::string& text);

} // namespace kubeharden::agg
