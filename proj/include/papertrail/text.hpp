#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the parsers and matchers. ASCII-only case
// mapping; UTF-8 is passed through untouched except by fold_diacritics().
namespace papertrail::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool icontains(std::string_view haystack, std::string_view needle);

/// Maps Latin-1 Supplement and Latin Extended-A letters to their ASCII base
/// letter ("Fundação" -> "Fundacao"). Other code points are kept as-is.
std::string fold_diacritics(std::string_view s);

/// Splits on whitespace, dropping empty tokens.
std::vector<std::string> split_words(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Splits a list cell on `sep`, honouring backslash escapes (\; \| \\).
/// An empty cell yields an empty list.
std::vector<std::string> split_list(std::string_view cell, char sep);

/// Inverse of split_list.
std::string join_list(const std::vector<std::string>& items, char sep);

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

/// Lowercase ASCII slug: letters and digits kept, everything else collapses to '-'.
std::string slug(std::string_view s);

bool is_country_code(std::string_view code);

}  // namespace papertrail::text
