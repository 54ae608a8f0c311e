#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hltag::text {

/// Full Unicode lowercase mapping of a UTF-8 string (locale-independent).
std::string to_lower(std::string_view utf8);

/// Splits a UTF-8 string into its code points. Invalid bytes map to U+FFFD.
std::vector<char32_t> code_points(std::string_view utf8);

std::string encode_code_point(char32_t cp);

/// True when the string contains any Unicode whitespace code point.
bool has_whitespace(std::string_view utf8);

}  // namespace hltag::text
