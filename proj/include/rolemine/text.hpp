#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rolemine::text {

std::string to_lower_ascii(std::string_view s);

/// Splits on ASCII whitespace; empty pieces are dropped.
std::vector<std::string> split_ws(std::string_view s);

std::string_view trim(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Replaces every run of whitespace (including newlines) with one space and
/// trims both ends.
std::string collapse_ws(std::string_view s);

bool is_upper(char c);
bool is_lower(char c);
bool is_alpha(char c);

/// Lowercases a UTF-8 string and drops every code point that is not a
/// Unicode letter. Invalid byte sequences are dropped as well.
std::string lower_letters_only(std::string_view utf8);

/// Simple (per code point) Unicode case folding.
std::string fold_case(std::string_view utf8);

}  // namespace rolemine::text
