#pragma once

#include <string>
#include <string_view>

namespace rolemine {

/// English (Porter2) Snowball stemmer, current revision of the algorithm.
///
/// Expects a single lowercase token. Words shorter than three characters are
/// returned unchanged. Bytes outside a-z are treated as consonants.
std::string stem(std::string_view word);

}  // namespace rolemine
