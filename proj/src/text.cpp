#include "rolemine/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "rolemine/error.hpp"

namespace rolemine {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::DegenerateMention: return "DegenerateMention";
    case ErrorCode::NullMention: return "NullMention";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::IsolatedCluster: return "IsolatedCluster";
    case ErrorCode::UnknownRole: return "UnknownRole";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::ClassWithNoExamples: return "ClassWithNoExamples";
    case ErrorCode::TableMismatch: return "TableMismatch";
    case ErrorCode::ListFormatInput: return "ListFormatInput";
    case ErrorCode::TraceUnavailable: return "TraceUnavailable";
    case ErrorCode::MissingPrerequisite: return "MissingPrerequisite";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::StateCorrupt: return "StateCorrupt";
    case ErrorCode::PortInUse: return "PortInUse";
  }
  return "Unknown";
}

namespace text {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_upper(c) || is_lower(c); }

static bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string collapse_ws(std::string_view s) { return join(split_ws(s), " "); }

std::string lower_letters_only(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 cp;
    U8_NEXT(bytes, i, length, cp);
    if (cp < 0 || !u_isalpha(cp)) continue;
    const UChar32 lower = u_tolower(cp);
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool err = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, lower, err);
    if (!err) out.append(reinterpret_cast<const char*>(buf), static_cast<size_t>(n));
  }
  return out;
}

std::string fold_case(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 cp;
    U8_NEXT(bytes, i, length, cp);
    if (cp < 0) continue;
    const UChar32 folded = u_foldCase(cp, U_FOLD_CASE_DEFAULT);
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool err = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, folded, err);
    if (!err) out.append(reinterpret_cast<const char*>(buf), static_cast<size_t>(n));
  }
  return out;
}

}  // namespace text
}  // namespace rolemine
