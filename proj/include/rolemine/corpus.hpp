#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rolemine {

/// One contributions section pulled out of an article.
struct Document {
  std::string doc_id;
  std::string source_path;
  std::string contrib_text;  // never empty
  bool list_format = false;

  friend bool operator==(const Document&, const Document&) = default;
};

enum class InputFormat { JatsXml, PlainText };

/// Title every contributions section normalizes to.
inline constexpr std::string_view kContributionsTitle = "authorscontributions";

/// Lowercases and strips every non-letter code point (Unicode-aware).
std::string normalize_title(std::string_view title);

/// Returns the contributions section of an article, if it has one.
///
/// For JATS input the first `sec` (or `notes`) element whose title normalizes
/// to kContributionsTitle is taken, and all descendant paragraphs are joined
/// with one space. Plain-text input is the section body as a whole.
///
/// Throws Error(MalformedInput) when the XML cannot be parsed.
std::optional<Document> parse_article(std::string_view bytes, InputFormat format,
                                      std::string doc_id = {}, std::string source_path = {});

/// True when the text reads like "JB: design, analysis; DT: writing" rather
/// than prose: at least half of the ';'/newline separated segments have a
/// short head (fewer than 6 words) followed by a colon and a phrase.
bool detect_list_format(std::string_view text);

/// Deterministic subset of min(n, docs.size()) documents, kept in corpus order.
std::vector<Document> sample_corpus(const std::vector<Document>& docs, size_t n, uint64_t seed);

struct Diagnostic {
  std::string source;
  std::string message;
};

struct IngestResult {
  std::vector<Document> documents;
  std::vector<Diagnostic> diagnostics;  // one per unreadable or malformed file
  size_t files_seen = 0;
};

/// Parses every `.xml` (JATS) and `.txt` file under `dir` in sorted path
/// order. Malformed files become diagnostics; they never abort the batch.
IngestResult ingest_directory(const std::filesystem::path& dir);

}  // namespace rolemine
