#include "rolemine/corpus.hpp"

#include <expat.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "rolemine/error.hpp"
#include "rolemine/random.hpp"
#include "rolemine/text.hpp"

namespace rolemine {

std::string normalize_title(std::string_view title) { return text::lower_letters_only(title); }

namespace {

std::string_view local_name(const XML_Char* name) {
  std::string_view n(name);
  const auto colon = n.rfind(':');
  return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

bool is_section(std::string_view name) { return name == "sec" || name == "notes"; }

struct SectionFrame {
  size_t depth = 0;  // element depth of the section element itself
  size_t order = 0;  // document order of the opening tag
  std::string title;
  bool title_done = false;
  std::vector<std::string> paragraphs;
};

struct JatsHandler {
  size_t depth = 0;
  size_t sections_opened = 0;
  std::vector<SectionFrame> open;
  // Title of the innermost section currently being read, if any.
  SectionFrame* title_target = nullptr;
  size_t title_depth = 0;
  size_t paragraph_depth = 0;
  std::string paragraph;
  std::string article_id;
  bool in_article_id = false;

  std::optional<SectionFrame> match;

  void start(std::string_view name, const XML_Char** attrs) {
    ++depth;
    if (is_section(name)) {
      SectionFrame frame;
      frame.depth = depth;
      frame.order = sections_opened++;
      open.push_back(std::move(frame));
      title_target = nullptr;
    } else if (name == "title" && !open.empty() && open.back().depth + 1 == depth && !open.back().title_done) {
      title_target = &open.back();
      title_depth = depth;
    } else if (name == "p") {
      ++paragraph_depth;
    } else if (name == "article-id" && article_id.empty()) {
      for (size_t i = 0; attrs[i]; i += 2) {
        if (std::string_view(attrs[i]) == "pub-id-type" && std::string_view(attrs[i + 1]) == "pmc") {
          in_article_id = true;
        }
      }
    }
  }

  void end(std::string_view name) {
    if (title_target && name == "title" && depth == title_depth) {
      title_target->title_done = true;
      title_target = nullptr;
    } else if (name == "p" && paragraph_depth > 0) {
      if (--paragraph_depth == 0) {
        const auto body = std::string(text::trim(paragraph));
        if (!body.empty()) {
          for (auto& frame : open) frame.paragraphs.push_back(body);
        }
        paragraph.clear();
      }
    } else if (is_section(name) && !open.empty() && open.back().depth == depth) {
      SectionFrame frame = std::move(open.back());
      open.pop_back();
      if (normalize_title(frame.title) == kContributionsTitle && !frame.paragraphs.empty()) {
        if (!match || frame.order < match->order) match = std::move(frame);
      }
    } else if (name == "article-id") {
      in_article_id = false;
    }
    --depth;
  }

  void characters(std::string_view s) {
    if (title_target) title_target->title += s;
    if (paragraph_depth > 0) paragraph += s;
    if (in_article_id) article_id += s;
  }
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  static_cast<JatsHandler*>(data)->start(local_name(name), attrs);
}

void XMLCALL on_end(void* data, const XML_Char* name) {
  static_cast<JatsHandler*>(data)->end(local_name(name));
}

void XMLCALL on_chars(void* data, const XML_Char* s, int len) {
  static_cast<JatsHandler*>(data)->characters(std::string_view(s, static_cast<size_t>(len)));
}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

std::optional<Document> parse_article(std::string_view bytes, InputFormat format, std::string doc_id,
                                      std::string source_path) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.source_path = std::move(source_path);

  if (format == InputFormat::PlainText) {
    doc.contrib_text = std::string(text::trim(bytes));
  } else {
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
    JatsHandler handler;
    XML_SetUserData(parser.get(), &handler);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_chars);
    if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) == XML_STATUS_ERROR) {
      std::ostringstream msg;
      msg << XML_ErrorString(XML_GetErrorCode(parser.get())) << " at line "
          << XML_GetCurrentLineNumber(parser.get());
      throw Error(ErrorCode::MalformedInput, msg.str());
    }
    if (!handler.match) return std::nullopt;
    doc.contrib_text = text::join(handler.match->paragraphs, " ");
    if (doc.doc_id.empty()) doc.doc_id = text::collapse_ws(handler.article_id);
  }

  if (doc.contrib_text.empty()) return std::nullopt;
  doc.list_format = detect_list_format(doc.contrib_text);
  return doc;
}

bool detect_list_format(std::string_view text) {
  size_t segments = 0;
  size_t listed = 0;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != ';' && text[i] != '\n') continue;
    const auto segment = text::trim(text.substr(start, i - start));
    start = i + 1;
    if (segment.empty()) continue;
    ++segments;
    const auto colon = segment.find(':');
    if (colon == std::string_view::npos) continue;
    const auto head = text::split_ws(segment.substr(0, colon));
    const auto tail = text::trim(segment.substr(colon + 1));
    if (!head.empty() && head.size() < 6 && !tail.empty()) ++listed;
  }
  return segments > 0 && 2 * listed >= segments;
}

std::vector<Document> sample_corpus(const std::vector<Document>& docs, size_t n, uint64_t seed) {
  if (n >= docs.size()) return docs;
  std::vector<size_t> idx(docs.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<size_t>(uniform_below(rng, idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  std::vector<Document> out;
  out.reserve(n);
  for (auto i : idx) out.push_back(docs[i]);
  return out;
}

IngestResult ingest_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::MissingPrerequisite, "corpus directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".xml" || ext == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  IngestResult result;
  std::map<std::string, int> seen_ids;
  for (const auto& path : files) {
    ++result.files_seen;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      result.diagnostics.push_back({path.string(), "cannot read file"});
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto format = path.extension() == ".xml" ? InputFormat::JatsXml : InputFormat::PlainText;
    const auto rel = fs::relative(path, dir).generic_string();
    try {
      auto doc = parse_article(buf.str(), format, path.stem().string(), rel);
      if (!doc) continue;
      if (int n = ++seen_ids[doc->doc_id]; n > 1) doc->doc_id = rel;
      result.documents.push_back(std::move(*doc));
    } catch (const Error& e) {
      result.diagnostics.push_back({rel, e.what()});
    }
  }
  return result;
}

}  // namespace rolemine
