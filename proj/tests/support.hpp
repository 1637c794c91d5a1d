#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rolemine/io.hpp"
#include "rolemine/normalize.hpp"
#include "rolemine/random.hpp"

namespace rolemine::test {

inline std::filesystem::path data_dir() { return ROLEMINE_DATA_DIR; }
inline std::filesystem::path test_data_dir() { return ROLEMINE_TEST_DATA_DIR; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("rolemine-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline KeywordTable keyword_table() { return keywords_from_json(json::parse(read_file(data_dir() / "keywords.json"))); }

inline NBModel bundled_model() { return json::parse(read_file(data_dir() / "model.json")).get<NBModel>(); }

inline NormalizedMention nm(std::vector<std::string> action, std::vector<std::string> object,
                            std::string subject = "X", std::string doc = "d") {
  NormalizedMention m;
  m.doc_id = std::move(doc);
  m.subject = std::move(subject);
  m.action_terms = std::move(action);
  m.object_terms = std::move(object);
  return m;
}

inline RoleMention rm(std::string subject, std::vector<std::string> action, std::vector<std::string> object,
                      size_t sentence = 0, std::string doc = "d") {
  return RoleMention{std::move(doc), sentence, std::move(subject), std::move(action), std::move(object)};
}

/// Keyword-space mentions over small action/object alphabets, so that bags
/// collide often enough for every clustering path to be exercised.
inline std::vector<NormalizedMention> random_keyword_mentions(std::mt19937_64& rng, size_t n, size_t n_actions,
                                                              size_t n_objects, size_t max_terms = 2) {
  std::vector<NormalizedMention> out;
  for (size_t i = 0; i < n; ++i) {
    NormalizedMention m;
    m.doc_id = "d" + std::to_string(i / 4);
    m.sentence_index = i % 4;
    m.subject = "S" + std::to_string(i % 3);
    const size_t na = 1 + uniform_below(rng, max_terms);
    for (size_t k = 0; k < na; ++k) m.action_terms.push_back("a" + std::to_string(uniform_below(rng, n_actions)));
    const size_t no = uniform_below(rng, max_terms + 1);
    for (size_t k = 0; k < no; ++k) m.object_terms.push_back("o" + std::to_string(uniform_below(rng, n_objects)));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace rolemine::test
