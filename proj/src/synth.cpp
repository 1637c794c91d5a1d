#include "rolemine/synth.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "rolemine/discovery.hpp"
#include "rolemine/error.hpp"
#include "rolemine/io.hpp"
#include "rolemine/mentions.hpp"
#include "rolemine/random.hpp"
#include "rolemine/text.hpp"

namespace rolemine {

const std::vector<std::string>& default_role_names() {
  static const std::vector<std::string> names = {
      "Analysis",          "Conceptualization", "Coordination",  "Data collection", "Experimenting",
      "Interpretation",    "Literature review", "Paper drafting", "Paper reading",  "Paper review",
      "Paper revision",    "Paper writing",     "Study design",
  };
  return names;
}

namespace {

struct Phrase {
  const char* role;
  const char* text;
};

constexpr const char* kSupervision = "Supervision";
constexpr const char* kFunding = "Funding acquisition";
constexpr const char* kApproving = "Paper approving";

// Predicates as they appear after the subject list.
constexpr Phrase kPhrases[] = {
    {"Analysis", "analysed the data"},
    {"Analysis", "performed the statistical analysis"},
    {"Analysis", "carried out the statistical analyses"},
    {"Analysis", "carried out the data analysis"},
    {"Analysis", "carried out the analysis"},
    {"Analysis", "performed the data analysis"},
    {"Analysis", "analysed the results"},
    {"Conceptualization", "conceived the study"},
    {"Conceptualization", "conceived the idea"},
    {"Conceptualization", "conceived the project"},
    {"Conceptualization", "developed the concept of the study"},
    {"Conceptualization", "initiated the project"},
    {"Coordination", "coordinated the study"},
    {"Coordination", "coordinated the project"},
    {"Coordination", "helped to coordinate the study"},
    {"Coordination", "coordinated the research"},
    {"Data collection", "collected the data"},
    {"Data collection", "participated in data collection"},
    {"Data collection", "performed the data acquisition"},
    {"Data collection", "recruited the patients"},
    {"Data collection", "collected the samples"},
    {"Data collection", "acquired the clinical data"},
    {"Experimenting", "performed the experiments"},
    {"Experimenting", "carried out the experiments"},
    {"Experimenting", "conducted the laboratory experiments"},
    {"Experimenting", "carried out the molecular genetic studies"},
    {"Experimenting", "performed the sequencing"},
    {"Experimenting", "conducted the experiments"},
    {"Interpretation", "interpreted the results"},
    {"Interpretation", "participated in the interpretation of data"},
    {"Interpretation", "contributed to the interpretation of the results"},
    {"Interpretation", "interpreted the data"},
    {"Literature review", "reviewed the literature"},
    {"Literature review", "conducted the literature search"},
    {"Literature review", "performed the literature review"},
    {"Paper drafting", "drafted the manuscript"},
    {"Paper drafting", "drafted the paper"},
    {"Paper drafting", "helped to draft the manuscript"},
    {"Paper drafting", "prepared the first draft of the manuscript"},
    {"Paper review", "critically reviewed the manuscript"},
    {"Paper review", "reviewed the manuscript"},
    {"Paper review", "reviewed the paper"},
    {"Paper revision", "revised the manuscript"},
    {"Paper revision", "revised the manuscript critically for important intellectual content"},
    {"Paper revision", "revised the paper"},
    {"Paper writing", "participated in writing the manuscript"},
    {"Paper writing", "contributed to the writing of the manuscript"},
    {"Paper writing", "helped to write the paper"},
    {"Paper writing", "took part in writing the manuscript"},
    {"Study design", "designed the study"},
    {"Study design", "participated in the study design"},
    {"Study design", "participated in the design of the study"},
    {"Study design", "designed the experiments"},
    {"Study design", "planned the study"},
    {kSupervision, "supervised the project"},
    {kSupervision, "supervised the study"},
    {kSupervision, "supervised the work"},
    {kFunding, "obtained funding"},
    {kFunding, "acquired funding"},
};

// Short labels used in list-format sections.
constexpr Phrase kListPhrases[] = {
    {"Analysis", "analysis"},          {"Conceptualization", "conception"}, {"Coordination", "coordination"},
    {"Data collection", "data collection"}, {"Experimenting", "experiments"}, {"Interpretation", "interpretation"},
    {"Paper drafting", "drafting"},    {"Paper writing", "writing"},        {"Study design", "study design"},
};

constexpr const char* kNoise[] = {
    "The authors declare no competing interests.",
    "This work forms part of a doctoral thesis.",
    "Correspondence should be addressed to the first author.",
};

constexpr const char* kTitles[] = {
    "Authors' contributions", "Authors\xE2\x80\x99 contributions", "AUTHORS' CONTRIBUTIONS",
    "Authors contributions",
};

bool taxonomy_role(std::string_view role) {
  const auto& names = default_role_names();
  return std::find(names.begin(), names.end(), role) != names.end();
}

std::string pick_author(std::mt19937_64& rng) {
  const auto letter = [&rng] { return static_cast<char>('A' + uniform_below(rng, 26)); };
  const auto style = uniform_below(rng, 10);
  std::string s;
  if (style < 6) {
    const auto n = 2 + uniform_below(rng, 2);
    for (uint64_t i = 0; i < n; ++i) s += letter();
  } else if (style < 8) {
    s += letter();
    s += letter();
    s += '-';
    s += letter();
  } else {
    s += letter();
    s += '.';
    s += letter();
    s += '.';
  }
  return s;
}

std::string join_subjects(const std::vector<std::string>& subjects) {
  std::string out;
  for (size_t i = 0; i < subjects.size(); ++i) {
    if (i > 0) out += i + 1 == subjects.size() ? " and " : ", ";
    out += subjects[i];
  }
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string jats(const std::string& pmc_id, const std::string& title, const std::string& text, bool with_section,
                 std::mt19937_64& rng) {
  std::string x = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<article article-type=\"research-article\">\n";
  x += "<front><article-meta><article-id pub-id-type=\"pmc\">" + pmc_id + "</article-id>";
  x += "<title-group><article-title>Synthetic study " + pmc_id + "</article-title></title-group></article-meta></front>\n";
  x += "<body><sec><title>Methods</title><p>Samples were processed as described.</p></sec></body>\n<back>\n";
  if (uniform_below(rng, 2) == 0) {
    x += "<sec><title>Competing interests</title><p>The authors declare that they have no competing interests.</p></sec>\n";
  }
  if (with_section) {
    x += "<sec><title>" + xml_escape(title) + "</title><p>" + xml_escape(text) + "</p></sec>\n";
  } else {
    x += "<sec><title>Acknowledgements</title><p>" + xml_escape(text) + "</p></sec>\n";
  }
  x += "</back>\n</article>\n";
  return x;
}

const Phrase& pick_phrase(std::mt19937_64& rng, const std::vector<const Phrase*>& pool) {
  return *pool[uniform_below(rng, pool.size())];
}

}  // namespace

std::vector<SynthDoc> synthesize(const SynthOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::map<std::string, std::vector<const Phrase*>> by_role;
  for (const auto& p : kPhrases) by_role[p.role].push_back(&p);
  // roles with statement templates; reading is only expressed by the closing sentence
  std::vector<std::string> roles;
  for (const auto& r : default_role_names()) {
    if (by_role.count(r)) roles.push_back(r);
  }

  const auto stop = default_stopwords();

  std::vector<SynthDoc> docs;
  docs.reserve(opt.documents);
  for (size_t d = 0; d < opt.documents; ++d) {
    SynthDoc doc;
    const auto pmc = "PMC" + std::to_string(1000000 + d);
    doc.doc_id = pmc;
    doc.gold.doc_id = pmc;

    const size_t n_authors = 2 + uniform_below(rng, 5);
    std::vector<std::string> authors;
    std::set<std::string> seen_norm;
    while (authors.size() < n_authors) {
      auto a = pick_author(rng);
      if (stop.count(text::to_lower_ascii(a))) continue;  // "BE", "AN" read as words
      if (seen_norm.insert(normalize_subject(a)).second) authors.push_back(a);
    }

    std::string text;
    std::set<SubjectRole> gold;
    if (bernoulli(rng, opt.list_format_rate)) {
      doc.list_format = true;
      for (size_t i = 0; i < authors.size(); ++i) {
        if (i) text += "; ";
        text += authors[i] + ": ";
        const size_t k = 1 + uniform_below(rng, 3);
        std::set<size_t> picked;
        while (picked.size() < k) picked.insert(uniform_below(rng, std::size(kListPhrases)));
        bool first = true;
        for (auto p : picked) {
          if (!first) text += ", ";
          first = false;
          text += kListPhrases[p].text;
        }
      }
      text += ".";
    } else {
      const size_t n_statements = 2 + uniform_below(rng, 4);
      std::vector<std::string> sentences;
      for (size_t s = 0; s < n_statements; ++s) {
        // 1-3 subjects in author order
        const size_t k = 1 + uniform_below(rng, std::min<size_t>(3, authors.size()));
        std::set<size_t> idx;
        while (idx.size() < k) idx.insert(uniform_below(rng, authors.size()));
        std::vector<std::string> subjects;
        for (auto i : idx) subjects.push_back(authors[i]);

        const size_t n_phrases = bernoulli(rng, 0.3) ? 2 : 1;
        std::vector<const Phrase*> phrases;
        while (phrases.size() < n_phrases) {
          const Phrase* p;
          if (bernoulli(rng, 0.08)) {
            p = &pick_phrase(rng, by_role[bernoulli(rng, 0.6) ? kSupervision : kFunding]);
          } else {
            p = &pick_phrase(rng, by_role[roles[uniform_below(rng, roles.size())]]);
          }
          if (std::none_of(phrases.begin(), phrases.end(),
                           [p](const Phrase* q) { return std::string_view(q->role) == p->role; })) {
            phrases.push_back(p);
          }
        }
        std::string sentence = join_subjects(subjects) + " ";
        for (size_t i = 0; i < phrases.size(); ++i) {
          if (i) sentence += " and ";
          sentence += phrases[i]->text;
          for (const auto& subj : subjects) gold.emplace(subj, phrases[i]->role);
        }
        sentences.push_back(sentence + ".");
      }
      if (bernoulli(rng, 0.1)) sentences.push_back(kNoise[uniform_below(rng, std::size(kNoise))]);
      if (bernoulli(rng, 0.85)) {
        const std::string group = authors.size() == 2 && bernoulli(rng, 0.5) ? "Both authors" : "All authors";
        sentences.push_back(group + " read and approved the final manuscript.");
        gold.emplace(group, "Paper reading");
        gold.emplace(group, kApproving);
      }
      text = text::join(sentences, " ");
    }

    doc.section_text = text;
    const bool xml = bernoulli(rng, opt.xml_rate);
    doc.has_section = !(xml && bernoulli(rng, opt.no_section_rate));
    if (xml) {
      doc.file_name = pmc + ".xml";
      doc.content = jats(pmc, kTitles[uniform_below(rng, std::size(kTitles))], text, doc.has_section, rng);
    } else {
      doc.file_name = pmc + ".txt";
      doc.content = text + "\n";
    }
    if (doc.has_section && !doc.list_format) doc.gold.pairs.assign(gold.begin(), gold.end());
    docs.push_back(std::move(doc));
  }
  return docs;
}

void write_synthetic_corpus(const std::vector<SynthDoc>& docs, const std::filesystem::path& corpus_dir,
                            const std::filesystem::path& gold_path) {
  std::filesystem::create_directories(corpus_dir);
  std::vector<GoldAnnotation> gold;
  for (const auto& d : docs) {
    write_file_atomic(corpus_dir / d.file_name, d.content);
    if (!d.gold.pairs.empty()) gold.push_back(d.gold);
  }
  write_jsonl(gold_path, gold);
}

std::vector<CurationOp> synthetic_curation(const ClusterState& state, const RoleSet& roles,
                                           const StopwordSet& stopwords, const KeywordTable& kw) {
  // Normalized signature of every phrase -> generating role (first wins).
  std::map<std::pair<TermBag, TermBag>, std::string> signature;
  for (const auto& p : kPhrases) {
    Sentence s{"", 0, std::string("XY ") + p.text + "."};
    for (const auto& m : extract_mentions(s)) {
      if (auto n = normalize_for_classification(m, stopwords, kw)) {
        signature.emplace(std::make_pair(make_bag(n->action_terms), make_bag(n->object_terms)), p.role);
      }
    }
  }
  {
    Sentence s{"", 0, "All authors read and approved the final manuscript."};
    const char* names[] = {"Paper reading", kApproving};
    size_t i = 0;
    for (const auto& m : extract_mentions(s)) {
      if (auto n = normalize_for_classification(m, stopwords, kw)) {
        signature.emplace(std::make_pair(make_bag(n->action_terms), make_bag(n->object_terms)), names[std::min<size_t>(i, 1)]);
      }
      ++i;
    }
  }

  std::vector<CurationOp> ops;
  std::map<std::string, std::string> owner;  // taxonomy role -> first role id
  std::vector<std::pair<std::string, std::string>> renames;
  for (const auto& r : roles.roles) {
    std::map<std::string, size_t> votes;
    for (auto m : r.members) {
      const auto& nm = state.mentions[m];
      auto it = signature.find({make_bag(nm.action_terms), make_bag(nm.object_terms)});
      ++votes[it == signature.end() ? std::string() : it->second];
    }
    std::string best;
    size_t best_n = 0;
    for (const auto& [role, n] : votes) {
      if (!taxonomy_role(role)) continue;
      if (n > best_n) {
        best = role;
        best_n = n;
      }
    }
    CurationOp op;
    if (best.empty() || 10 * best_n < 4 * r.members.size()) {
      op.kind = CurationOp::Kind::Remove;
      op.a = r.id;
      ops.push_back(op);
      continue;
    }
    auto [it, fresh] = owner.emplace(best, r.id);
    if (fresh) {
      renames.emplace_back(r.id, best);
    } else {
      op.kind = CurationOp::Kind::Merge;
      op.a = it->second;
      op.b = r.id;
      ops.push_back(op);
    }
  }
  for (const auto& [id, name] : renames) {
    CurationOp op;
    op.kind = CurationOp::Kind::Rename;
    op.a = id;
    op.name = name;
    ops.push_back(op);
  }
  return ops;
}

}  // namespace rolemine
