#include "rolemine/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <toml.hpp>

#include "rolemine/classifier.hpp"
#include "rolemine/curation.hpp"
#include "rolemine/discovery.hpp"
#include "rolemine/error.hpp"
#include "rolemine/evaluate.hpp"
#include "rolemine/mentions.hpp"
#include "rolemine/normalize.hpp"

namespace rolemine {

namespace fs = std::filesystem;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"paths", {"corpus", "work_dir", "keywords", "stopwords", "curation", "gold", "model", "roleset", "classify_input"}},
      {"thresholds", {"min_mention_count", "min_keyword_freq", "cluster_threshold"}},
      {"sample", {"size", "seed"}},
      {"extract", {"expand_group_subjects"}},
      {"classify", {"alpha"}},
  };
  return keys;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return (path.is_absolute() ? path : base / path).lexically_normal();
}

template <typename T>
T integer_key(const toml::table& t, const char* key, T fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  auto v = node->value<int64_t>();
  if (!v || *v < 0) throw Error(ErrorCode::ConfigInvalid, std::string(key) + " must be a non-negative integer");
  return static_cast<T>(*v);
}

double float_key(const toml::table& t, const char* key, double fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  auto v = node->value<double>();
  if (!v) throw Error(ErrorCode::ConfigInvalid, std::string(key) + " must be a number");
  return *v;
}

void require(const fs::path& p, std::string_view what) {
  if (!fs::exists(p)) {
    throw Error(ErrorCode::MissingPrerequisite, std::string(what) + " not found: " + p.string());
  }
}

}  // namespace

PipelineConfig PipelineConfig::parse(std::string_view text, const fs::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string(e.description()) + " at line " +
                                              std::to_string(e.source().begin.line));
  }
  for (const auto& [section, node] : root) {
    const std::string name(section.str());
    auto it = known_keys().find(name);
    if (it == known_keys().end() || !node.is_table()) {
      throw Error(ErrorCode::ConfigInvalid, "unknown section [" + name + "]");
    }
    for (const auto& [key, value] : *node.as_table()) {
      (void)value;
      if (!it->second.count(std::string(key.str()))) {
        throw Error(ErrorCode::ConfigInvalid, "unknown key " + name + "." + std::string(key.str()));
      }
    }
  }

  PipelineConfig c;
  const toml::table empty;
  auto section = [&](const char* name) -> const toml::table& {
    const auto* t = root.get_as<toml::table>(name);
    return t ? *t : empty;
  };
  const auto& paths = section("paths");
  auto path_key = [&](const char* key) -> std::optional<fs::path> {
    const auto* node = paths.get(key);
    if (!node) return std::nullopt;
    auto v = node->value<std::string>();
    if (!v || v->empty()) throw Error(ErrorCode::ConfigInvalid, std::string("paths.") + key + " must be a string");
    return resolve(base_dir, *v);
  };
  c.corpus = path_key("corpus").value_or(resolve(base_dir, "corpus"));
  c.work_dir = path_key("work_dir").value_or(resolve(base_dir, "work"));
  c.keywords = path_key("keywords");
  c.stopwords = path_key("stopwords");
  c.curation = path_key("curation");
  c.gold = path_key("gold");
  c.model = path_key("model");
  c.roleset = path_key("roleset");
  c.classify_input = path_key("classify_input");

  const auto& th = section("thresholds");
  c.min_mention_count = integer_key<size_t>(th, "min_mention_count", c.min_mention_count);
  c.min_keyword_freq = integer_key<size_t>(th, "min_keyword_freq", c.min_keyword_freq);
  c.cluster_threshold = float_key(th, "cluster_threshold", c.cluster_threshold);
  const auto& sample = section("sample");
  c.sample_size = integer_key<size_t>(sample, "size", c.sample_size);
  c.seed = integer_key<uint64_t>(sample, "seed", c.seed);
  if (const auto* node = section("extract").get("expand_group_subjects")) {
    auto v = node->value<bool>();
    if (!v) throw Error(ErrorCode::ConfigInvalid, "extract.expand_group_subjects must be a boolean");
    c.expand_group_subjects = *v;
  }
  c.alpha = float_key(section("classify"), "alpha", c.alpha);
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& file) {
  if (!fs::exists(file)) throw Error(ErrorCode::ConfigInvalid, "config file not found: " + file.string());
  const auto abs = fs::absolute(file);
  return parse(read_file(abs), abs.parent_path());
}

void PipelineConfig::validate() const {
  if (min_mention_count == 0) throw Error(ErrorCode::ConfigInvalid, "min_mention_count must be positive");
  if (min_keyword_freq == 0) throw Error(ErrorCode::ConfigInvalid, "min_keyword_freq must be positive");
  if (!(cluster_threshold > 0)) throw Error(ErrorCode::ConfigInvalid, "cluster_threshold must be positive");
  if (!(alpha > 0)) throw Error(ErrorCode::ConfigInvalid, "alpha must be positive");
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Ingest: return "ingest";
    case Stage::Extract: return "extract";
    case Stage::Normalize: return "normalize";
    case Stage::Discover: return "discover";
    case Stage::Train: return "train";
    case Stage::Classify: return "classify";
    case Stage::Eval: return "eval";
  }
  return "?";
}

std::optional<Stage> stage_from_string(std::string_view s) {
  for (auto st : all_stages()) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> stages = {Stage::Ingest, Stage::Extract,  Stage::Normalize, Stage::Discover,
                                            Stage::Train,  Stage::Classify, Stage::Eval};
  return stages;
}

StopwordSet load_stopword_config(const PipelineConfig& c) {
  if (!c.stopwords) return default_stopwords();
  require(*c.stopwords, "stopword list");
  return load_stopwords(read_file(*c.stopwords));
}

KeywordTable load_active_keywords(const PipelineConfig& c) {
  const auto path = c.keywords.value_or(c.artifact("keywords.json"));
  require(path, "keyword table");
  try {
    return keywords_from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, path.string() + ": " + e.what());
  }
}

std::vector<CurationOp> load_curation(const PipelineConfig& c) {
  const auto path = c.curation_path();
  if (!fs::exists(path)) return {};
  try {
    return curation_from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, path.string() + ": " + e.what());
  }
}

RoleGraphFile load_discovery_state(const PipelineConfig& c) {
  const auto mpath = c.artifact("mentions.norm.jsonl");
  const auto gpath = c.artifact("rolegraph.json");
  require(mpath, "normalized mentions");
  require(gpath, "role graph");
  json g;
  try {
    g = json::parse(read_file(gpath));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::StateCorrupt, gpath.string() + ": " + e.what());
  }
  return rolegraph_from_json(g, read_jsonl<NormalizedMention>(mpath));
}

RoleSet apply_curation_lenient(const ClusterState& state, const std::vector<CurationOp>& ops,
                               std::vector<Diagnostic>* diagnostics) {
  auto rs = initial_roleset(state);
  for (const auto& op : ops) {
    try {
      apply_op(rs, state, op);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnknownRole) throw;
      if (diagnostics) diagnostics->push_back({"curation", std::string("skipped stale op: ") + e.what()});
    }
  }
  return rs;
}

StageResult run_ingest(const PipelineConfig& c) {
  StageResult r;
  r.stage = Stage::Ingest;
  auto ingest = ingest_directory(c.corpus);
  const size_t found = ingest.documents.size();
  auto docs = c.sample_size ? sample_corpus(ingest.documents, c.sample_size, c.seed) : std::move(ingest.documents);
  const auto out = c.artifact("sections.jsonl");
  write_jsonl(out, docs);
  r.outputs.push_back(out);
  r.diagnostics = std::move(ingest.diagnostics);
  r.stats = json{{"files", ingest.files_seen},
                 {"sections_found", found},
                 {"sections_kept", docs.size()},
                 {"list_format", std::count_if(docs.begin(), docs.end(), [](const Document& d) { return d.list_format; })},
                 {"malformed", r.diagnostics.size()}};
  return r;
}

StageResult run_extract(const PipelineConfig& c) {
  StageResult r;
  r.stage = Stage::Extract;
  const auto in = c.artifact("sections.jsonl");
  require(in, "sections");
  const auto out = c.artifact("mentions.jsonl");
  AtomicWriter w(out);
  size_t docs = 0, skipped = 0, mentions = 0;
  for_each_jsonl(in, [&](const json& j) {
    const auto doc = j.get<Document>();
    ++docs;
    if (doc.list_format) {
      ++skipped;
      r.diagnostics.push_back({doc.doc_id, "ListFormatInput: list-format section skipped"});
      return;
    }
    auto ms = extract_document_mentions(doc, &r.diagnostics);
    if (c.expand_group_subjects) ms = expand_group_subjects(ms, individual_subjects(ms));
    for (const auto& m : ms) w.stream() << json(m).dump() << '\n';
    mentions += ms.size();
  });
  w.commit();
  r.outputs.push_back(out);
  r.stats = json{{"sections", docs}, {"list_format_skipped", skipped}, {"mentions", mentions}};
  return r;
}

StageResult run_normalize(const PipelineConfig& c) {
  StageResult r;
  r.stage = Stage::Normalize;
  const auto in = c.artifact("mentions.jsonl");
  require(in, "mentions");
  NormalizeOptions opt;
  opt.min_mention_count = c.min_mention_count;
  opt.min_keyword_freq = c.min_keyword_freq;
  if (c.keywords) opt.keywords = load_active_keywords(c);
  const auto res = normalize_corpus(read_jsonl<RoleMention>(in), load_stopword_config(c), opt);
  const auto out = c.artifact("mentions.norm.jsonl");
  write_jsonl(out, res.mentions);
  const auto kw_out = c.artifact("keywords.json");
  write_file_atomic(kw_out, dump(keywords_to_json(res.keywords)));
  r.outputs = {out, kw_out};
  r.diagnostics = res.diagnostics;
  const auto& s = res.stats;
  r.stats = json{{"keywords", {{"source", c.keywords ? "config" : "induced"},
                               {"action", res.keywords.action_count()},
                               {"object", res.keywords.object_count()},
                               {"fingerprint", res.keywords.fingerprint()}}},
                 {"trajectory",
                  json::array({
                      json{{"step", "extracted"}, {"mentions", s.raw_mentions}, {"distinct_pairs", s.raw_distinct_pairs}},
                      json{{"step", "cleaned"}, {"mentions", s.cleaned_mentions}, {"distinct_pairs", s.cleaned_distinct_pairs}},
                      json{{"step", "frequent"}, {"mentions", s.filtered_mentions}, {"distinct_pairs", s.filtered_distinct_pairs}},
                      json{{"step", "keyword_space"}, {"mentions", s.transformed_mentions}, {"distinct_pairs", s.transformed_distinct_pairs}},
                  })},
                 {"degenerate", s.degenerate},
                 {"null_mentions", s.null_mentions}};
  return r;
}

StageResult run_discover(const PipelineConfig& c) {
  StageResult r;
  r.stage = Stage::Discover;
  const auto in = c.artifact("mentions.norm.jsonl");
  require(in, "normalized mentions");
  const auto mentions = read_jsonl<NormalizedMention>(in);
  const auto ops = load_curation(c);
  ClusterOptions opt;
  opt.threshold = c.cluster_threshold;
  opt.pins = collect_pins(ops);
  const auto res = cluster(mentions, opt);
  const auto graph_out = c.artifact("rolegraph.json");
  write_file_atomic(graph_out, dump(rolegraph_to_json(res.state, opt.threshold, opt.pins, res.merges)));
  const auto rs = apply_curation_lenient(res.state, ops, &r.diagnostics);
  const auto rs_out = c.roleset_path();
  write_file_atomic(rs_out, dump(json(rs)));
  r.outputs = {graph_out, rs_out};
  const auto init = init_clusters(mentions);
  r.stats = json{{"mentions", mentions.size()},
                 {"threshold", opt.threshold},
                 {"pins", opt.pins.size()},
                 {"initial", {{"action_clusters", init.action_clusters.size()},
                              {"object_clusters", init.object_clusters.size()},
                              {"role_clusters", role_cluster_count(init)}}},
                 {"final", {{"action_clusters", res.state.action_clusters.size()},
                            {"object_clusters", res.state.object_clusters.size()},
                            {"role_clusters", role_cluster_count(res.state)}}},
                 {"merges", res.merges.size()},
                 {"stopped_at_similarity", res.last_similarity},
                 {"roles", rs.roles.size()}};
  return r;
}

StageResult run_train(const PipelineConfig& c) {
  StageResult r;
  r.stage = Stage::Train;
  const auto rs_path = c.roleset_path();
  require(rs_path, "role set");
  const auto m_path = c.artifact("mentions.norm.jsonl");
  require(m_path, "normalized mentions");
  RoleSet rs;
  try {
    rs = json::parse(read_file(rs_path)).get<RoleSet>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::StateCorrupt, rs_path.string() + ": " + e.what());
  }
  const auto kw = load_active_keywords(c);
  const auto examples = build_training_set(rs, read_jsonl<NormalizedMention>(m_path));
  std::vector<std::string> names;
  for (const auto& role : rs.roles) names.push_back(role.name);
  const auto model = train(examples, kw, c.alpha, names);
  const auto out = c.model_path();
  write_file_atomic(out, dump(json(model)));
  r.outputs.push_back(out);
  json per_class = json::object();
  for (size_t i = 0; i < model.classes.size(); ++i) per_class[model.classes[i]] = model.class_counts[i];
  r.stats = json{{"examples", examples.size()}, {"classes", model.classes.size()}, {"features", model.feature_count},
                 {"per_class", per_class}};
  return r;
}

StageResult run_classify(const PipelineConfig& c) {
  StageResult r;
  r.stage = Stage::Classify;
  const auto in = c.classify_input.value_or(c.artifact("sections.jsonl"));
  require(in, "sections");
  const auto mpath = c.model_path();
  require(mpath, "model");
  NBModel model;
  try {
    model = json::parse(read_file(mpath)).get<NBModel>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::StateCorrupt, mpath.string() + ": " + e.what());
  }
  const auto kw = load_active_keywords(c);
  const auto stop = load_stopword_config(c);
  ExtractOptions opt;
  opt.stopwords = &stop;
  opt.expand_group_subjects = c.expand_group_subjects;
  const auto out = c.artifact("roles.jsonl");
  const auto trace_out = c.artifact("trace.jsonl");
  AtomicWriter w(out);
  AtomicWriter tw(trace_out);
  size_t docs = 0, pairs = 0, nulls = 0, dropped = 0, mentions = 0;
  for_each_jsonl(in, [&](const json& j) {
    const auto doc = j.get<Document>();
    ++docs;
    auto res = extract_roles(doc, model, kw, opt);
    json subjects = json::array();
    std::set<std::string> seen;
    json mention_log = json::array();
    for (const auto& t : res.trace) {
      ++mentions;
      if (!t.normalized) ++dropped;
      else if (!t.role) ++nulls;
      if (seen.insert(t.mention.subject).second) subjects.push_back(t.mention.subject);
      mention_log.push_back(json{{"sentence", t.mention.sentence_index},
                                 {"subject", t.mention.subject},
                                 {"action", t.normalized ? json(t.normalized->action_terms) : json(nullptr)},
                                 {"object", t.normalized ? json(t.normalized->object_terms) : json(nullptr)},
                                 {"role", t.role ? json(*t.role) : json(nullptr)}});
    }
    tw.stream() << json{{"doc_id", doc.doc_id}, {"list_format", doc.list_format}, {"subjects", subjects},
                        {"mentions", mention_log}}
                       .dump()
                << '\n';
    for (const auto& [s, role] : res.pairs) {
      w.stream() << json(RoleAssignment{doc.doc_id, s, role}).dump() << '\n';
      ++pairs;
    }
    for (auto& d : res.diagnostics) r.diagnostics.push_back(std::move(d));
  });
  w.commit();
  tw.commit();
  r.outputs = {out, trace_out};
  r.stats = json{{"sections", docs}, {"mentions", mentions}, {"dropped_in_cleaning", dropped}, {"null", nulls},
                 {"pairs", pairs}};
  return r;
}

StageResult run_eval(const PipelineConfig& c) {
  StageResult r;
  r.stage = Stage::Eval;
  if (!c.gold) throw Error(ErrorCode::MissingPrerequisite, "paths.gold is not configured");
  require(*c.gold, "gold annotations");
  const auto roles_path = c.artifact("roles.jsonl");
  require(roles_path, "classified roles");
  const auto mpath = c.model_path();
  require(mpath, "model");
  const auto model = json::parse(read_file(mpath)).get<NBModel>();

  const auto gold = gold_by_doc(read_jsonl<GoldAnnotation>(*c.gold));
  PairsByDoc predicted;
  for (const auto& a : read_jsonl<RoleAssignment>(roles_path)) predicted[a.doc_id].emplace(a.subject, a.role);

  // Only documents that were classified are scored.
  std::map<std::string, DocTrace> trace;
  std::set<std::string> classified;
  const auto trace_path = c.artifact("trace.jsonl");
  const bool have_trace = fs::exists(trace_path);
  if (have_trace) {
    for_each_jsonl(trace_path, [&](const json& j) {
      const auto id = j.at("doc_id").get<std::string>();
      if (j.value("list_format", false)) return;
      classified.insert(id);
      DocTrace t;
      for (const auto& s : j.at("subjects")) t.subjects.insert(s.get<std::string>());
      trace.emplace(id, std::move(t));
    });
  }
  PairsByDoc scored_gold;
  for (const auto& [doc, pairs] : gold) {
    if (!have_trace || classified.count(doc)) scored_gold.emplace(doc, pairs);
  }
  const auto report = evaluate(predicted, scored_gold, model.classes, have_trace ? &trace : nullptr);
  if (!have_trace) r.diagnostics.push_back({"eval", "TraceUnavailable: error breakdown omitted"});
  const auto json_out = c.artifact("report.json");
  const auto txt_out = c.artifact("report.txt");
  write_file_atomic(json_out, dump(report_to_json(report)));
  write_file_atomic(txt_out, format_report(report));
  r.outputs = {json_out, txt_out};
  r.stats = json{{"documents", report.documents},
                 {"precision", report.averages.precision},
                 {"recall", report.averages.recall},
                 {"f1", report.averages.f1}};
  return r;
}

StageResult run_stage(Stage stage, const PipelineConfig& c) {
  c.validate();
  switch (stage) {
    case Stage::Ingest: return run_ingest(c);
    case Stage::Extract: return run_extract(c);
    case Stage::Normalize: return run_normalize(c);
    case Stage::Discover: return run_discover(c);
    case Stage::Train: return run_train(c);
    case Stage::Classify: return run_classify(c);
    case Stage::Eval: return run_eval(c);
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown stage");
}

}  // namespace rolemine
