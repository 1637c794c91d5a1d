#include "rolemine/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "rolemine/error.hpp"
#include "rolemine/text.hpp"

namespace rolemine {

bool FeatureVector::all_zero() const {
  return std::none_of(bits.begin(), bits.end(), [](uint8_t b) { return b != 0; });
}

namespace {

bool is_raw(const std::string& t) {
  if (t.empty()) return true;
  return std::any_of(t.begin(), t.end(), [](char c) { return text::is_upper(c) || std::isspace(static_cast<unsigned char>(c)); });
}

void set_bits(FeatureVector& fv, const std::vector<std::string>& terms, const KeywordTable& kw) {
  for (const auto& t : terms) {
    if (is_raw(t)) throw Error(ErrorCode::TableMismatch, "term '" + t + "' was not cleaned");
    if (auto i = kw.index_of(t)) fv.bits[*i] = 1;
  }
}

}  // namespace

FeatureVector featurize(const NormalizedMention& m, const KeywordTable& kw) {
  FeatureVector fv;
  fv.bits.assign(kw.size(), 0);
  set_bits(fv, m.action_terms, kw);
  set_bits(fv, m.object_terms, kw);
  return fv;
}

NBModel train(const std::vector<LabeledVector>& examples, size_t feature_count, double alpha,
              const std::vector<std::string>& declared_classes) {
  if (examples.empty()) throw Error(ErrorCode::EmptyTrainingSet, "no training examples");
  if (!(alpha > 0)) throw Error(ErrorCode::ConfigInvalid, "smoothing alpha must be positive");
  std::map<std::string, size_t> index;
  for (const auto& c : declared_classes) index.emplace(c, 0);
  for (const auto& e : examples) index.emplace(e.label, 0);

  NBModel model;
  model.alpha = alpha;
  model.feature_count = feature_count;
  for (auto& [name, i] : index) {
    i = model.classes.size();
    model.classes.push_back(name);
  }
  const size_t k = model.classes.size();
  model.class_counts.assign(k, 0);
  std::vector<std::vector<size_t>> present(k, std::vector<size_t>(feature_count, 0));
  for (const auto& e : examples) {
    if (e.features.bits.size() != feature_count) {
      throw Error(ErrorCode::TableMismatch, "feature vector of length " + std::to_string(e.features.bits.size()) +
                                                ", expected " + std::to_string(feature_count));
    }
    const auto c = index.at(e.label);
    ++model.class_counts[c];
    for (size_t f = 0; f < feature_count; ++f) present[c][f] += e.features.bits[f] ? 1 : 0;
  }
  for (size_t c = 0; c < k; ++c) {
    if (model.class_counts[c] == 0) {
      throw Error(ErrorCode::ClassWithNoExamples, "class '" + model.classes[c] + "' has no examples");
    }
  }
  const double n = static_cast<double>(examples.size());
  model.log_priors.resize(k);
  model.log_present.assign(k, std::vector<double>(feature_count));
  model.log_absent.assign(k, std::vector<double>(feature_count));
  for (size_t c = 0; c < k; ++c) {
    const double nc = static_cast<double>(model.class_counts[c]);
    model.log_priors[c] = std::log(nc / n);
    for (size_t f = 0; f < feature_count; ++f) {
      const double p = (static_cast<double>(present[c][f]) + alpha) / (nc + 2 * alpha);
      model.log_present[c][f] = std::log(p);
      model.log_absent[c][f] = std::log1p(-p);
    }
  }
  return model;
}

NBModel train(const std::vector<LabeledMention>& examples, const KeywordTable& kw, double alpha,
              const std::vector<std::string>& declared_classes) {
  std::vector<LabeledVector> vectors;
  vectors.reserve(examples.size());
  for (const auto& e : examples) vectors.push_back({featurize(e.mention, kw), e.role});
  auto model = train(vectors, kw.size(), alpha, declared_classes);
  model.keyword_fingerprint = kw.fingerprint();
  for (const auto& e : kw.entries()) model.feature_names.push_back(e.stem);
  return model;
}

std::vector<double> log_scores(const NBModel& model, const FeatureVector& fv) {
  if (fv.bits.size() != model.feature_count) {
    throw Error(ErrorCode::TableMismatch, "feature vector of length " + std::to_string(fv.bits.size()) +
                                              ", model expects " + std::to_string(model.feature_count));
  }
  std::vector<double> s(model.classes.size());
  for (size_t c = 0; c < s.size(); ++c) {
    double v = model.log_priors[c];
    for (size_t f = 0; f < model.feature_count; ++f) v += fv.bits[f] ? model.log_present[c][f] : model.log_absent[c][f];
    s[c] = v;
  }
  return s;
}

std::vector<double> posterior(const NBModel& model, const FeatureVector& fv) {
  auto s = log_scores(model, fv);
  if (s.empty()) return s;
  const double top = *std::max_element(s.begin(), s.end());
  double z = 0.0;
  for (auto& v : s) {
    v = std::exp(v - top);
    z += v;
  }
  for (auto& v : s) v /= z;
  return s;
}

std::optional<std::string> predict(const NBModel& model, const FeatureVector& fv) {
  if (fv.all_zero()) return std::nullopt;
  const auto s = log_scores(model, fv);
  if (s.empty()) return std::nullopt;
  const double top = *std::max_element(s.begin(), s.end());
  // scores equal up to rounding count as tied; classes are sorted
  const double tol = 1e-9 * (1.0 + std::abs(top));
  size_t best = 0;
  while (s[best] < top - tol) ++best;
  return model.classes[best];
}

std::optional<std::string> predict(const NBModel& model, const NormalizedMention& m, const KeywordTable& kw) {
  if (!model.keyword_fingerprint.empty() && model.keyword_fingerprint != kw.fingerprint()) {
    throw Error(ErrorCode::TableMismatch, "model was trained on keyword table " + model.keyword_fingerprint +
                                              ", got " + kw.fingerprint());
  }
  return predict(model, featurize(m, kw));
}

ExtractionResult extract_roles(const Document& doc, const NBModel& model, const KeywordTable& kw,
                               const ExtractOptions& options) {
  ExtractionResult res;
  res.doc_id = doc.doc_id;
  res.list_format = doc.list_format;
  if (doc.list_format) {
    res.diagnostics.push_back({doc.doc_id, std::string(to_string(ErrorCode::ListFormatInput)) +
                                               ": list-format section skipped"});
    return res;
  }
  if (!model.keyword_fingerprint.empty() && model.keyword_fingerprint != kw.fingerprint()) {
    throw Error(ErrorCode::TableMismatch, "model was trained on keyword table " + model.keyword_fingerprint +
                                              ", got " + kw.fingerprint());
  }
  const auto& stop = options.stopwords ? *options.stopwords : default_stopwords();
  auto mentions = extract_document_mentions(doc, &res.diagnostics);
  if (options.expand_group_subjects) mentions = expand_group_subjects(mentions, individual_subjects(mentions));
  for (auto& m : mentions) {
    MentionTrace t;
    t.normalized = normalize_for_classification(m, stop, kw);
    if (t.normalized) t.role = predict(model, featurize(*t.normalized, kw));
    if (t.role) res.pairs.emplace(m.subject, *t.role);
    t.mention = std::move(m);
    res.trace.push_back(std::move(t));
  }
  return res;
}

ExtractionResult extract_roles(std::string_view text, const NBModel& model, const KeywordTable& kw,
                               const ExtractOptions& options) {
  Document doc;
  doc.contrib_text = std::string(text);
  doc.list_format = !doc.contrib_text.empty() && detect_list_format(doc.contrib_text);
  return extract_roles(doc, model, kw, options);
}

}  // namespace rolemine
