#include "rolemine/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "rolemine/error.hpp"
#include "rolemine/text.hpp"

namespace rolemine {

PairsByDoc gold_by_doc(const std::vector<GoldAnnotation>& gold) {
  PairsByDoc out;
  for (const auto& g : gold) {
    auto& s = out[g.doc_id];
    s.insert(g.pairs.begin(), g.pairs.end());
  }
  return out;
}

std::string normalize_subject(std::string_view subject) {
  std::string s;
  s.reserve(subject.size());
  for (char c : subject) {
    if (c != '.') s += c;
  }
  return text::collapse_ws(text::fold_case(s));
}

double f1_score(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

Metrics prf(const RoleCounts& c) {
  Metrics m;
  m.precision = c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
  m.recall = c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

namespace {

using NormPairs = std::set<SubjectRole>;

NormPairs normalized(const std::set<SubjectRole>& pairs) {
  NormPairs out;
  for (const auto& [s, r] : pairs) out.emplace(normalize_subject(s), r);
  return out;
}

const std::set<SubjectRole>& pairs_of(const PairsByDoc& m, const std::string& doc) {
  static const std::set<SubjectRole> empty;
  auto it = m.find(doc);
  return it == m.end() ? empty : it->second;
}

std::set<std::string> docs_of(const PairsByDoc& a, const PairsByDoc& b) {
  std::set<std::string> docs;
  for (const auto& [d, p] : a) docs.insert(d);
  for (const auto& [d, p] : b) docs.insert(d);
  return docs;
}

}  // namespace

std::map<std::string, RoleCounts> match_pairs(const PairsByDoc& predicted, const PairsByDoc& gold) {
  std::map<std::string, RoleCounts> out;
  for (const auto& doc : docs_of(predicted, gold)) {
    const auto p = normalized(pairs_of(predicted, doc));
    const auto g = normalized(pairs_of(gold, doc));
    for (const auto& pr : p) {
      if (g.count(pr)) ++out[pr.second].tp;
      else ++out[pr.second].fp;
    }
    for (const auto& gr : g) {
      if (!p.count(gr)) ++out[gr.second].fn;
    }
  }
  return out;
}

std::string_view to_string(ErrorCause cause) {
  switch (cause) {
    case ErrorCause::MentionExtraction: return "mention-extraction";
    case ErrorCause::MissingRole: return "missing-role";
    case ErrorCause::Classification: return "classification";
  }
  return "?";
}

std::map<ErrorCause, CauseCounts> classify_errors(const PairsByDoc& predicted, const PairsByDoc& gold,
                                                  const std::map<std::string, DocTrace>& trace,
                                                  const std::vector<std::string>& known_roles) {
  std::map<ErrorCause, CauseCounts> out;
  for (auto c : {ErrorCause::MentionExtraction, ErrorCause::MissingRole, ErrorCause::Classification}) out[c];
  const std::set<std::string> known(known_roles.begin(), known_roles.end());
  for (const auto& doc : docs_of(predicted, gold)) {
    const auto p = normalized(pairs_of(predicted, doc));
    const auto g = normalized(pairs_of(gold, doc));
    std::vector<SubjectRole> fps, fns;
    std::set_difference(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(fps));
    std::set_difference(g.begin(), g.end(), p.begin(), p.end(), std::back_inserter(fns));
    if (fps.empty() && fns.empty()) continue;
    auto t = trace.find(doc);
    if (t == trace.end()) throw Error(ErrorCode::TraceUnavailable, "no extraction trace for document '" + doc + "'");
    std::set<std::string> seen;
    for (const auto& s : t->second.subjects) seen.insert(normalize_subject(s));
    std::set<std::string> gold_subjects;
    for (const auto& [s, r] : g) gold_subjects.insert(s);
    for (const auto& [s, r] : fns) {
      if (!known.count(r)) ++out[ErrorCause::MissingRole].recall_errors;
      else if (!seen.count(s)) ++out[ErrorCause::MentionExtraction].recall_errors;
      else ++out[ErrorCause::Classification].recall_errors;
    }
    for (const auto& [s, r] : fps) {
      if (!gold_subjects.count(s)) ++out[ErrorCause::MentionExtraction].precision_errors;
      else ++out[ErrorCause::Classification].precision_errors;
    }
  }
  return out;
}

EvalReport evaluate(const PairsByDoc& predicted, const PairsByDoc& gold, const std::vector<std::string>& declared_roles,
                    const std::map<std::string, DocTrace>* trace) {
  EvalReport rep;
  rep.documents = docs_of(predicted, gold).size();
  const std::set<std::string> declared(declared_roles.begin(), declared_roles.end());
  double sum_p = 0.0, sum_r = 0.0;
  size_t n = 0;
  for (const auto& [role, counts] : match_pairs(predicted, gold)) {
    RoleScore s;
    s.counts = counts;
    s.metrics = prf(counts);
    s.scored = declared.empty() || declared.count(role) > 0;
    if (s.scored) {
      sum_p += s.metrics.precision;
      sum_r += s.metrics.recall;
      ++n;
      rep.totals.tp += counts.tp;
      rep.totals.fp += counts.fp;
      rep.totals.fn += counts.fn;
    }
    rep.per_role.emplace(role, s);
  }
  if (n) {
    rep.averages.precision = sum_p / static_cast<double>(n);
    rep.averages.recall = sum_r / static_cast<double>(n);
    rep.averages.f1 = f1_score(rep.averages.precision, rep.averages.recall);
  }
  if (trace) {
    try {
      rep.errors = classify_errors(predicted, gold, *trace, declared_roles);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TraceUnavailable) throw;
    }
  }
  return rep;
}

std::string format_report(const EvalReport& rep) {
  size_t width = std::string_view("Average").size();
  for (const auto& [role, s] : rep.per_role) width = std::max(width, role.size() + (s.scored ? 0 : 1));
  std::ostringstream out;
  char line[256];
  auto row = [&](const std::string& name, const Metrics& m, const RoleCounts* c) {
    std::snprintf(line, sizeof line, "%-*s  %9.2f  %6.2f  %5.2f", static_cast<int>(width), name.c_str(), m.precision,
                  m.recall, m.f1);
    out << line;
    if (c) {
      std::snprintf(line, sizeof line, "  %4zu %4zu %4zu", c->tp, c->fp, c->fn);
      out << line;
    }
    out << "\n";
  };
  std::snprintf(line, sizeof line, "%-*s  %9s  %6s  %5s  %4s %4s %4s\n", static_cast<int>(width), "Role", "Precision",
                "Recall", "F1", "tp", "fp", "fn");
  out << line;
  for (const auto& [role, s] : rep.per_role) row(s.scored ? role : role + "*", s.metrics, &s.counts);
  row("Average", rep.averages, nullptr);
  out << "# averages are unweighted means of per-role precision and recall; F1 from the two means\n";
  if (std::any_of(rep.per_role.begin(), rep.per_role.end(), [](const auto& kv) { return !kv.second.scored; })) {
    out << "# * role not in the model's classes; reported, not averaged\n";
  }
  if (rep.errors) {
    out << "\nError source          precision  recall\n";
    for (const auto& [cause, c] : *rep.errors) {
      std::snprintf(line, sizeof line, "%-20s  %9zu  %6zu\n", std::string(to_string(cause)).c_str(),
                    c.precision_errors, c.recall_errors);
      out << line;
    }
  }
  return out.str();
}

}  // namespace rolemine
