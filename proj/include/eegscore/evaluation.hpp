#pragma once
// Gold-label manifests, confusion matrices and precision/recall/F1 reporting.
//
// Manifest CSV: header "record_id,path,label", one record per line, no quoting.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "eegscore/errors.hpp"
#include "eegscore/io.hpp"
#include "eegscore/model.hpp"
#include "eegscore/pipeline.hpp"

namespace eegscore {

/// Display names of a task's classes, in matrix order.
inline std::vector<std::string> task_labels(Task task) {
  switch (task) {
    case Task::Seizure:
      return {"Absence", "Complex Partial", "Simple Partial", "Myoclonic", "Tonic-Clonic", "None"};
    case Task::Normality: return {"Normal", "Abnormal"};
    case Task::Epilepsy: return {"Epilepsy", "No Epilepsy"};
  }
  return {};
}

/// Row title used in the weighted-average table.
inline std::string_view task_title(Task task) {
  switch (task) {
    case Task::Seizure: return "Seizure";
    case Task::Normality: return "Abnormal";
    case Task::Epilepsy: return "Epilepsy";
  }
  return "?";
}

inline std::size_t label_index(SeizureType t) { return static_cast<std::size_t>(t); }
inline std::size_t label_index(Normality n) { return static_cast<std::size_t>(n); }
inline std::size_t label_index(EpilepsyStatus e) { return static_cast<std::size_t>(e); }

inline std::size_t predicted_index(Task task, const ScoreExtraction& x) {
  switch (task) {
    case Task::Seizure: return label_index(x.seizure.label);
    case Task::Normality: return label_index(x.normality.label);
    case Task::Epilepsy: return label_index(x.epilepsy.label);
  }
  return 0;
}

struct GoldLabel {
  std::optional<std::size_t> index;  // nullopt: excluded from evaluation
};

/// Maps a manifest label string to a class index. Returns an excluded label for
/// GNSZ/FNSZ on the seizure task; throws UnknownLabel otherwise.
inline GoldLabel parse_gold_label(Task task, std::string_view raw, std::size_t line) {
  auto l = to_upper_ascii(trim(raw));
  switch (task) {
    case Task::Seizure: {
      static const std::map<std::string, SeizureType> m{
          {"ABSZ", SeizureType::Absence},     {"CPSZ", SeizureType::ComplexPartial},
          {"SPSZ", SeizureType::SimplePartial}, {"MYSZ", SeizureType::Myoclonic},
          {"TCSZ", SeizureType::TonicClonic}, {"GTCSZ", SeizureType::TonicClonic},
          {"NONE", SeizureType::None}};
      if (l == "GNSZ" || l == "FNSZ") return {std::nullopt};
      if (auto it = m.find(l); it != m.end()) return {label_index(it->second)};
      break;
    }
    case Task::Normality:
      if (l == "NORMAL") return {label_index(Normality::Normal)};
      if (l == "ABNORMAL") return {label_index(Normality::Abnormal)};
      break;
    case Task::Epilepsy:
      if (l == "EPILEPSY" || l == "00_EPILEPSY") return {label_index(EpilepsyStatus::Epilepsy)};
      if (l == "NO_EPILEPSY" || l == "NO EPILEPSY" || l == "NOEPILEPSY" || l == "01_NO_EPILEPSY")
        return {label_index(EpilepsyStatus::NoEpilepsy)};
      break;
  }
  throw UnknownLabel(std::string(trim(raw)), line);
}

struct ManifestEntry {
  std::string record_id;
  std::string path;
  std::size_t gold = 0;
};

struct Manifest {
  Task task = Task::Seizure;
  std::vector<ManifestEntry> entries;
  std::size_t excluded_count = 0;
};

inline Manifest parse_manifest(std::string_view content, Task task) {
  Manifest m{task, {}, 0};
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    if (!header) {
      if (normalize_whitespace(line) != "record_id,path,label")
        throw ParseError("expected header 'record_id,path,label'", lineno);
      header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string f;
    while (std::getline(row, f, ',')) fields.push_back(trim(f));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 3)
      throw ParseError("expected 3 fields, found " + std::to_string(fields.size()), lineno);
    if (fields[0].empty() || fields[1].empty()) throw ParseError("empty record_id or path", lineno);
    auto gold = parse_gold_label(task, fields[2], lineno);
    if (!seen.insert(fields[0]).second)
      throw ParseError("duplicate record_id '" + fields[0] + "'", lineno);
    if (!gold.index) {
      ++m.excluded_count;
      continue;
    }
    m.entries.push_back({fields[0], fields[1], *gold.index});
  }
  if (!header) throw ParseError("manifest is missing its header line");
  return m;
}

inline Manifest load_manifest(const std::filesystem::path& path, Task task) {
  try {
    return parse_manifest(read_file(path), task);
  } catch (const UnknownLabel&) {
    throw;
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

/// cell[gold][predicted]
using ConfusionMatrix = std::vector<std::vector<std::uint64_t>>;

inline ConfusionMatrix confusion(const std::unordered_map<std::string, std::size_t>& preds,
                                 const Manifest& manifest) {
  const std::size_t n = task_labels(manifest.task).size();
  ConfusionMatrix m(n, std::vector<std::uint64_t>(n, 0));
  for (const auto& e : manifest.entries) {
    auto it = preds.find(e.record_id);
    if (it == preds.end()) throw MissingPrediction(e.record_id);
    if (e.gold >= n || it->second >= n) throw Error("label index out of range");
    ++m[e.gold][it->second];
  }
  return m;
}

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::uint64_t support = 0;
};

struct Metrics {
  std::vector<ClassMetrics> per_class;
  ClassMetrics weighted;  // support = total
};

inline double safe_div(double num, double den) { return den == 0 ? 0.0 : num / den; }

inline double f1_score(double p, double r) { return safe_div(2 * p * r, p + r); }

/// One-vs-rest metrics per class and support-weighted averages; 0/0 -> 0.
inline Metrics metrics(const ConfusionMatrix& m) {
  const std::size_t n = m.size();
  Metrics out;
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::uint64_t tp = m[c][c], gold = 0, predicted = 0;
    for (std::size_t k = 0; k < n; ++k) {
      gold += m[c][k];
      predicted += m[k][c];
    }
    ClassMetrics cm;
    cm.precision = safe_div(static_cast<double>(tp), static_cast<double>(predicted));
    cm.recall = safe_div(static_cast<double>(tp), static_cast<double>(gold));
    cm.f1 = f1_score(cm.precision, cm.recall);
    cm.support = gold;
    total += gold;
    out.per_class.push_back(cm);
  }
  out.weighted.support = total;
  for (const auto& cm : out.per_class) {
    double w = safe_div(static_cast<double>(cm.support), static_cast<double>(total));
    out.weighted.precision += w * cm.precision;
    out.weighted.recall += w * cm.recall;
    out.weighted.f1 += w * cm.f1;
  }
  return out;
}

struct EvalReport {
  Task task = Task::Seizure;
  std::vector<std::string> labels;
  ConfusionMatrix confusion;
  std::vector<ClassMetrics> per_class;
  ClassMetrics weighted;
  std::size_t excluded_count = 0;
  std::size_t fallback_count = 0;  // decisions made by a named fallback rule
};

inline EvalReport make_report(Task task, ConfusionMatrix cm, std::size_t excluded) {
  auto met = metrics(cm);
  return {task, task_labels(task), std::move(cm), std::move(met.per_class), met.weighted, excluded, 0};
}

inline nlohmann::ordered_json to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["task"] = to_string(r.task);
  j["labels"] = r.labels;
  j["confusion"] = r.confusion;
  auto per = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    const auto& c = r.per_class[i];
    per[r.labels[i]] = {{"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1},
                        {"support", c.support}};
  }
  j["per_class"] = per;
  j["weighted"] = {{"precision", r.weighted.precision}, {"recall", r.weighted.recall},
                   {"f1", r.weighted.f1}, {"support", r.weighted.support}};
  j["excluded_count"] = r.excluded_count;
  j["fallback_count"] = r.fallback_count;
  return j;
}

/// Weighted-average table: Task / Precision / Recall / F1-score / Support.
inline std::string format_table(const EvalReport& r) {
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-10s %9s %8s %9s %8s\n", "Task", "Precision", "Recall",
                "F1-score", "Support");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-10s %9.2f %8.2f %9.2f %8llu\n",
                std::string(task_title(r.task)).c_str(), r.weighted.precision, r.weighted.recall,
                r.weighted.f1, static_cast<unsigned long long>(r.weighted.support));
  out += buf;
  return out;
}

inline bool decided_by_fallback(Task task, const ScoreExtraction& x) {
  switch (task) {
    case Task::Seizure: return is_fallback_rule(x.seizure.rule);
    case Task::Normality: return is_fallback_rule(x.normality.rule);
    case Task::Epilepsy: return is_fallback_rule(x.epilepsy.rule);
  }
  return false;
}

/// Runs the pipeline over every manifest record and scores it. Relative
/// manifest paths resolve against `corpus_dir`.
inline EvalReport evaluate(const std::filesystem::path& corpus_dir, const Manifest& manifest,
                           const Pipeline& pipeline) {
  auto results = parallel_map(
      manifest.entries,
      [&](const ManifestEntry& e) {
        std::filesystem::path p(e.path);
        if (p.is_relative()) p = corpus_dir / p;
        return pipeline.extract(read_report(p, e.record_id));
      },
      pipeline.config().workers);
  std::unordered_map<std::string, std::size_t> preds;
  std::size_t fallbacks = 0;
  for (const auto& x : results) {
    preds[x.record_id] = predicted_index(manifest.task, x);
    fallbacks += decided_by_fallback(manifest.task, x);
  }
  auto report = make_report(manifest.task, confusion(preds, manifest), manifest.excluded_count);
  report.fallback_count = fallbacks;
  return report;
}

}  // namespace eegscore
