#pragma once
// Corpus loading and the JSONL extraction format:
//   {"record_id": str, "seizure_type": str, "normality": str, "epilepsy": str,
//    "evidence": [{"task": str, "rule": str, "start": int, "end": int, "text": str}],
//    "rules": {"seizure": str, "normality": str, "epilepsy": str}}

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "eegscore/errors.hpp"
#include "eegscore/log.hpp"
#include "eegscore/model.hpp"

namespace eegscore {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buf.str();
}

/// Loads one report; invalid UTF-8 is replaced and reported as a warning.
inline Report read_report(const fs::path& path, std::string record_id) {
  Report r(std::move(record_id), read_file(path), path.string());
  if (r.invalid_sequences())
    log::warn(path.string() + ": replaced " + std::to_string(r.invalid_sequences()) +
              " invalid UTF-8 sequence(s)");
  return r;
}

struct CorpusScan {
  std::vector<Report> reports;     // sorted by record_id
  std::vector<std::string> errors;  // unreadable files
};

/// Loads every *.txt under `dir` (recursively). The record id is the relative
/// path without its suffix, using '/' separators.
inline CorpusScan scan_corpus(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a readable directory: " + dir.string());
  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(dir, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    if (it->path().extension() == ".txt" && !it->is_directory(ec)) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());
  CorpusScan scan;
  for (const auto& f : files) {
    auto rel = fs::relative(f, dir);
    rel.replace_extension();
    try {
      scan.reports.push_back(read_report(f, rel.generic_string()));
    } catch (const Error& e) {
      log::warn(e.what());
      scan.errors.push_back(e.what());
    }
  }
  if (scan.reports.empty() && !scan.errors.empty())
    throw IoError("no report under " + dir.string() + " could be read");
  std::sort(scan.reports.begin(), scan.reports.end(),
            [](const Report& a, const Report& b) { return a.record_id() < b.record_id(); });
  return scan;
}

inline nlohmann::ordered_json to_json(const ScoreExtraction& x) {
  nlohmann::ordered_json j;
  j["record_id"] = x.record_id;
  j["seizure_type"] = to_string(x.seizure.label);
  j["normality"] = to_string(x.normality.label);
  j["epilepsy"] = to_string(x.epilepsy.label);
  auto ev = nlohmann::ordered_json::array();
  auto add = [&](Task task, const std::vector<EvidenceItem>& items) {
    for (const auto& e : items) {
      nlohmann::ordered_json item;
      item["task"] = to_string(task);
      item["rule"] = e.rule;
      item["start"] = e.span.start;
      item["end"] = e.span.end;
      item["text"] = e.text;
      ev.push_back(std::move(item));
    }
  };
  add(Task::Seizure, x.seizure.evidence);
  add(Task::Normality, x.normality.evidence);
  add(Task::Epilepsy, x.epilepsy.evidence);
  j["evidence"] = std::move(ev);
  nlohmann::ordered_json rules;
  rules["seizure"] = x.seizure.rule;
  rules["normality"] = x.normality.rule;
  rules["epilepsy"] = x.epilepsy.rule;
  j["rules"] = std::move(rules);
  return j;
}

inline ScoreExtraction extraction_from_json(const nlohmann::ordered_json& j) {
  auto str = [&](const nlohmann::ordered_json& o, const char* key) {
    if (!o.contains(key) || !o[key].is_string())
      throw ParseError(std::string("missing string field '") + key + "'");
    return o[key].get<std::string>();
  };
  auto label = [](auto parsed, const std::string& s) {
    if (!parsed) throw ParseError("unknown label '" + s + "'");
    return *parsed;
  };
  ScoreExtraction x;
  x.record_id = str(j, "record_id");
  auto s = str(j, "seizure_type");
  x.seizure.label = label(parse_label<SeizureType>(s), s);
  s = str(j, "normality");
  x.normality.label = label(parse_label<Normality>(s), s);
  s = str(j, "epilepsy");
  x.epilepsy.label = label(parse_label<EpilepsyStatus>(s), s);
  if (j.contains("rules") && j["rules"].is_object()) {
    const auto& r = j["rules"];
    x.seizure.rule = str(r, "seizure");
    x.normality.rule = str(r, "normality");
    x.epilepsy.rule = str(r, "epilepsy");
  }
  if (!j.contains("evidence") || !j["evidence"].is_array())
    throw ParseError("missing 'evidence' array");
  for (const auto& e : j["evidence"]) {
    auto task = parse_task(str(e, "task"));
    if (!task) throw ParseError("unknown evidence task '" + str(e, "task") + "'");
    if (!e.contains("start") || !e.contains("end") || !e["start"].is_number_unsigned() ||
        !e["end"].is_number_unsigned())
      throw ParseError("evidence item lacks integer start/end");
    EvidenceItem item{str(e, "rule"), {e["start"].get<std::size_t>(), e["end"].get<std::size_t>()},
                      str(e, "text")};
    switch (*task) {
      case Task::Seizure: x.seizure.evidence.push_back(std::move(item)); break;
      case Task::Normality: x.normality.evidence.push_back(std::move(item)); break;
      case Task::Epilepsy: x.epilepsy.evidence.push_back(std::move(item)); break;
    }
  }
  return x;
}

inline std::string encode_jsonl(std::vector<ScoreExtraction> results) {
  std::stable_sort(results.begin(), results.end(),
                   [](const auto& a, const auto& b) { return a.record_id < b.record_id; });
  std::string out;
  for (const auto& x : results) out += to_json(x).dump() + "\n";
  return out;
}

inline std::vector<ScoreExtraction> decode_jsonl(std::string_view content) {
  std::vector<ScoreExtraction> out;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      out.push_back(extraction_from_json(nlohmann::ordered_json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), lineno);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return out;
}

/// Writes JSONL sorted by record_id.
inline void write_extractions(const std::vector<ScoreExtraction>& results, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << encode_jsonl(results);
  if (!out) throw IoError("error writing " + path.string());
}

inline std::vector<ScoreExtraction> read_extractions(const fs::path& path) {
  return decode_jsonl(read_file(path));
}

}  // namespace eegscore
