#pragma once
// Pipeline configuration file: one `key = value` per line, '#' comments.
// Repeatable keys are noted below; see README.md for the full reference.
//
//   tagger.mode            gazetteer | remote | remote-fallback
//   tagger.endpoint        base URL of the entity service
//   tagger.timeout_ms      per-request timeout
//   tagger.max_retries     total attempts per request
//   tagger.label           <wire label> => <EntityKind>      (repeatable, merges)
//   lexicon                path to a lexicon file             (repeatable)
//   lexicons.builtin       true | false
//   segmenter.header_pattern   ECMAScript regex, group 1 = header incl. colon
//   segmenter.alias        <HEADER> => <CanonicalSection>     (repeatable, merges)
//   segmenter.abbreviation abbreviation ending in '.'         (repeatable, replaces)
//   negation.trigger       trigger phrase                     (repeatable, replaces)
//   negation.conjunction   scope blocker                      (repeatable, replaces)
//   negation.window        tokens before the entity
//   seizure.precedence     comma-separated seizure types, highest first
//   output                 default JSONL output path
//   workers                worker threads (0 = hardware concurrency)

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eegscore/classifiers.hpp"
#include "eegscore/errors.hpp"
#include "eegscore/lexicon.hpp"
#include "eegscore/negation.hpp"
#include "eegscore/remote.hpp"
#include "eegscore/segmenter.hpp"

namespace eegscore {

struct PipelineConfig {
  TaggerConfig tagger;
  std::vector<std::filesystem::path> lexicon_paths;
  std::vector<Lexicon> lexicons = default_lexicons();
  SegmenterConfig segmenter;
  NegationConfig negation;
  std::vector<SeizureType> seizure_precedence = default_seizure_precedence();
  std::optional<std::filesystem::path> output_path;
  std::size_t workers = 0;
};

namespace detail {

inline std::pair<std::string, std::string> split_arrow(const std::string& value, std::size_t line) {
  auto pos = value.find("=>");
  if (pos == std::string::npos) throw ParseError("expected '<from> => <to>'", line);
  return {trim(value.substr(0, pos)), trim(value.substr(pos + 2))};
}

inline long long parse_int(const std::string& value, std::size_t line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + value + "'", line);
  }
}

inline bool parse_bool(const std::string& value, std::size_t line) {
  auto l = to_lower_ascii(value);
  if (l == "true" || l == "yes" || l == "1") return true;
  if (l == "false" || l == "no" || l == "0") return false;
  throw ParseError("expected true/false, got '" + value + "'", line);
}

}  // namespace detail

/// Parses config text; relative paths resolve against `base_dir`.
inline PipelineConfig parse_config(std::string_view content,
                                   const std::filesystem::path& base_dir = ".") {
  PipelineConfig cfg;
  bool builtin_lexicons = true;
  std::vector<std::string> abbreviations, triggers, conjunctions;
  bool have_abbr = false, have_trig = false, have_conj = false;

  std::istringstream in{std::string(content)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    auto key = to_lower_ascii(trim(line.substr(0, eq)));
    auto value = trim(line.substr(eq + 1));
    auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      return path.is_absolute() ? path : base_dir / path;
    };

    if (key == "tagger.mode") {
      auto m = parse_tagger_mode(value);
      if (!m) throw ParseError("unknown tagger mode '" + value + "'", lineno);
      cfg.tagger.mode = *m;
    } else if (key == "tagger.endpoint") {
      cfg.tagger.remote_endpoint = value;
    } else if (key == "tagger.timeout_ms") {
      cfg.tagger.timeout = std::chrono::milliseconds(detail::parse_int(value, lineno));
    } else if (key == "tagger.max_retries") {
      cfg.tagger.max_retries = static_cast<int>(detail::parse_int(value, lineno));
    } else if (key == "tagger.label") {
      auto [label, kind_name] = detail::split_arrow(value, lineno);
      auto kind = parse_entity_kind(kind_name);
      if (!kind) throw ParseError("unknown entity kind '" + kind_name + "'", lineno);
      cfg.tagger.labels[label] = *kind;
    } else if (key == "lexicon") {
      cfg.lexicon_paths.push_back(resolve(value));
    } else if (key == "lexicons.builtin") {
      builtin_lexicons = detail::parse_bool(value, lineno);
    } else if (key == "segmenter.header_pattern") {
      cfg.segmenter.header_pattern = value;
    } else if (key == "segmenter.alias") {
      auto [header, section] = detail::split_arrow(value, lineno);
      auto kind = parse_section_kind(section);
      if (!kind) throw ParseError("unknown section '" + section + "'", lineno);
      cfg.segmenter.aliases[normalize_header(header)] = *kind;
    } else if (key == "segmenter.abbreviation") {
      have_abbr = true;
      abbreviations.push_back(value);
    } else if (key == "negation.trigger") {
      have_trig = true;
      triggers.push_back(value);
    } else if (key == "negation.conjunction") {
      have_conj = true;
      conjunctions.push_back(value);
    } else if (key == "negation.window") {
      auto w = detail::parse_int(value, lineno);
      if (w < 1) throw ParseError("negation.window must be positive", lineno);
      cfg.negation.window = static_cast<std::size_t>(w);
    } else if (key == "seizure.precedence") {
      cfg.seizure_precedence.clear();
      std::istringstream parts(value);
      std::string part;
      while (std::getline(parts, part, ',')) {
        auto t = parse_seizure_type_name(part);
        if (!t || *t == SeizureType::None)
          throw ParseError("unknown seizure type '" + trim(part) + "'", lineno);
        cfg.seizure_precedence.push_back(*t);
      }
    } else if (key == "output") {
      cfg.output_path = resolve(value);
    } else if (key == "workers") {
      auto w = detail::parse_int(value, lineno);
      if (w < 0) throw ParseError("workers must be non-negative", lineno);
      cfg.workers = static_cast<std::size_t>(w);
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
  }
  if (have_abbr) cfg.segmenter.abbreviations = abbreviations;
  if (have_trig) cfg.negation.triggers = triggers;
  if (have_conj) cfg.negation.conjunctions = conjunctions;

  if (!builtin_lexicons) cfg.lexicons.clear();
  for (const auto& path : cfg.lexicon_paths) {
    if (!std::filesystem::exists(path)) throw ConfigError("lexicon file not found: " + path.string());
    auto lex = load_lexicon(path);
    auto it = std::find_if(cfg.lexicons.begin(), cfg.lexicons.end(),
                           [&](const Lexicon& l) { return l.name == lex.name; });
    if (it != cfg.lexicons.end())
      *it = std::move(lex);
    else
      cfg.lexicons.push_back(std::move(lex));
  }
  cfg.tagger.validate();
  return cfg;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
  } catch (const ParseError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace eegscore
