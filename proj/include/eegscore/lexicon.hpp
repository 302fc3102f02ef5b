#pragma once
// Named term lists and the phrase index used for dictionary matching.
//
// File format (UTF-8):
//   # comment
//   kind: Problem
//   name: epilepsy          (optional; defaults to the file stem)
//   seizure disorder
//   ...

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eegscore/errors.hpp"
#include "eegscore/model.hpp"
#include "eegscore/text.hpp"

namespace eegscore {

inline constexpr std::size_t kMaxPhraseTokens = 6;

struct Lexicon {
  std::string name;
  EntityKind kind = EntityKind::Problem;
  std::set<std::string> terms;  // lowercase, whitespace-normalized

  friend bool operator==(const Lexicon&, const Lexicon&) = default;
};

/// Normalizes a phrase and checks it has 1..kMaxPhraseTokens tokens.
inline std::string normalize_phrase(std::string_view phrase) {
  auto norm = normalize_whitespace(to_lower_ascii(phrase));
  auto n = phrase_tokens(norm).size();
  if (n == 0 || n > kMaxPhraseTokens)
    throw ConfigError("phrase '" + std::string(phrase) + "' has " + std::to_string(n) +
                      " tokens (expected 1.." + std::to_string(kMaxPhraseTokens) + ")");
  return norm;
}

inline Lexicon make_lexicon(std::string name, EntityKind kind,
                            std::initializer_list<std::string_view> terms) {
  Lexicon lex{std::move(name), kind, {}};
  for (auto t : terms) lex.terms.insert(normalize_phrase(t));
  return lex;
}

inline Lexicon parse_lexicon(std::string_view content, std::string default_name) {
  Lexicon lex{std::move(default_name), EntityKind::Problem, {}};
  bool have_kind = false;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto lower = to_lower_ascii(t);
    if (lower.rfind("kind:", 0) == 0) {
      auto kind = parse_entity_kind(t.substr(5));
      if (!kind) throw ParseError("unknown entity kind '" + trim(t.substr(5)) + "'", lineno);
      lex.kind = *kind;
      have_kind = true;
      continue;
    }
    if (lower.rfind("name:", 0) == 0) {
      lex.name = trim(t.substr(5));
      continue;
    }
    try {
      lex.terms.insert(normalize_phrase(t));
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!have_kind) throw ParseError("lexicon '" + lex.name + "' lacks a 'kind:' header line");
  if (lex.terms.empty()) throw ParseError("lexicon '" + lex.name + "' has no terms");
  return lex;
}

inline Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read lexicon " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_lexicon(buf.str(), path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline std::string format_lexicon(const Lexicon& lex) {
  std::string out = "kind: " + std::string(to_string(lex.kind)) + "\nname: " + lex.name + "\n";
  for (const auto& t : lex.terms) out += t + "\n";
  return out;
}

// Well-known lexicon names consumed by the classifiers.
namespace lexicon_names {
inline constexpr std::string_view kEpilepsy = "epilepsy";
inline constexpr std::string_view kNormal = "normal";
inline constexpr std::string_view kAbnormal = "abnormal";
inline constexpr std::string_view kAbsence = "seizure-absence";
inline constexpr std::string_view kComplexPartial = "seizure-complex-partial";
inline constexpr std::string_view kSimplePartial = "seizure-simple-partial";
inline constexpr std::string_view kMyoclonic = "seizure-myoclonic";
inline constexpr std::string_view kTonicClonic = "seizure-tonic-clonic";
}  // namespace lexicon_names

inline std::string_view seizure_lexicon_name(SeizureType t) {
  using namespace lexicon_names;
  switch (t) {
    case SeizureType::Absence: return kAbsence;
    case SeizureType::ComplexPartial: return kComplexPartial;
    case SeizureType::SimplePartial: return kSimplePartial;
    case SeizureType::Myoclonic: return kMyoclonic;
    case SeizureType::TonicClonic: return kTonicClonic;
    case SeizureType::None: break;
  }
  return {};
}

/// Built-in lexicons; identical to the files shipped under data/lexicons/.
inline std::vector<Lexicon> default_lexicons() {
  using namespace lexicon_names;
  return {
      make_lexicon(std::string(kEpilepsy), EntityKind::Problem,
                   {"epilepsy", "seizure disorder", "epileptic", "epilepsia partialis continua"}),
      make_lexicon(std::string(kAbsence), EntityKind::Problem,
                   {"absence seizure", "absence seizures", "petit mal"}),
      make_lexicon(std::string(kComplexPartial), EntityKind::Problem, {"complex partial"}),
      make_lexicon(std::string(kSimplePartial), EntityKind::Problem, {"simple partial"}),
      make_lexicon(std::string(kMyoclonic), EntityKind::Problem,
                   {"myoclonic seizure", "myoclonic seizures", "myoclonus with seizure"}),
      make_lexicon(std::string(kTonicClonic), EntityKind::Problem,
                   {"tonic-clonic", "tonic clonic", "grand mal", "generalized tonic-clonic",
                    "GTC seizure"}),
      make_lexicon(std::string(kAbnormal), EntityKind::Problem,
                   {"abnormal", "abnormality", "abnormalities"}),
      make_lexicon(std::string(kNormal), EntityKind::Problem, {"normal", "within normal limits"}),
      make_lexicon("tests", EntityKind::Test,
                   {"eeg", "video eeg", "routine eeg", "mri", "ct", "ct scan"}),
      make_lexicon("medications", EntityKind::MedicationName,
                   {"keppra", "levetiracetam", "dilantin", "phenytoin", "depakote", "valproate",
                    "valproic acid", "lamictal", "lamotrigine", "tegretol", "carbamazepine",
                    "topamax", "topiramate", "vimpat", "lacosamide", "phenobarbital",
                    "zonisamide", "clonazepam", "lorazepam", "ativan"}),
  };
}

inline const Lexicon* find_lexicon(const std::vector<Lexicon>& lexicons, std::string_view name) {
  for (const auto& l : lexicons)
    if (l.name == name) return &l;
  return nullptr;
}

/// Token-sequence lookup table over a set of lexicons.
class PhraseIndex {
 public:
  struct Hit {
    EntityKind kind;
    std::string lexicon;
    friend auto operator<=>(const Hit&, const Hit&) = default;
    friend bool operator==(const Hit&, const Hit&) = default;
  };

  struct Match {
    Span span;
    std::size_t first_token = 0;
    std::size_t token_count = 0;
    Hit hit;
  };

  PhraseIndex() = default;
  explicit PhraseIndex(const std::vector<Lexicon>& lexicons) {
    for (const auto& lex : lexicons)
      for (const auto& term : lex.terms) {
        auto toks = phrase_tokens(term);
        if (toks.empty()) continue;
        max_tokens_ = std::max(max_tokens_, toks.size());
        table_[join(toks, " ")].push_back({lex.kind, lex.name});
      }
    for (auto& [key, hits] : table_) {
      std::sort(hits.begin(), hits.end());
      hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    }
  }

  bool empty() const noexcept { return table_.empty(); }

  /// Every occurrence of every phrase among `tokens` (overlaps included).
  /// Consecutive phrase tokens may be separated only by whitespace or hyphens.
  std::vector<Match> find_all(std::u32string_view chars, const std::vector<Token>& tokens) const {
    std::vector<Match> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::string key;
      for (std::size_t n = 1; n <= max_tokens_ && i + n <= tokens.size(); ++n) {
        if (n > 1) {
          if (!joinable(chars, tokens[i + n - 2].span.end, tokens[i + n - 1].span.start)) break;
          key += ' ';
        }
        key += tokens[i + n - 1].lower;
        auto it = table_.find(key);
        if (it == table_.end()) continue;
        for (const auto& hit : it->second)
          out.push_back({{tokens[i].span.start, tokens[i + n - 1].span.end}, i, n, hit});
      }
    }
    return out;
  }

 private:
  static bool joinable(std::u32string_view chars, std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k)
      if (!is_space(chars[k]) && chars[k] != U'-') return false;
    return true;
  }

  std::unordered_map<std::string, std::vector<Hit>> table_;
  std::size_t max_tokens_ = 0;
};

}  // namespace eegscore
