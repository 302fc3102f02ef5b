#pragma once
// Shared data model: reports, sections, entities, labels and extraction results.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eegscore/errors.hpp"
#include "eegscore/text.hpp"

namespace eegscore {

/// A plain-text report. Immutable after construction; the UTF-8 text has
/// already been repaired, so `chars` and `text` always agree.
class Report {
 public:
  Report(std::string record_id, std::string_view utf8, std::optional<std::string> source_path = {})
      : record_id_(std::move(record_id)), source_path_(std::move(source_path)) {
    if (record_id_.empty()) throw Error("report record_id must be non-empty");
    auto decoded = decode_utf8(utf8);
    chars_ = std::move(decoded.chars);
    invalid_sequences_ = decoded.invalid_sequences;
    text_ = invalid_sequences_ ? encode_utf8(chars_) : std::string(utf8);
  }

  const std::string& record_id() const noexcept { return record_id_; }
  const std::string& text() const noexcept { return text_; }
  const std::u32string& chars() const noexcept { return chars_; }
  const std::optional<std::string>& source_path() const noexcept { return source_path_; }
  std::size_t size() const noexcept { return chars_.size(); }
  /// Number of invalid UTF-8 sequences replaced with U+FFFD while loading.
  std::size_t invalid_sequences() const noexcept { return invalid_sequences_; }

  std::string slice(Span s) const {
    s.end = std::min(s.end, chars_.size());
    if (s.start >= s.end) return {};
    return encode_utf8(std::u32string_view(chars_).substr(s.start, s.end - s.start));
  }
  bool valid(Span s) const noexcept { return s.start <= s.end && s.end <= chars_.size(); }

 private:
  std::string record_id_;
  std::string text_;
  std::u32string chars_;
  std::optional<std::string> source_path_;
  std::size_t invalid_sequences_ = 0;
};

/// Canonical section kind; `Other` keeps the normalized header text.
class CanonicalSection {
 public:
  enum class Kind {
    ClinicalHistory,
    Medications,
    Introduction,
    DescriptionOfRecord,
    Impression,
    ClinicalCorrelation,
    Other
  };

  CanonicalSection(Kind kind = Kind::Other, std::string raw = {})
      : kind_(kind), raw_(kind == Kind::Other ? std::move(raw) : std::string()) {}

  static CanonicalSection other(std::string raw) { return {Kind::Other, std::move(raw)}; }
  static CanonicalSection preamble() { return other("PREAMBLE"); }

  Kind kind() const noexcept { return kind_; }
  const std::string& raw() const noexcept { return raw_; }
  bool is(Kind k) const noexcept { return kind_ == k; }

  std::string name() const;
  friend bool operator==(const CanonicalSection&, const CanonicalSection&) = default;

 private:
  Kind kind_;
  std::string raw_;
};

inline constexpr std::array<std::pair<CanonicalSection::Kind, std::string_view>, 6> kSectionNames{{
    {CanonicalSection::Kind::ClinicalHistory, "ClinicalHistory"},
    {CanonicalSection::Kind::Medications, "Medications"},
    {CanonicalSection::Kind::Introduction, "Introduction"},
    {CanonicalSection::Kind::DescriptionOfRecord, "DescriptionOfRecord"},
    {CanonicalSection::Kind::Impression, "Impression"},
    {CanonicalSection::Kind::ClinicalCorrelation, "ClinicalCorrelation"},
}};

inline std::string CanonicalSection::name() const {
  for (auto& [k, n] : kSectionNames)
    if (k == kind_) return std::string(n);
  return "Other(" + raw_ + ")";
}

inline std::optional<CanonicalSection::Kind> parse_section_kind(std::string_view s) {
  for (auto& [k, n] : kSectionNames)
    if (to_lower_ascii(n) == to_lower_ascii(s)) return k;
  return std::nullopt;
}

struct Section {
  CanonicalSection section;
  Span header;  // includes the trailing colon
  Span body;    // up to the next header; may be empty when a header ends the text
};

struct Sentence {
  Span span;
  std::optional<std::size_t> section;  // nullopt: preamble
};

struct SegmentedReport {
  Report report;
  Span preamble;  // text before the first header (whole text if there is none)
  std::vector<Section> sections;
  std::vector<Sentence> sentences;

  /// Index of the sentence containing character `pos`, if any.
  std::optional<std::size_t> sentence_at(std::size_t pos) const {
    auto it = std::upper_bound(sentences.begin(), sentences.end(), pos,
                               [](std::size_t p, const Sentence& s) { return p < s.span.start; });
    if (it == sentences.begin()) return std::nullopt;
    --it;
    if (pos < it->span.end) return static_cast<std::size_t>(it - sentences.begin());
    return std::nullopt;
  }

  /// Section containing `pos`: preamble before the first header, otherwise the
  /// section whose header or body covers it.
  CanonicalSection section_at(std::size_t pos) const {
    const Section* found = nullptr;
    for (const auto& s : sections) {
      if (s.header.start > pos) break;
      found = &s;
    }
    return found ? found->section : CanonicalSection::preamble();
  }

  bool has_section(CanonicalSection::Kind k) const {
    return std::any_of(sections.begin(), sections.end(),
                       [k](const Section& s) { return s.section.is(k); });
  }
};

enum class EntityKind {
  Problem,
  Test,
  Treatment,
  MedicationName,
  MedicationDose,
  MedicationFrequency,
  MedicationDuration,
  MedicationReason
};

inline constexpr std::array<std::pair<EntityKind, std::string_view>, 8> kEntityKindNames{{
    {EntityKind::Problem, "Problem"},
    {EntityKind::Test, "Test"},
    {EntityKind::Treatment, "Treatment"},
    {EntityKind::MedicationName, "MedicationName"},
    {EntityKind::MedicationDose, "MedicationDose"},
    {EntityKind::MedicationFrequency, "MedicationFrequency"},
    {EntityKind::MedicationDuration, "MedicationDuration"},
    {EntityKind::MedicationReason, "MedicationReason"},
}};

inline std::string_view to_string(EntityKind k) {
  for (auto& [kind, name] : kEntityKindNames)
    if (kind == k) return name;
  return "?";
}

inline std::optional<EntityKind> parse_entity_kind(std::string_view s) {
  auto lower = to_lower_ascii(trim(s));
  for (auto& [kind, name] : kEntityKindNames)
    if (to_lower_ascii(name) == lower) return kind;
  return std::nullopt;
}

enum class EntitySource { Gazetteer, Remote };

struct Entity {
  EntityKind kind = EntityKind::Problem;
  Span span;
  std::string surface;
  CanonicalSection section;
  bool negated = false;
  EntitySource source = EntitySource::Gazetteer;

  friend bool operator==(const Entity&, const Entity&) = default;
};

enum class SeizureType { Absence, ComplexPartial, SimplePartial, Myoclonic, TonicClonic, None };
enum class Normality { Normal, Abnormal };
enum class EpilepsyStatus { Epilepsy, NoEpilepsy };

inline constexpr std::array<SeizureType, 6> kSeizureTypes{
    SeizureType::Absence,   SeizureType::ComplexPartial, SeizureType::SimplePartial,
    SeizureType::Myoclonic, SeizureType::TonicClonic,    SeizureType::None};
inline constexpr std::array<Normality, 2> kNormalities{Normality::Normal, Normality::Abnormal};
inline constexpr std::array<EpilepsyStatus, 2> kEpilepsyStatuses{EpilepsyStatus::Epilepsy,
                                                                 EpilepsyStatus::NoEpilepsy};

// Serialized (JSONL) names.
inline std::string_view to_string(SeizureType t) {
  switch (t) {
    case SeizureType::Absence: return "absence";
    case SeizureType::ComplexPartial: return "complex_partial";
    case SeizureType::SimplePartial: return "simple_partial";
    case SeizureType::Myoclonic: return "myoclonic";
    case SeizureType::TonicClonic: return "tonic_clonic";
    case SeizureType::None: return "none";
  }
  return "?";
}
inline std::string_view to_string(Normality n) {
  return n == Normality::Normal ? "normal" : "abnormal";
}
inline std::string_view to_string(EpilepsyStatus e) {
  return e == EpilepsyStatus::Epilepsy ? "epilepsy" : "no_epilepsy";
}

template <typename Label>
std::optional<Label> parse_label(std::string_view s);

template <>
inline std::optional<SeizureType> parse_label<SeizureType>(std::string_view s) {
  for (auto t : kSeizureTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}
template <>
inline std::optional<Normality> parse_label<Normality>(std::string_view s) {
  for (auto t : kNormalities)
    if (to_string(t) == s) return t;
  return std::nullopt;
}
template <>
inline std::optional<EpilepsyStatus> parse_label<EpilepsyStatus>(std::string_view s) {
  for (auto t : kEpilepsyStatuses)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

/// Accepts enum-style names ("TonicClonic") as well as the serialized ones.
inline std::optional<SeizureType> parse_seizure_type_name(std::string_view s) {
  static constexpr std::array<std::string_view, 6> names{
      "Absence", "ComplexPartial", "SimplePartial", "Myoclonic", "TonicClonic", "None"};
  auto t = trim(s);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (to_lower_ascii(names[i]) == to_lower_ascii(t)) return kSeizureTypes[i];
  return parse_label<SeizureType>(to_lower_ascii(t));
}

enum class Task { Seizure, Normality, Epilepsy };

inline std::string_view to_string(Task t) {
  switch (t) {
    case Task::Seizure: return "seizure";
    case Task::Normality: return "normality";
    case Task::Epilepsy: return "epilepsy";
  }
  return "?";
}

inline std::optional<Task> parse_task(std::string_view s) {
  auto l = to_lower_ascii(s);
  if (l == "seizure") return Task::Seizure;
  if (l == "normality" || l == "abnormal") return Task::Normality;
  if (l == "epilepsy") return Task::Epilepsy;
  return std::nullopt;
}

inline constexpr std::string_view kFallbackPrefix = "fallback:";

inline bool is_fallback_rule(std::string_view rule) {
  return rule.substr(0, kFallbackPrefix.size()) == kFallbackPrefix;
}

struct EvidenceItem {
  std::string rule;
  Span span;
  std::string text;
  friend bool operator==(const EvidenceItem&, const EvidenceItem&) = default;
};

/// One task's decision: the label, the rule that produced it and the spans backing it.
template <typename Label>
struct Decision {
  Label label{};
  std::string rule;
  std::vector<EvidenceItem> evidence;
  friend bool operator==(const Decision&, const Decision&) = default;
};

struct ScoreExtraction {
  std::string record_id;
  Decision<SeizureType> seizure{SeizureType::None, {}, {}};
  Decision<Normality> normality{Normality::Abnormal, {}, {}};
  Decision<EpilepsyStatus> epilepsy{EpilepsyStatus::NoEpilepsy, {}, {}};
  friend bool operator==(const ScoreExtraction&, const ScoreExtraction&) = default;
};

namespace detail {
template <typename Label>
void check_decision(std::string_view task, const Decision<Label>& d,
                    std::vector<std::string>& out) {
  const std::string prefix = std::string(task) + ": ";
  if (d.rule.empty()) out.push_back(prefix + "decision has no rule name");
  if (d.evidence.empty() && !d.rule.empty() && !is_fallback_rule(d.rule))
    out.push_back(prefix + "rule '" + d.rule + "' has no evidence and is not a named fallback");
  if (!d.evidence.empty() && is_fallback_rule(d.rule))
    out.push_back(prefix + "fallback rule '" + d.rule + "' carries evidence");
  for (const auto& e : d.evidence) {
    if (e.rule.empty()) out.push_back(prefix + "evidence item has an empty rule name");
    if (e.span.empty())
      out.push_back(prefix + "evidence span [" + std::to_string(e.span.start) + "," +
                    std::to_string(e.span.end) + ") is empty");
  }
}
}  // namespace detail

/// Lists every broken ScoreExtraction invariant; empty means well-formed.
inline std::vector<std::string> validate_extraction(const ScoreExtraction& x) {
  std::vector<std::string> out;
  if (x.record_id.empty()) out.emplace_back("record_id is empty");
  detail::check_decision(to_string(Task::Seizure), x.seizure, out);
  detail::check_decision(to_string(Task::Normality), x.normality, out);
  detail::check_decision(to_string(Task::Epilepsy), x.epilepsy, out);
  return out;
}

/// Same checks plus span validity and surface agreement against the report text.
inline std::vector<std::string> validate_extraction(const ScoreExtraction& x, const Report& r) {
  auto out = validate_extraction(x);
  auto check = [&](std::string_view task, const std::vector<EvidenceItem>& ev) {
    for (const auto& e : ev) {
      if (!r.valid(e.span))
        out.push_back(std::string(task) + ": evidence span outside report text");
      else if (r.slice(e.span) != e.text)
        out.push_back(std::string(task) + ": evidence text does not match report");
    }
  };
  check(to_string(Task::Seizure), x.seizure.evidence);
  check(to_string(Task::Normality), x.normality.evidence);
  check(to_string(Task::Epilepsy), x.epilepsy.evidence);
  return out;
}

}  // namespace eegscore
