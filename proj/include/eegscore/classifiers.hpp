#pragma once
// Rule classifiers over sectioned entities: epilepsy status, normal/abnormal
// impression and seizure type. Rules only look at the entity list and the
// section each entity was found in.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eegscore/errors.hpp"
#include "eegscore/lexicon.hpp"
#include "eegscore/model.hpp"

namespace eegscore {

inline std::vector<SeizureType> default_seizure_precedence() {
  return {SeizureType::TonicClonic, SeizureType::ComplexPartial, SeizureType::Absence,
          SeizureType::Myoclonic, SeizureType::SimplePartial};
}

struct RuleTrace {
  std::string rule_name;
  bool fired = false;  // false for fallbacks; evidence is then empty
  std::vector<EvidenceItem> evidence;
};

/// Term lists the rules match entity text against, built from named lexicons.
class RuleSet {
 public:
  using Terms = std::vector<std::vector<std::string>>;

  explicit RuleSet(const std::vector<Lexicon>& lexicons,
                   std::vector<SeizureType> precedence = default_seizure_precedence())
      : precedence_(std::move(precedence)) {
    using namespace lexicon_names;
    epilepsy_ = terms_of(lexicons, kEpilepsy);
    normal_ = terms_of(lexicons, kNormal);
    abnormal_ = terms_of(lexicons, kAbnormal);
    for (auto t : kSeizureTypes)
      if (t != SeizureType::None) seizure_[t] = terms_of(lexicons, seizure_lexicon_name(t));
    std::vector<SeizureType> sorted = precedence_;
    std::sort(sorted.begin(), sorted.end());
    std::vector<SeizureType> expected(kSeizureTypes.begin(), kSeizureTypes.end() - 1);
    if (sorted != expected)
      throw ConfigError("seizure precedence must list each seizure type exactly once");
  }

  const std::vector<SeizureType>& precedence() const noexcept { return precedence_; }

  static bool matches(const Entity& e, const Terms& terms) {
    auto toks = phrase_tokens(e.surface);
    return std::any_of(terms.begin(), terms.end(),
                       [&](const auto& t) { return contains_token_run(toks, t); });
  }

  bool is_epilepsy(const Entity& e) const { return matches(e, epilepsy_); }
  bool is_normal(const Entity& e) const { return matches(e, normal_); }
  bool is_abnormal(const Entity& e) const { return matches(e, abnormal_); }
  bool is_seizure(const Entity& e, SeizureType t) const {
    auto it = seizure_.find(t);
    return it != seizure_.end() && matches(e, it->second);
  }

 private:
  static Terms terms_of(const std::vector<Lexicon>& lexicons, std::string_view name) {
    const Lexicon* lex = find_lexicon(lexicons, name);
    if (!lex) throw ConfigError("rule lexicon '" + std::string(name) + "' is missing");
    Terms out;
    for (const auto& t : lex->terms) out.push_back(phrase_tokens(t));
    return out;
  }

  std::vector<SeizureType> precedence_;
  Terms epilepsy_, normal_, abnormal_;
  std::map<SeizureType, Terms> seizure_;
};

namespace detail {

inline RuleTrace fired(std::string rule, const std::vector<const Entity*>& ents) {
  RuleTrace t{std::move(rule), true, {}};
  for (const Entity* e : ents) t.evidence.push_back({t.rule_name, e->span, e->surface});
  return t;
}

inline RuleTrace fallback(std::string_view name) {
  return {std::string(kFallbackPrefix) + std::string(name), false, {}};
}

template <typename Pred>
std::vector<const Entity*> select(const std::vector<Entity>& entities, Pred pred) {
  std::vector<const Entity*> out;
  for (const auto& e : entities)
    if (pred(e)) out.push_back(&e);
  return out;
}

inline bool in_sections(const Entity& e, std::initializer_list<CanonicalSection::Kind> kinds) {
  return std::any_of(kinds.begin(), kinds.end(), [&](auto k) { return e.section.is(k); });
}

}  // namespace detail

/// Epilepsy iff a non-negated Problem entity in the clinical history mentions
/// an epilepsy term.
inline std::pair<EpilepsyStatus, RuleTrace> classify_epilepsy(const SegmentedReport& seg,
                                                              const std::vector<Entity>& entities,
                                                              const RuleSet& rules) {
  using K = CanonicalSection::Kind;
  auto in_history = [&](const Entity& e) {
    return e.kind == EntityKind::Problem && e.section.is(K::ClinicalHistory) && rules.is_epilepsy(e);
  };
  auto hits = detail::select(entities, [&](const Entity& e) { return in_history(e) && !e.negated; });
  if (!hits.empty())
    return {EpilepsyStatus::Epilepsy, detail::fired("history:epilepsy-problem", hits)};
  auto denied = detail::select(entities, [&](const Entity& e) { return in_history(e) && e.negated; });
  if (!denied.empty())
    return {EpilepsyStatus::NoEpilepsy, detail::fired("history:negated-epilepsy-problem", denied)};
  if (!seg.has_section(K::ClinicalHistory))
    return {EpilepsyStatus::NoEpilepsy, detail::fallback("no-clinical-history")};
  return {EpilepsyStatus::NoEpilepsy, detail::fallback("no-epilepsy-problem")};
}

/// Impression first, then the whole document:
///   1. "abnormal" (or a negated "normal") -> Abnormal
///   2. negated "abnormal" or "normal"      -> Normal
///   3. nothing anywhere                     -> Abnormal (named fallback)
inline std::pair<Normality, RuleTrace> classify_normality(const SegmentedReport& /*seg*/,
                                                          const std::vector<Entity>& entities,
                                                          const RuleSet& rules) {
  using K = CanonicalSection::Kind;
  auto ladder = [&](std::string_view scope, auto in_scope) -> std::optional<std::pair<Normality, RuleTrace>> {
    auto pick = [&](auto pred) {
      return detail::select(entities, [&](const Entity& e) {
        return (e.kind == EntityKind::Problem || e.kind == EntityKind::Test) && in_scope(e) && pred(e);
      });
    };
    const std::string s(scope);
    auto abnormal = pick([&](const Entity& e) { return !e.negated && rules.is_abnormal(e); });
    if (!abnormal.empty()) return {{Normality::Abnormal, detail::fired(s + ":abnormal", abnormal)}};
    auto not_normal = pick([&](const Entity& e) {
      return e.negated && rules.is_normal(e) && !rules.is_abnormal(e);
    });
    if (!not_normal.empty())
      return {{Normality::Abnormal, detail::fired(s + ":negated-normal", not_normal)}};
    auto no_abnormal = pick([&](const Entity& e) { return e.negated && rules.is_abnormal(e); });
    if (!no_abnormal.empty())
      return {{Normality::Normal, detail::fired(s + ":negated-abnormal", no_abnormal)}};
    auto normal = pick([&](const Entity& e) { return !e.negated && rules.is_normal(e); });
    if (!normal.empty()) return {{Normality::Normal, detail::fired(s + ":normal", normal)}};
    return std::nullopt;
  };
  if (auto r = ladder("impression", [](const Entity& e) { return e.section.is(K::Impression); }))
    return *r;
  if (auto r = ladder("document", [](const Entity&) { return true; })) return *r;
  return {Normality::Abnormal, detail::fallback("no-normality-terms")};
}

/// Most frequently mentioned seizure type in the impression, description and
/// correlation sections (whole document if none there); ties go to the
/// earlier type in the rule set's precedence list.
inline std::pair<SeizureType, RuleTrace> classify_seizure(const SegmentedReport& /*seg*/,
                                                          const std::vector<Entity>& entities,
                                                          const RuleSet& rules) {
  using K = CanonicalSection::Kind;
  auto count = [&](std::string_view scope, auto in_scope) -> std::optional<std::pair<SeizureType, RuleTrace>> {
    std::optional<SeizureType> best;
    std::vector<const Entity*> best_hits;
    for (SeizureType t : rules.precedence()) {
      auto hits = detail::select(entities, [&](const Entity& e) {
        return e.kind == EntityKind::Problem && !e.negated && in_scope(e) && rules.is_seizure(e, t);
      });
      if (!hits.empty() && hits.size() > best_hits.size()) {
        best = t;
        best_hits = std::move(hits);
      }
    }
    if (!best) return std::nullopt;
    return {{*best, detail::fired(std::string(scope) + ":seizure-type-count", best_hits)}};
  };
  if (auto r = count("sections", [](const Entity& e) {
        return detail::in_sections(e, {K::Impression, K::DescriptionOfRecord, K::ClinicalCorrelation});
      }))
    return *r;
  if (auto r = count("document", [](const Entity&) { return true; })) return *r;
  return {SeizureType::None, detail::fallback("no-seizure-terms")};
}

template <typename Label>
Decision<Label> to_decision(std::pair<Label, RuleTrace> r) {
  return {r.first, std::move(r.second.rule_name), std::move(r.second.evidence)};
}

inline ScoreExtraction extract_all(const SegmentedReport& seg, const std::vector<Entity>& entities,
                                   const RuleSet& rules) {
  ScoreExtraction x;
  x.record_id = seg.report.record_id();
  x.seizure = to_decision(classify_seizure(seg, entities, rules));
  x.normality = to_decision(classify_normality(seg, entities, rules));
  x.epilepsy = to_decision(classify_epilepsy(seg, entities, rules));
  return x;
}

}  // namespace eegscore
