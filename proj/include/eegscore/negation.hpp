#pragma once
// Sentence-scoped negation: a trigger phrase within a fixed token window
// before the entity, not separated from it by a conjunction.

#include <string>
#include <vector>

#include "eegscore/model.hpp"
#include "eegscore/text.hpp"

namespace eegscore {

struct NegationConfig {
  std::vector<std::string> triggers{"no",          "not",           "without",
                                    "denies",      "denied",        "negative for",
                                    "no evidence of", "no history of", "free of"};
  std::vector<std::string> conjunctions{"but", "however", "although", ";"};
  std::size_t window = 6;
};

/// Precomputed trigger/conjunction token lists.
class NegationDetector {
 public:
  explicit NegationDetector(NegationConfig config = {}) : config_(std::move(config)) {
    for (const auto& t : config_.triggers) {
      auto toks = phrase_tokens(to_lower_ascii(t));
      if (!toks.empty()) triggers_.push_back(std::move(toks));
    }
    for (const auto& c : config_.conjunctions) {
      auto toks = phrase_tokens(to_lower_ascii(c));
      if (toks.size() == 1)
        word_blockers_.push_back(toks.front());
      else if (toks.empty() && !trim(c).empty())
        punct_blockers_.push_back(decode_utf8(trim(c)).chars);
    }
  }

  const NegationConfig& config() const noexcept { return config_; }

  bool negated(const SegmentedReport& seg, Span entity) const {
    auto idx = seg.sentence_at(entity.start);
    if (!idx) return false;
    const auto& chars = seg.report.chars();
    Span before{seg.sentences[*idx].span.start, entity.start};
    auto tokens = tokenize(chars, before);
    std::size_t first = tokens.size() > config_.window ? tokens.size() - config_.window : 0;
    for (const auto& trig : triggers_) {
      for (std::size_t p = first; p + trig.size() <= tokens.size(); ++p) {
        bool match = true;
        for (std::size_t k = 0; k < trig.size() && match; ++k) match = tokens[p + k].lower == trig[k];
        if (!match) continue;
        if (!blocked(chars, tokens, p + trig.size(), entity.start)) return true;
      }
    }
    return false;
  }

 private:
  bool blocked(std::u32string_view chars, const std::vector<Token>& tokens, std::size_t from_token,
               std::size_t entity_start) const {
    for (std::size_t k = from_token; k < tokens.size(); ++k)
      for (const auto& w : word_blockers_)
        if (tokens[k].lower == w) return true;
    std::size_t gap_start = from_token > 0 ? tokens[from_token - 1].span.end : entity_start;
    auto gap = chars.substr(gap_start, entity_start - gap_start);
    for (const auto& p : punct_blockers_)
      if (gap.find(p) != std::u32string_view::npos) return true;
    return false;
  }

  NegationConfig config_;
  std::vector<std::vector<std::string>> triggers_;
  std::vector<std::string> word_blockers_;
  std::vector<std::u32string> punct_blockers_;
};

inline const NegationDetector& default_negation() {
  static const NegationDetector d;
  return d;
}

/// True iff the entity at `entity_span` is negated within its sentence.
inline bool detect_negation(const SegmentedReport& seg, Span entity_span,
                            const NegationDetector& detector = default_negation()) {
  return detector.negated(seg, entity_span);
}

}  // namespace eegscore
