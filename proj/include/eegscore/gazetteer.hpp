#pragma once
// Dictionary tagger: longest-match, leftmost, word-aligned phrase matching.

#include <algorithm>
#include <tuple>
#include <vector>

#include "eegscore/lexicon.hpp"
#include "eegscore/model.hpp"
#include "eegscore/negation.hpp"

namespace eegscore {

/// Fills section attribution and negation for an entity at `span`.
inline Entity make_entity(const SegmentedReport& seg, EntityKind kind, Span span,
                          EntitySource source, const NegationDetector& negation) {
  Entity e;
  e.kind = kind;
  e.span = span;
  e.surface = seg.report.slice(span);
  e.section = seg.section_at(span.start);
  e.negated = negation.negated(seg, span);
  e.source = source;
  return e;
}

struct Candidate {
  Span span;
  EntityKind kind;
  std::string lexicon;  // tie-break only
};

/// Greedy selection: longer spans first, then leftmost, then kind and lexicon
/// name. The result is ordered by start and depends only on the candidate set.
inline std::vector<Candidate> resolve_overlaps(std::vector<Candidate> cands) {
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::make_tuple(b.span.length(), a.span.start, a.kind, std::cref(a.lexicon)) <
           std::make_tuple(a.span.length(), b.span.start, b.kind, std::cref(b.lexicon));
  });
  std::vector<Candidate> kept;
  for (auto& c : cands) {
    if (c.span.empty()) continue;
    bool clash = std::any_of(kept.begin(), kept.end(),
                             [&](const Candidate& k) { return k.span.overlaps(c.span); });
    if (!clash) kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end(),
            [](const Candidate& a, const Candidate& b) { return a.span.start < b.span.start; });
  return kept;
}

class Gazetteer {
 public:
  explicit Gazetteer(const std::vector<Lexicon>& lexicons) : index_(lexicons) {}

  std::vector<Entity> tag(const SegmentedReport& seg,
                          const NegationDetector& negation = default_negation()) const {
    const auto& chars = seg.report.chars();
    std::vector<Candidate> cands;
    for (const auto& sentence : seg.sentences) {
      auto tokens = tokenize(chars, sentence.span);
      for (auto& m : index_.find_all(chars, tokens))
        cands.push_back({m.span, m.hit.kind, std::move(m.hit.lexicon)});
    }
    std::vector<Entity> out;
    for (const auto& c : resolve_overlaps(std::move(cands)))
      out.push_back(make_entity(seg, c.kind, c.span, EntitySource::Gazetteer, negation));
    return out;
  }

 private:
  PhraseIndex index_;
};

inline std::vector<Entity> gazetteer_tag(const SegmentedReport& seg,
                                         const std::vector<Lexicon>& lexicons,
                                         const NegationDetector& negation = default_negation()) {
  return Gazetteer(lexicons).tag(seg, negation);
}

}  // namespace eegscore
