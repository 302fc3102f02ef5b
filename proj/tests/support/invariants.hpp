#pragma once
// Segmentation and negation checks shared by the unit and acceptance suites.

#include <optional>
#include <string>
#include <vector>

#include "eegscore/negation.hpp"
#include "eegscore/segmenter.hpp"
#include "support/generators.hpp"

namespace eegscore::testing {

/// Empty when preamble, headers and bodies partition the text and sentences
/// cover every non-whitespace body character exactly once; else a description.
inline std::string coverage_violation(const SegmentedReport& seg) {
  const auto& chars = seg.report.chars();
  std::u32string rebuilt(chars.substr(seg.preamble.start, seg.preamble.length()));
  std::size_t cursor = seg.preamble.end;
  for (const auto& s : seg.sections) {
    if (s.header.start != cursor) return "gap before header at " + std::to_string(s.header.start);
    if (s.body.start != s.header.end) return "body does not follow header at " + std::to_string(s.header.end);
    rebuilt += chars.substr(s.header.start, s.header.length());
    rebuilt += chars.substr(s.body.start, s.body.length());
    cursor = s.body.end;
  }
  if (cursor != chars.size()) return "sections end at " + std::to_string(cursor);
  if (rebuilt != chars) return "reconstruction differs from text";

  std::vector<int> covered(chars.size(), 0);
  std::size_t prev_end = 0;
  for (const auto& sent : seg.sentences) {
    if (sent.span.empty()) return "empty sentence at " + std::to_string(sent.span.start);
    if (sent.span.start < prev_end) return "overlapping sentence at " + std::to_string(sent.span.start);
    prev_end = sent.span.end;
    Span parent = sent.section ? seg.sections[*sent.section].body : seg.preamble;
    if (!parent.contains(sent.span)) return "sentence escapes its section at " + std::to_string(sent.span.start);
    for (auto i = sent.span.start; i < sent.span.end; ++i) ++covered[i];
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    while (k < seg.sections.size() && seg.sections[k].header.end <= i) ++k;
    bool header = k < seg.sections.size() && seg.sections[k].header.contains(Span{i, i + 1});
    if (header ? covered[i] != 0 : (!is_space(chars[i]) && covered[i] != 1))
      return "char " + std::to_string(i) + " covered " + std::to_string(covered[i]) + " times";
  }
  return {};
}

/// Negation flag of the last occurrence of `target`; nullopt if absent.
inline std::optional<bool> negation_of(const std::string& text, const std::string& target,
                                       const NegationDetector& d = default_negation()) {
  auto seg = segment(Report("n", text));
  const auto& chars = seg.report.chars();
  auto t = decode_utf8(target).chars;
  auto pos = chars.rfind(t);
  if (pos == std::u32string::npos) return std::nullopt;
  return d.negated(seg, {pos, pos + t.size()});
}

inline const std::vector<std::string>& prepend_targets() {
  static const std::vector<std::string> t{"No history of epilepsy.", "History of epilepsy.",
                                          "No spikes, but epilepsy is suspected.",
                                          "Denies any epilepsy.", "Known epilepsy is not present."};
  return t;
}

/// One to four whole sentences, each opening with a negation trigger.
inline std::string negating_prefix(ReportGenerator& gen) {
  static const std::vector<std::string> openers{"No", "Not", "Denies", "Without", "Negative for"};
  std::string prefix;
  int n = gen.uniform(1, 4);
  for (int k = 0; k < n; ++k) prefix += gen.pick(openers) + " " + gen.word() + " " + gen.word() + ". ";
  return prefix;
}

}  // namespace eegscore::testing
