#pragma once
// Section header detection, sentence splitting and sentence-to-section mapping.

#include <algorithm>
#include <map>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "eegscore/errors.hpp"
#include "eegscore/model.hpp"
#include "eegscore/text.hpp"

namespace eegscore {

/// Line-anchored run of uppercase letters, digits, spaces, commas, slashes and
/// hyphens ending in a colon. Capture group 1 is the header text incl. colon.
inline constexpr std::string_view kDefaultHeaderPattern = R"(^[ \t]*([A-Z][A-Z0-9 ,/\-]+:))";

inline std::map<std::string, CanonicalSection::Kind> default_section_aliases() {
  using K = CanonicalSection::Kind;
  return {
      {"HISTORY", K::ClinicalHistory},
      {"CLINICAL HISTORY", K::ClinicalHistory},
      {"IMPRESSION", K::Impression},
      {"IMPRESSIONS", K::Impression},
      {"CLINICAL IMPRESSIONS", K::Impression},
      {"MEDICATIONS", K::Medications},
      {"CURRENT MEDICATIONS", K::Medications},
      {"DESCRIPTION OF THE RECORD", K::DescriptionOfRecord},
      {"DESCRIPTION OF RECORD", K::DescriptionOfRecord},
      {"CLINICAL CORRELATION", K::ClinicalCorrelation},
      {"CORRELATION", K::ClinicalCorrelation},
      {"INTRODUCTION", K::Introduction},
  };
}

inline std::vector<std::string> default_abbreviations() {
  return {"Dr.", "Mr.", "Mrs.", "vs.", "e.g.", "i.e.", "a.m.", "p.m."};
}

struct SegmenterConfig {
  std::string header_pattern{kDefaultHeaderPattern};
  std::map<std::string, CanonicalSection::Kind> aliases = default_section_aliases();
  std::vector<std::string> abbreviations = default_abbreviations();
};

/// Uppercases, collapses whitespace and strips the trailing colon.
inline std::string normalize_header(std::string_view raw) {
  auto s = normalize_whitespace(to_upper_ascii(raw));
  while (!s.empty() && (s.back() == ':' || s.back() == ' ')) s.pop_back();
  return s;
}

struct HeaderMatch {
  std::string raw;  // verbatim, including the colon
  Span span;
  CanonicalSection canonical;
};

/// Compiled segmentation rules. Const member functions are safe to call concurrently.
class Segmenter {
 public:
  explicit Segmenter(SegmenterConfig config = {}) : config_(std::move(config)) {
    try {
      header_re_ = std::regex(config_.header_pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw ConfigError("invalid header pattern '" + config_.header_pattern + "': " + e.what());
    }
    for (const auto& [alias, kind] : config_.aliases) aliases_[normalize_header(alias)] = kind;
    for (const auto& a : config_.abbreviations) {
      auto d = decode_utf8(a).chars;
      for (auto& c : d) c = ascii_lower(c);
      if (!d.empty() && d.back() == U'.') abbreviations_.push_back(std::move(d));
    }
  }

  const SegmenterConfig& config() const noexcept { return config_; }

  CanonicalSection canonicalize(std::string_view raw) const {
    auto key = normalize_header(raw);
    if (auto it = aliases_.find(key); it != aliases_.end()) return {it->second};
    return CanonicalSection::other(key);
  }

  std::vector<HeaderMatch> find_headers(std::u32string_view chars) const {
    std::vector<HeaderMatch> out;
    std::size_t line_start = 0;
    while (line_start <= chars.size()) {
      std::size_t line_end = chars.find(U'\n', line_start);
      if (line_end == std::u32string_view::npos) line_end = chars.size();
      match_line(chars, line_start, line_end, out);
      if (line_end == chars.size()) break;
      line_start = line_end + 1;
    }
    return out;
  }

  std::vector<Span> split_sentences(std::u32string_view chars, Span within) const {
    std::vector<Span> out;
    within.end = std::min(within.end, chars.size());
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t cur = npos;
    std::size_t last_end = 0;
    for (std::size_t i = within.start; i < within.end; ++i) {
      char32_t c = chars[i];
      if (is_space(c)) {
        if (c == U'\n' && cur != npos && blank_line_at(chars, i, within.end)) {
          out.push_back({cur, last_end});
          cur = npos;
        }
        continue;
      }
      if (cur == npos) cur = i;
      last_end = i + 1;
      if (c != U'.' && c != U'!' && c != U'?') continue;
      std::size_t j = i + 1;
      while (j < within.end && is_closer(chars[j])) ++j;
      if (splits_after(chars, cur, i, j, within.end)) {
        out.push_back({cur, j});
        cur = npos;
        last_end = j;
        i = j - 1;
      }
    }
    if (cur != npos) out.push_back({cur, last_end});
    return out;
  }

  SegmentedReport segment(const Report& report) const {
    const auto& chars = report.chars();
    SegmentedReport seg{report, {0, chars.size()}, {}, {}};
    auto headers = find_headers(chars);
    if (!headers.empty()) seg.preamble.end = headers.front().span.start;
    for (std::size_t k = 0; k < headers.size(); ++k) {
      std::size_t body_end = k + 1 < headers.size() ? headers[k + 1].span.start : chars.size();
      seg.sections.push_back({headers[k].canonical, headers[k].span, {headers[k].span.end, body_end}});
    }
    for (auto s : split_sentences(chars, seg.preamble)) seg.sentences.push_back({s, std::nullopt});
    for (std::size_t k = 0; k < seg.sections.size(); ++k)
      for (auto s : split_sentences(chars, seg.sections[k].body)) seg.sentences.push_back({s, k});
    return seg;
  }

 private:
  static bool is_closer(char32_t c) {
    return c == U')' || c == U']' || c == U'"' || c == U'\'' || c == 0x2019 || c == 0x201D;
  }

  static bool is_opener(char32_t c) {
    return c == U'(' || c == U'[' || c == U'"' || c == U'\'' || c == 0x2018 || c == 0x201C;
  }

  // A newline followed by optional horizontal whitespace and another newline.
  static bool blank_line_at(std::u32string_view chars, std::size_t nl, std::size_t end) {
    for (std::size_t k = nl + 1; k < end; ++k) {
      if (chars[k] == U'\n') return true;
      if (!is_space(chars[k])) return false;
    }
    return false;
  }

  bool splits_after(std::u32string_view chars, std::size_t sentence_start, std::size_t punct,
                    std::size_t after, std::size_t end) const {
    if (after >= end) return true;
    if (!is_space(chars[after])) return false;
    std::size_t m = after;
    bool blank = false;
    while (m < end && is_space(chars[m])) {
      if (chars[m] == U'\n' && blank_line_at(chars, m, end)) blank = true;
      ++m;
    }
    if (m >= end || blank) return true;
    while (m + 1 < end && is_opener(chars[m])) ++m;
    if (!is_ascii_upper(chars[m]) && !is_ascii_digit(chars[m])) return false;
    if (chars[punct] != U'.') return true;
    return !is_abbreviation(chars, sentence_start, punct) && !is_initial(chars, sentence_start, punct);
  }

  bool is_abbreviation(std::u32string_view chars, std::size_t floor, std::size_t dot) const {
    for (const auto& abbr : abbreviations_) {
      if (abbr.size() > dot + 1 - floor) continue;
      std::size_t b = dot + 1 - abbr.size();
      bool ok = true;
      for (std::size_t k = 0; k < abbr.size() && ok; ++k) ok = ascii_lower(chars[b + k]) == abbr[k];
      if (ok && (b == floor || !is_word_char(chars[b - 1]))) return true;
    }
    return false;
  }

  static bool is_initial(std::u32string_view chars, std::size_t floor, std::size_t dot) {
    if (dot == floor || !is_ascii_upper(chars[dot - 1])) return false;
    return dot - 1 == floor || !is_word_char(chars[dot - 2]);
  }

  void match_line(std::u32string_view chars, std::size_t begin, std::size_t end,
                  std::vector<HeaderMatch>& out) const {
    std::string line;
    std::vector<std::size_t> byte_to_char;
    for (std::size_t i = begin; i < end; ++i) {
      std::size_t before = line.size();
      append_utf8(line, chars[i]);
      byte_to_char.insert(byte_to_char.end(), line.size() - before, i);
    }
    byte_to_char.push_back(end);
    std::smatch m;
    if (!std::regex_search(line, m, header_re_, std::regex_constants::match_continuous)) return;
    const auto& g = m.size() > 1 && m[1].matched ? m[1] : m[0];
    auto b = static_cast<std::size_t>(g.first - line.begin());
    auto e = static_cast<std::size_t>(g.second - line.begin());
    if (e <= b || line[e - 1] != ':') return;
    HeaderMatch h;
    h.raw = line.substr(b, e - b);
    h.span = {byte_to_char[b], byte_to_char[e - 1] + 1};
    h.canonical = canonicalize(h.raw);
    out.push_back(std::move(h));
  }

  SegmenterConfig config_;
  std::regex header_re_;
  std::map<std::string, CanonicalSection::Kind> aliases_;
  std::vector<std::u32string> abbreviations_;
};

inline const Segmenter& default_segmenter() {
  static const Segmenter s;
  return s;
}

inline std::vector<HeaderMatch> find_headers(std::string_view utf8,
                                             const Segmenter& s = default_segmenter()) {
  return s.find_headers(decode_utf8(utf8).chars);
}

inline std::vector<Span> split_sentences(std::u32string_view chars, Span within,
                                         const Segmenter& s = default_segmenter()) {
  return s.split_sentences(chars, within);
}

inline SegmentedReport segment(const Report& report, const Segmenter& s = default_segmenter()) {
  return s.segment(report);
}

}  // namespace eegscore
