#pragma once
// UTF-8 handling and the word tokenizer shared by every stage.
//
// All offsets exposed by the library count Unicode scalar values, never bytes.
// A token is a maximal run of word characters (ASCII letters/digits plus
// non-ASCII letters); matching is done on the ASCII-lowercased token text.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eegscore {

/// Half-open character range [start, end) into a report's text.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - start; }
  bool empty() const noexcept { return end <= start; }
  bool contains(const Span& other) const noexcept {
    return start <= other.start && other.end <= end;
  }
  bool overlaps(const Span& other) const noexcept {
    return start < other.end && other.start < end;
  }
  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

inline constexpr char32_t kReplacementChar = 0xFFFD;

struct DecodeResult {
  std::u32string chars;
  std::size_t invalid_sequences = 0;
};

/// Decodes UTF-8, replacing each maximal invalid subsequence with U+FFFD.
inline DecodeResult decode_utf8(std::string_view bytes) {
  DecodeResult out;
  out.chars.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(bytes[k]); };
  while (i < n) {
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
      out.chars.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if (b0 >= 0xC2 && b0 <= 0xDF) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if (b0 >= 0xE0 && b0 <= 0xEF) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if (b0 >= 0xF0 && b0 <= 0xF4) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    }
    std::size_t k = 1;
    if (len) {
      for (; k < len && i + k < n; ++k) {
        unsigned char b = byte(i + k);
        if ((b & 0xC0) != 0x80) break;
        cp = (cp << 6) | (b & 0x3F);
      }
    }
    if (len && k == len && cp >= min && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF)) {
      out.chars.push_back(cp);
      i += len;
    } else {
      out.chars.push_back(kReplacementChar);
      ++out.invalid_sequences;
      i += len ? k : 1;
    }
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode_utf8(std::u32string_view chars) {
  std::string out;
  out.reserve(chars.size());
  for (char32_t cp : chars) append_utf8(out, cp);
  return out;
}

inline bool is_ascii_upper(char32_t c) noexcept { return c >= U'A' && c <= U'Z'; }
inline bool is_ascii_lower(char32_t c) noexcept { return c >= U'a' && c <= U'z'; }
inline bool is_ascii_digit(char32_t c) noexcept { return c >= U'0' && c <= U'9'; }
inline bool is_ascii_alpha(char32_t c) noexcept { return is_ascii_upper(c) || is_ascii_lower(c); }

inline bool is_space(char32_t c) noexcept {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
         c == 0x00A0 || c == 0x2028 || c == 0x2029 || (c >= 0x2000 && c <= 0x200A) ||
         c == 0x3000;
}

/// Letters outside ASCII are approximated: anything from U+00C0 up that is not
/// in a punctuation/symbol block counts as a letter.
inline bool is_word_char(char32_t c) noexcept {
  if (c < 0x80) return is_ascii_alpha(c) || is_ascii_digit(c);
  if (c < 0xC0 || c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c >= 0xFE10 && c <= 0xFE6F) return false;
  if (c == kReplacementChar || (c >= 0xFF00 && c <= 0xFF0F)) return false;
  return true;
}

inline char32_t ascii_lower(char32_t c) noexcept { return is_ascii_upper(c) ? c + 32 : c; }
inline char32_t ascii_upper(char32_t c) noexcept { return is_ascii_lower(c) ? c - 32 : c; }

struct Token {
  Span span;
  std::string lower;  // ASCII-lowercased UTF-8 text
};

/// Tokenizes `chars` restricted to `within`; token spans are absolute offsets.
inline std::vector<Token> tokenize(std::u32string_view chars, Span within) {
  std::vector<Token> tokens;
  std::size_t i = within.start;
  while (i < within.end) {
    if (!is_word_char(chars[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::string lower;
    while (j < within.end && is_word_char(chars[j])) append_utf8(lower, ascii_lower(chars[j++]));
    tokens.push_back({{i, j}, std::move(lower)});
    i = j;
  }
  return tokens;
}

inline std::vector<Token> tokenize(std::u32string_view chars) {
  return tokenize(chars, {0, chars.size()});
}

/// Lowercased token strings of a UTF-8 phrase.
inline std::vector<std::string> phrase_tokens(std::string_view utf8) {
  auto decoded = decode_utf8(utf8);
  std::vector<std::string> out;
  for (auto& t : tokenize(decoded.chars)) out.push_back(std::move(t.lower));
  return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// Trims ASCII whitespace and collapses internal runs to one space.
inline std::string normalize_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  return out;
}

inline std::string to_upper_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && static_cast<unsigned char>(s[b]) <= ' ') ++b;
  while (e > b && static_cast<unsigned char>(s[e - 1]) <= ' ') --e;
  return std::string(s.substr(b, e - b));
}

/// True when `needle` occurs as a contiguous run inside `haystack`.
inline bool contains_token_run(const std::vector<std::string>& haystack,
                               const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < needle.size() && ok; ++k) ok = haystack[i + k] == needle[k];
    if (ok) return true;
  }
  return false;
}

}  // namespace eegscore
