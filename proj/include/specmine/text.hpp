#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace specmine::text {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes the codepoint starting at byte offset `pos` and advances `pos`
// past it. Invalid sequences decode to U+FFFD and advance by one byte.
char32_t decode_utf8(std::string_view s, size_t& pos);

// True when `s` is well-formed UTF-8. On failure `bad_offset` (if given)
// receives the offset of the first offending byte.
bool validate_utf8(std::string_view s, size_t* bad_offset = nullptr);

// Re-encodes `s`, replacing every invalid sequence with U+FFFD.
std::string replace_invalid_utf8(std::string_view s);

std::string encode_utf8(char32_t cp);

// Character classes over a pragmatic set of Unicode ranges (ASCII, Latin-1
// and Latin Extended, Greek, Cyrillic, Hebrew, Arabic, Devanagari, Thai,
// kana, CJK, Hangul, fullwidth forms). Product pages are multilingual; the
// tables cover the scripts that actually occur in the corpora.
bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_upper(char32_t cp);
bool is_alnum(char32_t cp);

// Whitespace for normalization purposes: ASCII whitespace plus U+00A0,
// which pages produce via &nbsp;.
bool is_space(char32_t cp);

// Collapses runs of whitespace to a single ' ' and trims both ends.
std::string normalize_ws(std::string_view s);

std::string to_lower_ascii(std::string_view s);

// Canonical key form used for seed-pool membership and attribute names:
// whitespace-collapsed, trimmed, ASCII-lowercased.
std::string normalize_key(std::string_view s);

// True when the normalized text is non-empty yet contains no letter or
// digit codepoint (solely punctuation/symbols).
bool is_punct_only(std::string_view s);

// Codepoint count (invalid bytes count as one replacement char each).
size_t codepoint_count(std::string_view s);

// FNV-1a, used for config digests and model/embedding pairing checks.
uint64_t fnv1a(std::string_view bytes, uint64_t seed = 14695981039346656037ull);

}  // namespace specmine::text
