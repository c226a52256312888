#include "specmine/text.hpp"

#include <array>

namespace specmine::text {

namespace {

struct Range {
    char32_t lo, hi;
};

constexpr Range kLetterRanges[] = {
    {0x41, 0x5A},     {0x61, 0x7A},     {0xAA, 0xAA},     {0xB5, 0xB5},
    {0xBA, 0xBA},     {0xC0, 0xD6},     {0xD8, 0xF6},     {0xF8, 0x2FF},
    {0x370, 0x373},   {0x376, 0x377},   {0x37B, 0x37D},   {0x386, 0x386},
    {0x388, 0x3FF},   {0x400, 0x52F},   {0x531, 0x556},   {0x561, 0x587},
    {0x5D0, 0x5EA},   {0x620, 0x64A},   {0x66E, 0x66F},   {0x671, 0x6D3},
    {0x904, 0x939},   {0x958, 0x961},   {0x972, 0x97F},   {0xE01, 0xE30},
    {0xE32, 0xE33},   {0xE40, 0xE46},   {0x10A0, 0x10C5}, {0x10D0, 0x10FA},
    {0x1E00, 0x1FFF}, {0x3041, 0x3096}, {0x30A1, 0x30FA}, {0x3105, 0x312D},
    {0x3400, 0x4DBF}, {0x4E00, 0x9FFF},
    {0xAC00, 0xD7A3}, {0xF900, 0xFA6D}, {0xFF21, 0xFF3A}, {0xFF41, 0xFF5A},
};

constexpr Range kDigitRanges[] = {
    {0x30, 0x39},   {0x660, 0x669},   {0x6F0, 0x6F9},
    {0x966, 0x96F}, {0xFF10, 0xFF19},
};

constexpr Range kUpperRanges[] = {
    {0x41, 0x5A},   {0xC0, 0xD6},   {0xD8, 0xDE},     {0x178, 0x178},
    {0x386, 0x386}, {0x388, 0x38A}, {0x38C, 0x38C},   {0x38E, 0x38F},
    {0x391, 0x3A1}, {0x3A3, 0x3AB}, {0x400, 0x42F},   {0x531, 0x556},
    {0x10A0, 0x10C5}, {0xFF21, 0xFF3A},
};

bool in_ranges(char32_t cp, const Range* ranges, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        if (cp >= ranges[i].lo && cp <= ranges[i].hi) return true;
    }
    return false;
}

// Latin Extended-A cases alternate; upper codepoints follow a parity rule
// per subrange.
bool is_upper_latin_ext_a(char32_t cp) {
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2) == 0;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2) == 1;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2) == 0;
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2) == 1;
    return false;
}

}  // namespace

char32_t decode_utf8(std::string_view s, size_t& pos) {
    const auto byte = [&](size_t i) -> unsigned char {
        return static_cast<unsigned char>(s[i]);
    };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    size_t len = 0;
    char32_t cp = 0;
    char32_t min_cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
        min_cp = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
        min_cp = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
        min_cp = 0x10000;
    } else {
        ++pos;
        return kReplacementChar;
    }
    if (pos + len > s.size()) {
        ++pos;
        return kReplacementChar;
    }
    for (size_t i = 1; i < len; ++i) {
        unsigned char b = byte(pos + i);
        if ((b & 0xC0) != 0x80) {
            ++pos;
            return kReplacementChar;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong encodings, surrogates, and out-of-range values are invalid.
    if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++pos;
        return kReplacementChar;
    }
    pos += len;
    return cp;
}

bool validate_utf8(std::string_view s, size_t* bad_offset) {
    size_t pos = 0;
    while (pos < s.size()) {
        size_t start = pos;
        char32_t cp = decode_utf8(s, pos);
        if (cp == kReplacementChar) {
            // Distinguish a literal U+FFFD (3 valid bytes) from an error.
            if (pos - start != 3) {
                if (bad_offset) *bad_offset = start;
                return false;
            }
        }
    }
    return true;
}

std::string replace_invalid_utf8(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t pos = 0;
    while (pos < s.size()) {
        char32_t cp = decode_utf8(s, pos);
        out += encode_utf8(cp);
    }
    return out;
}

std::string encode_utf8(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
}

bool is_letter(char32_t cp) {
    return in_ranges(cp, kLetterRanges, std::size(kLetterRanges));
}

bool is_digit(char32_t cp) {
    return in_ranges(cp, kDigitRanges, std::size(kDigitRanges));
}

bool is_upper(char32_t cp) {
    return in_ranges(cp, kUpperRanges, std::size(kUpperRanges)) ||
           is_upper_latin_ext_a(cp);
}

bool is_alnum(char32_t cp) { return is_letter(cp) || is_digit(cp); }

bool is_space(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' ||
           cp == '\f' || cp == '\v' || cp == 0xA0;
}

std::string normalize_ws(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t pos = 0;
    bool pending_space = false;
    while (pos < s.size()) {
        size_t start = pos;
        char32_t cp = decode_utf8(s, pos);
        if (is_space(cp)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out.append(s.substr(start, pos - start));
    }
    return out;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string normalize_key(std::string_view s) {
    return to_lower_ascii(normalize_ws(s));
}

bool is_punct_only(std::string_view s) {
    std::string n = normalize_ws(s);
    if (n.empty()) return false;
    size_t pos = 0;
    while (pos < n.size()) {
        char32_t cp = decode_utf8(n, pos);
        if (is_alnum(cp)) return false;
    }
    return true;
}

size_t codepoint_count(std::string_view s) {
    size_t pos = 0, count = 0;
    while (pos < s.size()) {
        decode_utf8(s, pos);
        ++count;
    }
    return count;
}

uint64_t fnv1a(std::string_view bytes, uint64_t seed) {
    uint64_t h = seed;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace specmine::text
