#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "specmine/text.hpp"

using namespace specmine::text;

TEST_CASE("normalize_ws collapses runs and trims") {
    CHECK(normalize_ws("  a  b\t\nc ") == "a b c");
    CHECK(normalize_ws("") == "");
    CHECK(normalize_ws(" \t\r\n ") == "");
    CHECK(normalize_ws("one") == "one");
}

TEST_CASE("normalize_ws treats nbsp as whitespace") {
    CHECK(normalize_ws("a\xc2\xa0\x62") == "a b");
    CHECK(normalize_ws("\xc2\xa0") == "");
}

TEST_CASE("normalize_key lowercases after collapsing") {
    CHECK(normalize_key("  Spin  Speed ") == "spin speed");
    CHECK(normalize_key("BRAND") == "brand");
}

TEST_CASE("is_punct_only") {
    CHECK(is_punct_only(":"));
    CHECK(is_punct_only(" -- "));
    CHECK(!is_punct_only("a:"));
    CHECK(!is_punct_only("8"));
    CHECK(!is_punct_only(""));
    CHECK(!is_punct_only("   "));
}

TEST_CASE("codepoint_count is UTF-8 aware") {
    CHECK(codepoint_count("abc") == 3);
    CHECK(codepoint_count("caf\xc3\xa9") == 4);
    CHECK(codepoint_count("\xe6\xb4\x97") == 1);
}

TEST_CASE("character classes cover ASCII and beyond") {
    CHECK(is_upper(U'R'));
    CHECK(!is_upper(U'r'));
    CHECK(is_letter(U'é'));
    CHECK(is_digit(U'7'));
    CHECK(is_alnum(U'7'));
    CHECK(!is_alnum(U' '));
    CHECK(!is_alnum(U':'));
}

TEST_CASE("utf8 validation and replacement") {
    CHECK(validate_utf8("plain"));
    size_t off = 99;
    CHECK(!validate_utf8("a\xffz", &off));
    CHECK(off == 1);
    std::string fixed = replace_invalid_utf8("a\xffz");
    CHECK(validate_utf8(fixed));
    CHECK(codepoint_count(fixed) == 3);
}

TEST_CASE("fnv1a digests differ on different input") {
    CHECK(fnv1a("abc") != fnv1a("abd"));
    CHECK(fnv1a("abc") == fnv1a("abc"));
}
