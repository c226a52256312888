#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "specmine/dom.hpp"
#include "specmine/features.hpp"

using namespace specmine;
using namespace specmine::features;

namespace {

const dom::DomNode* first_block(const dom::Document& doc) {
    for (const auto* c : doc.body().children)
        if (c->is_element()) return c;
    return nullptr;
}

}  // namespace

TEST_CASE("documented two-span example: hand-counted values") {
    dom::Document doc =
        dom::parse_html("<div><span>RAM</span><span>8 GB</span></div>");
    auto f = compute_filter_features(*first_block(doc));
    CHECK(f.n_text_fields == 2);
    CHECK(f.total_text_len == 7);
    CHECK(f.alnum_ratio == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
    CHECK(f.n_images == 0);
    CHECK(f.n_links == 0);
    CHECK(f.upper_ratio == doctest::Approx(5.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("empty div gives all zeros") {
    dom::Document doc = dom::parse_html("<div></div>");
    auto f = compute_filter_features(*first_block(doc));
    CHECK(f.n_text_fields == 0);
    CHECK(f.total_text_len == 0);
    CHECK(f.alnum_ratio == 0);
    CHECK(f.n_images == 0);
    CHECK(f.n_links == 0);
    CHECK(f.upper_ratio == 0);
}

TEST_CASE("blacklisted-only content gives all zeros") {
    dom::Document doc =
        dom::parse_html("<div><script>var x = 1;</script></div>");
    auto f = compute_filter_features(*first_block(doc));
    CHECK(f.n_text_fields == 0);
    CHECK(f.total_text_len == 0);
    CHECK(f.alnum_ratio == 0);
}

TEST_CASE("images and qualified links are counted") {
    dom::Document doc = dom::parse_html(
        "<div><img src=a><img src=b><a href=\"/x\">go</a><a>bare</a>"
        "<a href=\"\">empty</a></div>");
    auto f = compute_filter_features(*first_block(doc));
    CHECK(f.n_images == 2);
    // Only anchors with a non-empty href count.
    CHECK(f.n_links == 1);
}

TEST_CASE("counts are unicode codepoints, not bytes") {
    dom::Document doc = dom::parse_html("<div><span>caf\xc3\xa9</span></div>");
    auto f = compute_filter_features(*first_block(doc));
    CHECK(f.total_text_len == 4);
    CHECK(f.alnum_ratio == doctest::Approx(1.0));
}

TEST_CASE("appending a text child never decreases counts") {
    dom::Document a = dom::parse_html("<div><p>one</p></div>");
    dom::Document b = dom::parse_html("<div><p>one</p><p>two</p></div>");
    auto fa = compute_filter_features(*first_block(a));
    auto fb = compute_filter_features(*first_block(b));
    CHECK(fb.n_text_fields >= fa.n_text_fields);
    CHECK(fb.total_text_len >= fa.total_text_len);
}

TEST_CASE("features are order-free under child permutation") {
    dom::Document a = dom::parse_html(
        "<div><p>Alpha</p><img src=x><a href=y>L</a></div>");
    dom::Document b = dom::parse_html(
        "<div><a href=y>L</a><p>Alpha</p><img src=x></div>");
    auto fa = compute_filter_features(*first_block(a)).as_array();
    auto fb = compute_filter_features(*first_block(b)).as_array();
    for (size_t i = 0; i < kNumFilterFeatures; ++i) CHECK(fa[i] == fb[i]);
}

TEST_CASE("scaling the mean row gives the zero vector") {
    std::vector<FeatureRow> rows = {{1, 10, 0.5, 0, 2, 0.1},
                                    {3, 30, 0.7, 2, 4, 0.3}};
    auto stats = FeatureStats::fit(rows);
    FeatureRow mean_row = stats.mean;
    auto scaled = stats.scale(mean_row);
    for (double v : scaled) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("scale then unscale recovers the row") {
    std::vector<FeatureRow> rows = {{1, 10, 0.5, 0, 2, 0.1},
                                    {3, 30, 0.7, 2, 4, 0.3},
                                    {8, 90, 0.9, 1, 0, 0.6}};
    auto stats = FeatureStats::fit(rows);
    FeatureRow f = {2, 25, 0.66, 1, 3, 0.2};
    auto z = stats.scale(f);
    for (size_t i = 0; i < kNumFilterFeatures; ++i) {
        double recovered = z[i] * stats.stddev[i] + stats.mean[i];
        CHECK(recovered == doctest::Approx(f[i]).epsilon(1e-9));
    }
}

TEST_CASE("three-sample stats match direct recomputation") {
    std::vector<FeatureRow> rows = {{2, 4, 0, 0, 0, 0},
                                    {4, 8, 0, 0, 0, 0},
                                    {6, 12, 0, 0, 0, 0}};
    auto stats = FeatureStats::fit(rows);
    CHECK(stats.mean[0] == doctest::Approx(4.0));
    CHECK(stats.mean[1] == doctest::Approx(8.0));
    // Population standard deviation.
    CHECK(stats.stddev[0] == doctest::Approx(std::sqrt(8.0 / 3.0)));
    CHECK(stats.stddev[1] == doctest::Approx(std::sqrt(32.0 / 3.0)));
}

TEST_CASE("zero-variance features scale to zero") {
    std::vector<FeatureRow> rows = {{5, 1, 0, 0, 0, 0},
                                    {5, 2, 0, 0, 0, 0}};
    auto stats = FeatureStats::fit(rows);
    CHECK(stats.stddev[0] == 0.0);
    FeatureRow f = {123, 2.0, 0, 0, 0, 0};
    auto z = stats.scale(f);
    CHECK(z[0] == 0.0);
    CHECK(z[1] == doctest::Approx(1.0));
}

TEST_CASE("fitting on no rows is degenerate") {
    CHECK_THROWS_AS(FeatureStats::fit({}), DegenerateDataError);
}
