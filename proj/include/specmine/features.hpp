#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "specmine/dom.hpp"

namespace specmine::features {

inline constexpr size_t kNumFilterFeatures = 6;

using FeatureRow = std::array<double, kNumFilterFeatures>;

// The cheap structural signals the linear filter sees for a block.
struct FilterFeatures {
    double n_text_fields = 0;   // non-empty text descendants
    double total_text_len = 0;  // codepoints across normalized text fields
    double alnum_ratio = 0;     // alphanumeric codepoints / all codepoints
    double n_images = 0;        // <img> elements in the subtree
    double n_links = 0;         // <a> elements with a non-empty href
    double upper_ratio = 0;     // uppercase letters / all codepoints

    FeatureRow as_array() const;
    static const std::array<const char*, kNumFilterFeatures>& names();
};

// Computes the feature vector for a block subtree. Blacklisted subtrees
// are invisible to every count, matching text_descendants.
FilterFeatures compute_filter_features(
    const dom::DomNode& block,
    const dom::TagBlacklist& blacklist = dom::TagBlacklist::standard());

// Per-feature z-score parameters, fit on training rows.
struct FeatureStats {
    FeatureRow mean{};
    FeatureRow stddev{};

    // Throws DegenerateDataError when `rows` is empty. Zero-variance
    // features keep stddev 0 and scale to 0.
    static FeatureStats fit(const std::vector<FeatureRow>& rows);

    FeatureRow scale(const FeatureRow& row) const;
};

}  // namespace specmine::features
