#include "specmine/features.hpp"

#include <cmath>

#include "specmine/errors.hpp"
#include "specmine/text.hpp"

namespace specmine::features {

FeatureRow FilterFeatures::as_array() const {
    return {n_text_fields, total_text_len, alnum_ratio,
            n_images,      n_links,        upper_ratio};
}

const std::array<const char*, kNumFilterFeatures>& FilterFeatures::names() {
    static const std::array<const char*, kNumFilterFeatures> n = {
        "n_text_fields", "total_text_len", "alnum_ratio",
        "n_images",      "n_links",        "upper_ratio"};
    return n;
}

FilterFeatures compute_filter_features(const dom::DomNode& block,
                                       const dom::TagBlacklist& blacklist) {
    FilterFeatures f;
    size_t total_cps = 0;
    size_t alnum_cps = 0;
    size_t uppers = 0;

    std::vector<const dom::DomNode*> stack;
    if (block.is_element() && blacklist.contains(block.tag)) return f;
    for (auto it = block.children.rbegin(); it != block.children.rend(); ++it) {
        stack.push_back(*it);
    }
    while (!stack.empty()) {
        const dom::DomNode* cur = stack.back();
        stack.pop_back();
        if (cur->is_text()) {
            std::string norm = cur->normalized_text();
            if (norm.empty()) continue;
            f.n_text_fields += 1;
            size_t pos = 0;
            while (pos < norm.size()) {
                char32_t cp = text::decode_utf8(norm, pos);
                ++total_cps;
                if (text::is_alnum(cp)) ++alnum_cps;
                if (text::is_upper(cp)) ++uppers;
            }
            continue;
        }
        if (blacklist.contains(cur->tag)) continue;
        if (cur->tag == "img") f.n_images += 1;
        if (cur->tag == "a") {
            auto href = cur->attribute("href");
            if (href && !text::normalize_ws(*href).empty()) f.n_links += 1;
        }
        for (auto it = cur->children.rbegin(); it != cur->children.rend();
             ++it) {
            stack.push_back(*it);
        }
    }

    f.total_text_len = static_cast<double>(total_cps);
    f.alnum_ratio = total_cps == 0
                        ? 0.0
                        : static_cast<double>(alnum_cps) / total_cps;
    // Denominator is total characters, not letters; "8 GB RAM"-style text
    // therefore dilutes the ratio with digits and spaces.
    f.upper_ratio =
        total_cps == 0 ? 0.0 : static_cast<double>(uppers) / total_cps;
    return f;
}

FeatureStats FeatureStats::fit(const std::vector<FeatureRow>& rows) {
    if (rows.empty()) {
        throw DegenerateDataError("cannot fit feature stats on zero rows");
    }
    FeatureStats s;
    const double n = static_cast<double>(rows.size());
    for (size_t j = 0; j < kNumFilterFeatures; ++j) {
        double sum = 0;
        for (const auto& r : rows) sum += r[j];
        s.mean[j] = sum / n;
        double var = 0;
        for (const auto& r : rows) {
            double d = r[j] - s.mean[j];
            var += d * d;
        }
        s.stddev[j] = std::sqrt(var / n);
    }
    return s;
}

FeatureRow FeatureStats::scale(const FeatureRow& row) const {
    FeatureRow out{};
    for (size_t j = 0; j < kNumFilterFeatures; ++j) {
        out[j] = stddev[j] > 0 ? (row[j] - mean[j]) / stddev[j] : 0.0;
    }
    return out;
}

}  // namespace specmine::features
