#pragma once

#include "affect/feature_matrix.hpp"
#include "affect/lexicon.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace affect::resampling {

/// Two-sided Monte-Carlo permutation test on the difference of means.
struct McTestResult {
    double observed_diff = 0.0;  // mean(a) - mean(b)
    double p_value = 1.0;        // (exceed_count + 1) / (n_resamples + 1)
    std::size_t exceed_count = 0;
    std::size_t n_resamples = 0;
    std::uint64_t seed = 0;
    std::size_t size_a = 0;
    std::size_t size_b = 0;
};

/// Pools a and b, re-splits at the original sizes without replacement and
/// counts |resampled diff| >= |observed diff|. Resample r draws from
/// derive_seed(seed, r).
[[nodiscard]] McTestResult mc_mean_diff_test(std::span<const double> a, std::span<const double> b,
                                             std::size_t n_resamples, std::uint64_t seed);

/// n equal-width intervals over a rating scale; the top edge belongs to the
/// last bucket.
struct BucketGrid {
    lexicon::Scale scale;
    std::size_t n_buckets = 10;

    [[nodiscard]] std::size_t bucket_of(double value) const;
};

struct MatchedSample {
    std::vector<std::size_t> source_rows;     // rows of the source set, bucket by bucket
    std::vector<std::size_t> matched_counts;  // m per bucket, imposed on both sides
    std::vector<std::size_t> target_counts;
    std::vector<std::size_t> source_counts;

    [[nodiscard]] std::size_t total() const noexcept { return source_rows.size(); }
};

/// Valence-histogram matching of source to target: per bucket, draws
/// m = min(target count, source count) source words without replacement.
/// Throws InsufficientMatch when fewer than two words are matched overall.
[[nodiscard]] MatchedSample valence_bucket_match(const lexicon::RatedWordSet& target,
                                                 const lexicon::RatedWordSet& source,
                                                 std::string_view valence_feature, std::size_t n_buckets,
                                                 std::uint64_t seed);

struct FeatureComparison {
    std::string feature;
    double matched_source_mean = 0.0;  // mean over repeats of the matched-sample mean
    double target_mean = 0.0;          // target mean under the matched bucket counts
    double target_full_mean = 0.0;     // target mean over all its words
    double p_value = 1.0;
};

struct MatchedComparison {
    std::vector<FeatureComparison> features;
    std::vector<std::size_t> matched_counts;
    std::size_t n_repeats = 0;
    std::size_t n_buckets = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultRepeats = 2000;
inline constexpr std::size_t kDefaultBuckets = 10;
inline constexpr std::size_t kDefaultResamples = 10000;

/// Repeats valence matching n_repeats times (repeat r on derive_seed(seed, r))
/// and compares matched-source feature means with the target. The p-value is
/// the equal-tailed two-sided position of the target mean within the
/// repeat distribution, add-one smoothed and capped at 1.
[[nodiscard]] MatchedComparison matched_feature_comparison(const lexicon::RatedWordSet& target,
                                                           const lexicon::RatedWordSet& source,
                                                           const FeatureMatrix& features,
                                                           std::size_t n_repeats = kDefaultRepeats,
                                                           std::size_t n_buckets = kDefaultBuckets,
                                                           std::uint64_t seed = 0,
                                                           std::string_view valence_feature = "Valence");

void to_json(nlohmann::json& j, const McTestResult& result);
void to_json(nlohmann::json& j, const MatchedComparison& result);

/// `feature,target_mean,matched_source_mean,target_full_mean,p_value`
[[nodiscard]] std::string format_comparison_csv(const MatchedComparison& result);

}  // namespace affect::resampling
