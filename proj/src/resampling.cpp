#include "affect/resampling.hpp"

#include "affect/error.hpp"
#include "affect/parallel.hpp"
#include "affect/rng.hpp"
#include "affect/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace affect::resampling {

namespace {

constexpr std::size_t kBlock = 256;

double tie_tolerance(std::span<const double> values) {
    double scale = 1.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    return 1e-10 * scale;
}

}  // namespace

McTestResult mc_mean_diff_test(std::span<const double> a, std::span<const double> b,
                               std::size_t n_resamples, std::uint64_t seed) {
    if (a.size() < 2 || b.size() < 2) {
        throw Error(ErrorCode::SampleTooSmall, "permutation test needs at least 2 values per sample");
    }
    if (n_resamples == 0) throw Error(ErrorCode::InvalidArgument, "n_resamples must be positive");

    std::vector<double> pool(a.begin(), a.end());
    pool.insert(pool.end(), b.begin(), b.end());
    for (double v : pool) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite value in permutation sample");
    }
    const double total = std::accumulate(pool.begin(), pool.end(), 0.0);
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    const double sum_a = std::accumulate(a.begin(), a.end(), 0.0);
    const double observed = sum_a / na - (total - sum_a) / nb;
    const double threshold = std::abs(observed) - tie_tolerance(pool);

    std::vector<char> exceeds(n_resamples, 0);
    const std::size_t blocks = (n_resamples + kBlock - 1) / kBlock;
    parallel_for(blocks, [&](std::size_t block) {
        std::vector<double> work(pool.size());
        const std::size_t end = std::min(n_resamples, (block + 1) * kBlock);
        for (std::size_t r = block * kBlock; r < end; ++r) {
            std::copy(pool.begin(), pool.end(), work.begin());
            Rng rng(derive_seed(seed, r));
            double draw = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const auto j = i + rng.below(work.size() - i);
                std::swap(work[i], work[j]);
                draw += work[i];
            }
            const double diff = draw / na - (total - draw) / nb;
            exceeds[r] = std::abs(diff) >= threshold ? 1 : 0;
        }
    });

    McTestResult result;
    result.observed_diff = observed;
    result.exceed_count = static_cast<std::size_t>(std::count(exceeds.begin(), exceeds.end(), 1));
    result.n_resamples = n_resamples;
    result.p_value = static_cast<double>(result.exceed_count + 1) / static_cast<double>(n_resamples + 1);
    result.seed = seed;
    result.size_a = a.size();
    result.size_b = b.size();
    return result;
}

std::size_t BucketGrid::bucket_of(double value) const {
    if (n_buckets == 0) throw Error(ErrorCode::InvalidArgument, "bucket count must be positive");
    if (!scale.contains(value)) {
        throw Error(ErrorCode::OutOfScale, "value " + io::format_double(value) + " outside bucket scale");
    }
    const double position = (value - scale.min) / scale.width() * static_cast<double>(n_buckets);
    return std::min(n_buckets - 1, static_cast<std::size_t>(std::floor(position)));
}

namespace {

struct BucketPlan {
    std::vector<std::vector<std::size_t>> source_members;
    std::vector<std::vector<std::size_t>> target_members;
    std::vector<std::size_t> matched;
    std::size_t total = 0;
};

BucketPlan plan_buckets(const lexicon::RatedWordSet& target, const lexicon::RatedWordSet& source,
                        std::string_view valence_feature, std::size_t n_buckets) {
    if (n_buckets == 0) throw Error(ErrorCode::InvalidArgument, "n_buckets must be at least 1");
    const BucketGrid grid{target.scale, n_buckets};
    const auto t_valence = target.column(valence_feature);
    const auto s_valence = source.column(valence_feature);

    BucketPlan plan;
    plan.source_members.resize(n_buckets);
    plan.target_members.resize(n_buckets);
    for (Eigen::Index i = 0; i < t_valence.size(); ++i) {
        plan.target_members[grid.bucket_of(t_valence(i))].push_back(static_cast<std::size_t>(i));
    }
    for (Eigen::Index i = 0; i < s_valence.size(); ++i) {
        plan.source_members[grid.bucket_of(s_valence(i))].push_back(static_cast<std::size_t>(i));
    }
    plan.matched.resize(n_buckets);
    for (std::size_t b = 0; b < n_buckets; ++b) {
        plan.matched[b] = std::min(plan.target_members[b].size(), plan.source_members[b].size());
        plan.total += plan.matched[b];
    }
    if (plan.total < 2) {
        throw Error(ErrorCode::InsufficientMatch,
                    "only " + std::to_string(plan.total) + " words matched between " + target.list_name +
                        " and " + source.list_name);
    }
    return plan;
}

void draw_matched(const BucketPlan& plan, Rng& rng, std::vector<std::size_t>& out) {
    out.clear();
    std::vector<std::size_t> work;
    for (std::size_t b = 0; b < plan.matched.size(); ++b) {
        const auto m = plan.matched[b];
        if (m == 0) continue;
        work = plan.source_members[b];
        for (std::size_t i = 0; i < m; ++i) {
            const auto j = i + rng.below(work.size() - i);
            std::swap(work[i], work[j]);
            out.push_back(work[i]);
        }
    }
}

std::vector<Eigen::Index> feature_rows(const lexicon::RatedWordSet& set, const FeatureMatrix& features) {
    std::unordered_map<std::string_view, Eigen::Index> lookup;
    for (std::size_t i = 0; i < features.words.size(); ++i) {
        lookup.emplace(features.words[i], static_cast<Eigen::Index>(i));
    }
    std::vector<Eigen::Index> rows;
    rows.reserve(set.words.size());
    for (const auto& word : set.words) {
        const auto it = lookup.find(word);
        if (it == lookup.end()) {
            throw Error(ErrorCode::MissingFeature,
                        "word '" + word + "' of " + set.list_name + " has no feature row");
        }
        rows.push_back(it->second);
    }
    return rows;
}

}  // namespace

MatchedSample valence_bucket_match(const lexicon::RatedWordSet& target, const lexicon::RatedWordSet& source,
                                   std::string_view valence_feature, std::size_t n_buckets,
                                   std::uint64_t seed) {
    const auto plan = plan_buckets(target, source, valence_feature, n_buckets);
    MatchedSample sample;
    Rng rng(seed);
    draw_matched(plan, rng, sample.source_rows);
    sample.matched_counts = plan.matched;
    for (std::size_t b = 0; b < n_buckets; ++b) {
        sample.target_counts.push_back(plan.target_members[b].size());
        sample.source_counts.push_back(plan.source_members[b].size());
    }
    return sample;
}

MatchedComparison matched_feature_comparison(const lexicon::RatedWordSet& target,
                                             const lexicon::RatedWordSet& source,
                                             const FeatureMatrix& features, std::size_t n_repeats,
                                             std::size_t n_buckets, std::uint64_t seed,
                                             std::string_view valence_feature) {
    if (n_repeats == 0) throw Error(ErrorCode::InvalidArgument, "n_repeats must be positive");
    const auto plan = plan_buckets(target, source, valence_feature, n_buckets);
    const auto target_rows = feature_rows(target, features);
    const auto source_rows = feature_rows(source, features);
    const auto n_features = features.values.cols();

    // Target side under the matched histogram: bucket means weighted by m.
    Eigen::VectorXd target_matched = Eigen::VectorXd::Zero(n_features);
    Eigen::VectorXd target_full = Eigen::VectorXd::Zero(n_features);
    for (auto row : target_rows) target_full += features.values.row(row).transpose();
    target_full /= static_cast<double>(target_rows.size());
    for (std::size_t b = 0; b < n_buckets; ++b) {
        if (plan.matched[b] == 0) continue;
        Eigen::VectorXd bucket_sum = Eigen::VectorXd::Zero(n_features);
        for (auto i : plan.target_members[b]) bucket_sum += features.values.row(target_rows[i]).transpose();
        target_matched += bucket_sum * (static_cast<double>(plan.matched[b]) /
                                        static_cast<double>(plan.target_members[b].size()));
    }
    target_matched /= static_cast<double>(plan.total);

    Eigen::MatrixXd repeat_means(static_cast<Eigen::Index>(n_repeats), n_features);
    parallel_for(n_repeats, [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        std::vector<std::size_t> drawn;
        draw_matched(plan, rng, drawn);
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(n_features);
        for (auto i : drawn) sum += features.values.row(source_rows[i]).transpose();
        repeat_means.row(static_cast<Eigen::Index>(r)) = (sum / static_cast<double>(drawn.size())).transpose();
    });

    MatchedComparison result;
    result.matched_counts = plan.matched;
    result.n_repeats = n_repeats;
    result.n_buckets = n_buckets;
    result.seed = seed;
    const double eps = 1e-10 * std::max(1.0, features.scale.max);
    const auto denom = static_cast<double>(n_repeats + 1);
    for (Eigen::Index f = 0; f < n_features; ++f) {
        const double t = target_matched(f);
        std::size_t at_or_below = 0;
        std::size_t at_or_above = 0;
        for (Eigen::Index r = 0; r < repeat_means.rows(); ++r) {
            const double m = repeat_means(r, f);
            if (m <= t + eps) ++at_or_below;
            if (m >= t - eps) ++at_or_above;
        }
        const double lower = static_cast<double>(at_or_below + 1) / denom;
        const double upper = static_cast<double>(at_or_above + 1) / denom;
        FeatureComparison row;
        row.feature = features.feature_names[static_cast<std::size_t>(f)];
        row.matched_source_mean = repeat_means.col(f).mean();
        row.target_mean = t;
        row.target_full_mean = target_full(f);
        row.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
        result.features.push_back(std::move(row));
    }
    return result;
}

void to_json(nlohmann::json& j, const McTestResult& result) {
    j = nlohmann::json{{"observed_diff", result.observed_diff},
                       {"p_value", result.p_value},
                       {"exceed_count", result.exceed_count},
                       {"n_resamples", result.n_resamples},
                       {"seed", result.seed},
                       {"size_a", result.size_a},
                       {"size_b", result.size_b},
                       {"statistic", "difference of means"},
                       {"sidedness", "two-sided"}};
}

void to_json(nlohmann::json& j, const MatchedComparison& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& f : result.features) {
        rows.push_back({{"feature", f.feature},
                        {"target_mean", f.target_mean},
                        {"matched_source_mean", f.matched_source_mean},
                        {"target_full_mean", f.target_full_mean},
                        {"p_value", f.p_value}});
    }
    j = nlohmann::json{{"features", rows},
                       {"matched_counts", result.matched_counts},
                       {"n_repeats", result.n_repeats},
                       {"n_buckets", result.n_buckets},
                       {"seed", result.seed},
                       {"resampled_side", "source"},
                       {"sidedness", "two-sided, equal-tailed"}};
}

std::string format_comparison_csv(const MatchedComparison& result) {
    std::string out = "feature,target_mean,matched_source_mean,target_full_mean,p_value\n";
    for (const auto& f : result.features) {
        out += f.feature + "," + io::format_double(f.target_mean) + "," +
               io::format_double(f.matched_source_mean) + "," + io::format_double(f.target_full_mean) + "," +
               io::format_double(f.p_value) + "\n";
    }
    return out;
}

}  // namespace affect::resampling
