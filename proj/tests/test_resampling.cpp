#include "test_support.hpp"

#include "affect/resampling.hpp"
#include "affect/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace affect;
using namespace affect::resampling;

namespace {

/// Two-sided exact p-value over every split of the pooled sample.
double exact_permutation_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto n = pooled.size();
    const auto na = a.size();
    const double total = std::accumulate(pooled.begin(), pooled.end(), 0.0);
    auto diff_of = [&](double sum_a) {
        return sum_a / static_cast<double>(na) - (total - sum_a) / static_cast<double>(n - na);
    };
    const double observed = std::abs(diff_of(std::accumulate(a.begin(), a.end(), 0.0)));
    std::size_t extreme = 0;
    std::size_t count = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != na) continue;
        double sum_a = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) sum_a += pooled[i];
        }
        ++count;
        if (std::abs(diff_of(sum_a)) >= observed - 1e-12) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(count);
}

std::vector<double> draw(Rng& rng, std::size_t n, double shift) {
    std::vector<double> out(n);
    for (auto& v : out) v = rng.normal() + shift;
    return out;
}

lexicon::RatedWordSet rated(const std::string& name, const std::vector<std::string>& words,
                            const std::vector<double>& valence) {
    lexicon::RatedWordSet set;
    set.list_name = name;
    set.feature_names = {"Valence"};
    set.scale = lexicon::kVadScale;
    set.words = words;
    set.rows = Eigen::Map<const Eigen::VectorXd>(valence.data(), static_cast<Eigen::Index>(valence.size()));
    return set;
}

}  // namespace

TEST_CASE("permutation p-value agrees with exhaustive enumeration") {
    Rng rng(2024);
    for (int pair = 0; pair < 12; ++pair) {
        const auto na = 4 + rng.below(5);
        const auto nb = 4 + rng.below(5);
        const auto a = draw(rng, na, 0.15 * static_cast<double>(pair % 6));
        const auto b = draw(rng, nb, 0.0);
        const double exact = exact_permutation_p(a, b);
        const auto mc = mc_mean_diff_test(a, b, 20000, 7 + static_cast<std::uint64_t>(pair));
        CAPTURE(exact);
        CHECK(std::abs(mc.p_value - exact) < 0.02);
    }
}

TEST_CASE("observed difference, smoothing and determinism") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{4, 5, 6, 7};
    const auto r = mc_mean_diff_test(a, b, 999, 5);
    CHECK(r.observed_diff == doctest::Approx(-3.5));
    CHECK(r.p_value == doctest::Approx(static_cast<double>(r.exceed_count + 1) / 1000.0));
    CHECK(r.size_a == 3);
    CHECK(r.size_b == 4);
    const auto again = mc_mean_diff_test(a, b, 999, 5);
    CHECK(again.exceed_count == r.exceed_count);

    const std::vector<double> one{1};
    CHECK(test::error_code_of([&] { (void)mc_mean_diff_test(one, b, 10, 1); }) == ErrorCode::SampleTooSmall);
    const std::vector<double> bad{1, NAN};
    CHECK(test::error_code_of([&] { (void)mc_mean_diff_test(bad, b, 10, 1); }) == ErrorCode::NonFinite);
}

TEST_CASE("property: swapping samples negates the difference and keeps p") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = draw(rng, 2 + rng.below(10), rng.normal());
        const auto b = draw(rng, 2 + rng.below(10), 0.0);
        const auto seed = rng.below(1000);
        const auto ab = mc_mean_diff_test(a, b, 200, seed);
        const auto ba = mc_mean_diff_test(b, a, 200, seed);
        CHECK(ab.observed_diff == doctest::Approx(-ba.observed_diff));
        CHECK(ab.p_value > 0.0);
        CHECK(ab.p_value <= 1.0);
        // Shifting both samples together changes nothing.
        std::vector<double> a2(a), b2(b);
        for (auto& v : a2) v += 10.0;
        for (auto& v : b2) v += 10.0;
        CHECK(mc_mean_diff_test(a2, b2, 200, seed).exceed_count == ab.exceed_count);
    }
}

TEST_CASE("bucket grid edges") {
    const BucketGrid grid{lexicon::kVadScale, 10};
    CHECK(grid.bucket_of(0.0) == 0);
    CHECK(grid.bucket_of(0.0999) == 0);
    CHECK(grid.bucket_of(0.1) == 1);
    CHECK(grid.bucket_of(1.0) == 9);
    CHECK(test::error_code_of([&] { (void)grid.bucket_of(1.01); }) == ErrorCode::OutOfScale);
}

TEST_CASE("valence matching takes min(target, source) per bucket without replacement") {
    const auto target = rated("t", {"t1", "t2", "t3", "t4"}, {0.05, 0.06, 0.55, 0.95});
    const auto source = rated("s", {"s1", "s2", "s3", "s4", "s5"}, {0.01, 0.51, 0.52, 0.53, 0.97});
    const auto m = valence_bucket_match(target, source, "Valence", 10, 3);
    CHECK(m.matched_counts[0] == 1);
    CHECK(m.matched_counts[5] == 1);
    CHECK(m.matched_counts[9] == 1);
    CHECK(m.total() == 3);
    CHECK(m.source_rows[0] == 0);
    CHECK((m.source_rows[1] >= 1 && m.source_rows[1] <= 3));
    CHECK(m.source_rows[2] == 4);

    const auto far = rated("f", {"f1", "f2"}, {0.3, 0.35});
    CHECK(test::error_code_of([&] { (void)valence_bucket_match(target, far, "Valence", 10, 1); }) ==
          ErrorCode::InsufficientMatch);
}

TEST_CASE("property: matched samples reproduce the matched histogram") {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> tw, sw;
        std::vector<double> tv, sv;
        const auto nt = 5 + rng.below(40);
        const auto ns = 5 + rng.below(40);
        for (std::size_t i = 0; i < nt; ++i) {
            tw.push_back("t" + std::to_string(i));
            tv.push_back(rng.uniform());
        }
        for (std::size_t i = 0; i < ns; ++i) {
            sw.push_back("s" + std::to_string(i));
            sv.push_back(std::min(1.0, rng.uniform() * 1.2));
        }
        const auto target = rated("t", tw, tv);
        const auto source = rated("s", sw, sv);
        const BucketGrid grid{lexicon::kVadScale, 10};
        try {
            const auto m = valence_bucket_match(target, source, "Valence", 10, trial);
            std::vector<std::size_t> seen(10, 0);
            std::vector<bool> used(ns, false);
            for (auto row : m.source_rows) {
                CHECK_FALSE(used[row]);
                used[row] = true;
                ++seen[grid.bucket_of(sv[row])];
            }
            for (std::size_t b = 0; b < 10; ++b) {
                CHECK(seen[b] == m.matched_counts[b]);
                CHECK(m.matched_counts[b] == std::min(m.target_counts[b], m.source_counts[b]));
            }
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InsufficientMatch);
        }
    }
}

TEST_CASE("matched comparison: identical feature distributions are not significant") {
    Rng rng(31);
    std::vector<std::string> tw, sw;
    std::vector<double> tv, sv;
    FeatureMatrix features;
    features.feature_names = {"Fearful"};
    std::vector<double> fvals;
    for (int i = 0; i < 60; ++i) {
        tw.push_back("t" + std::to_string(i));
        tv.push_back(rng.uniform());
        features.words.push_back(tw.back());
        fvals.push_back(3.0 + 2.0 * tv.back() + 0.3 * rng.normal());
    }
    for (int i = 0; i < 120; ++i) {
        sw.push_back("s" + std::to_string(i));
        sv.push_back(rng.uniform());
        features.words.push_back(sw.back());
        fvals.push_back(3.0 + 2.0 * sv.back() + 0.3 * rng.normal());
    }
    features.values = Eigen::Map<Eigen::VectorXd>(fvals.data(), static_cast<Eigen::Index>(fvals.size()));
    const auto target = rated("t", tw, tv);
    const auto source = rated("s", sw, sv);
    const auto null_result = matched_feature_comparison(target, source, features, 500, 10, 4);
    CHECK(null_result.features[0].p_value > 0.01);

    // Shift the target feature by a constant: strongly significant.
    for (int i = 0; i < 60; ++i) features.values(i, 0) += 1.0;
    const auto shifted = matched_feature_comparison(target, source, features, 500, 10, 4);
    CHECK(shifted.features[0].p_value == doctest::Approx(2.0 / 501.0));
    CHECK(shifted.features[0].target_mean - shifted.features[0].matched_source_mean > 0.8);

    const auto again = matched_feature_comparison(target, source, features, 500, 10, 4);
    CHECK(again.features[0].matched_source_mean == shifted.features[0].matched_source_mean);
    CHECK(format_comparison_csv(again).rfind("feature,target_mean,matched_source_mean,target_full_mean,p_value\n", 0) == 0);
}
