// Acceptance runner: one PASS/FAIL/SKIP line per criterion. Exit status is
// non-zero when any criterion fails.
#include "econ_support.hpp"
#include "test_support.hpp"

#include "affect/cli.hpp"
#include "affect/econ/adf.hpp"
#include "affect/econ/bootstrap.hpp"
#include "affect/econ/dynamics.hpp"
#include "affect/econ/johansen.hpp"
#include "affect/extrapolation.hpp"
#include "affect/lexicon.hpp"
#include "affect/log.hpp"
#include "affect/resampling.hpp"
#include "affect/sentiment.hpp"
#include "affect/stats.hpp"
#include "affect/structure.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

using namespace affect;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and simulation sizes.
constexpr double kPermutationTolerance = 0.02;
constexpr std::size_t kPermutationPairs = 24;
constexpr std::size_t kPermutationResamples = 10000;
constexpr double kLexiconTolerance = 0.02;
constexpr double kPlantedMinR = 0.99;
constexpr double kShuffledMaxMeanR = 0.05;
constexpr std::size_t kBinderFeatures = 65;
constexpr double kTwoComponentTarget = 0.88;
constexpr double kTwoComponentTolerance = 0.05;
constexpr std::size_t kSentimentCases = 1000;
constexpr double kFevdTolerance = 1e-8;
constexpr double kVarMapTolerance = 1e-10;
constexpr double kBruteForceTolerance = 1e-8;
constexpr double kJohansenMinRate = 0.85;
constexpr double kAdfMinSize = 0.90;
constexpr double kAdfMinPower = 0.95;
constexpr int kCoverageLow = 90;
constexpr int kCoverageHigh = 99;

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status;
    std::string detail;
};

Outcome pass_if(bool ok, std::string detail) { return {ok ? Status::Pass : Status::Fail, std::move(detail)}; }

std::optional<std::string> env(const char* name) {
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0') return std::nullopt;
    return std::string(value);
}

// ---------------------------------------------------------------- 1

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

Outcome permutation_oracle() {
    Rng rng(101);
    double worst = 0.0;
    for (std::size_t pair = 0; pair < kPermutationPairs; ++pair) {
        const auto na = 3 + rng.below(7);
        const auto nb = 3 + rng.below(7);
        std::vector<double> a(na), b(nb);
        const double shift = 0.25 * static_cast<double>(pair % 8);
        for (auto& v : a) v = 0.5 + 0.15 * rng.normal() + 0.15 * shift;
        for (auto& v : b) v = 0.5 + 0.15 * rng.normal();
        const double exact = exact_permutation_p(a, b);
        const auto mc = resampling::mc_mean_diff_test(a, b, kPermutationResamples, derive_seed(7, pair));
        worst = std::max(worst, std::abs(mc.p_value - exact));
    }
    return pass_if(worst <= kPermutationTolerance,
                   fmt::format("{} pairs, max |p_mc - p_exact| = {:.4f} (tol {})", kPermutationPairs, worst,
                               kPermutationTolerance));
}

// ---------------------------------------------------------------- 2

Outcome lexicon_means() {
    struct Expected {
        const char* env_var;
        double valence, arousal, dominance;
    };
    // Published list means on the NRC VAD table.
    const Expected expected[] = {
        {"AFFECT_HIV_POSITIVE", .757, .485, .675}, {"AFFECT_LM_POSITIVE", .852, .575, .764},
        {"AFFECT_RSS_APPROACH", .860, .651, .749}, {"AFFECT_HIV_NEGATIVE", .251, .605, .397},
        {"AFFECT_LM_NEGATIVE", .234, .593, .384},  {"AFFECT_RSS_AVOIDANCE", .178, .729, .357},
    };
    const auto vad = env("AFFECT_NRC_VAD");
    if (!vad) return {Status::Skip, "set AFFECT_NRC_VAD and any of AFFECT_{HIV,LM}_{POSITIVE,NEGATIVE}, AFFECT_RSS_{APPROACH,AVOIDANCE}"};
    const auto table = lexicon::load_rating_table(*vad, lexicon::kVadScale);
    std::size_t checked = 0;
    double worst = 0.0;
    std::string worst_list;
    for (const auto& e : expected) {
        const auto path = env(e.env_var);
        if (!path) continue;
        const auto set = lexicon::join(lexicon::load_word_list(*path), table);
        const auto means = lexicon::feature_means(set);
        const double targets[] = {e.valence, e.arousal, e.dominance};
        const char* names[] = {"Valence", "Arousal", "Dominance"};
        for (std::size_t f = 0; f < 3; ++f) {
            const auto idx = static_cast<Eigen::Index>(set.feature_index(names[f]));
            const double err = std::abs(means(idx) - targets[f]);
            if (err > worst) {
                worst = err;
                worst_list = std::string(e.env_var) + "/" + names[f];
            }
        }
        ++checked;
    }
    if (checked == 0) return {Status::Skip, "AFFECT_NRC_VAD set but no list variables"};
    return pass_if(worst <= kLexiconTolerance,
                   fmt::format("{} lists, max |mean - published| = {:.4f} at {} (tol {}; list/table versions matter)",
                               checked, worst, worst_list, kLexiconTolerance));
}

// ---------------------------------------------------------------- 3

struct PlantedData {
    lexicon::RatingTable ratings;
    features::EmbeddingTable embeddings;
};

PlantedData planted_binder(std::size_t n_words, Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> words;
    Eigen::MatrixXd vectors(static_cast<Eigen::Index>(n_words), dim);
    for (std::size_t i = 0; i < n_words; ++i) {
        words.push_back(fmt::format("w{:04d}", i));
        for (Eigen::Index d = 0; d < dim; ++d) vectors(static_cast<Eigen::Index>(i), d) = rng.normal();
    }
    Eigen::MatrixXd map(dim, static_cast<Eigen::Index>(kBinderFeatures));
    for (Eigen::Index i = 0; i < map.size(); ++i) map(i) = rng.normal() / std::sqrt(static_cast<double>(dim));
    Eigen::MatrixXd values = ((vectors * map).array() * 0.5 + 3.5).matrix();
    values = values.cwiseMax(0.0).cwiseMin(7.0);
    std::vector<std::string> names;
    for (std::size_t f = 0; f < kBinderFeatures; ++f) names.push_back(fmt::format("F{:02d}", f));
    return {lexicon::make_rating_table(names, lexicon::kBinderScale, words, values),
            features::EmbeddingTable(words, vectors)};
}

Outcome feature_extrapolation() {
    const auto data = planted_binder(2000, 8, 3);
    const features::NetworkConfig config;
    const auto cv = features::cross_validate(data.ratings, data.embeddings, config, 5, 11);
    const double min_r = cv.correlation.minCoeff();

    Rng rng(5);
    std::vector<std::size_t> order(data.ratings.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    Eigen::MatrixXd shuffled(data.ratings.values.rows(), data.ratings.values.cols());
    for (std::size_t i = 0; i < order.size(); ++i) {
        shuffled.row(static_cast<Eigen::Index>(i)) = data.ratings.values.row(static_cast<Eigen::Index>(order[i]));
    }
    const auto control_table =
        lexicon::make_rating_table(data.ratings.feature_names, lexicon::kBinderScale, data.ratings.words, shuffled);
    const auto control = features::cross_validate(control_table, data.embeddings, config, 5, 11);
    std::size_t finite = 0;
    double sum = 0.0;
    for (Eigen::Index f = 0; f < control.correlation.size(); ++f) {
        if (!std::isfinite(control.correlation(f))) continue;
        sum += control.correlation(f);
        ++finite;
    }
    const double mean_control = finite == 0 ? std::nan("") : sum / static_cast<double>(finite);
    return pass_if(min_r > kPlantedMinR && std::abs(mean_control) < kShuffledMaxMeanR,
                   fmt::format("planted min CV r = {:.4f} (> {}), shuffled mean r = {:+.4f} over {} features (|.| < {})",
                               min_r, kPlantedMinR, mean_control, finite, kShuffledMaxMeanR));
}

// ---------------------------------------------------------------- 4

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Relative path → bytes for every regular file under `root`.
std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) out[fs::relative(entry.path(), root).string()] = slurp(entry.path());
    }
    return out;
}

int quiet_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "-q");
    return run_cli(args);
}

Outcome structure_checks() {
    Rng rng(17);
    // Rank one: every feature an affine function of one latent.
    FeatureMatrix rank_one;
    rank_one.feature_names = structure::kPcaFeatures;
    rank_one.values.resize(50, 4);
    for (Eigen::Index i = 0; i < 50; ++i) {
        const double t = rng.normal();
        rank_one.values.row(i) << 3 + t, 3 - 0.5 * t, 2 + 2 * t, 4 + 0.1 * t;
        rank_one.words.push_back(fmt::format("r{}", i));
    }
    const auto pca1 = structure::pca_project(rank_one, structure::kPcaFeatures, 1);
    const bool rank_ok = std::abs(pca1.explained(0) - 1.0) < 1e-12;

    // Two blobs in Binder space, separated along the labeling features.
    FeatureMatrix blobs;
    blobs.feature_names = {"Fearful", "Surprised", "Cognition", "Drive", "Arousal"};
    blobs.values.resize(80, 5);
    std::vector<int> truth;
    for (Eigen::Index i = 0; i < 80; ++i) {
        const bool second = i % 2 == 1;
        truth.push_back(second ? 1 : 0);
        for (Eigen::Index f = 0; f < 5; ++f) blobs.values(i, f) = 3.5 + 0.3 * rng.normal();
        const double shift = second ? 1.5 : -1.5;
        blobs.values(i, 0) -= shift;
        blobs.values(i, 1) -= shift;
        blobs.values(i, 2) += shift;
        blobs.values(i, 3) += shift;
        blobs.words.push_back(fmt::format("b{:02d}", i));
    }
    const auto pca2 = structure::pca_project(blobs, structure::kPcaFeatures, 2);
    const auto clusters = structure::kmeans_cluster(pca2.scores, blobs.words, 2, structure::kDefaultRestarts, 9);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) agree += (clusters.labels[i] == 2) == (truth[i] == 1);
    const bool recovered = agree == truth.size() || agree == 0;

    // Byte-identical reruns of the split stage.
    test::TempDir dir;
    io::write_file(dir / "blobs.features.csv", format_feature_csv(blobs));
    std::string list;
    for (const auto& w : blobs.words) list += w + "\n";
    io::write_file(dir / "blobs.txt", list);
    bool identical = true;
    for (const char* run : {"a", "b"}) {
        identical &= quiet_cli({"--seed", "3", "--out", (dir / run).string(), "--split-list", (dir / "blobs.txt").string(),
                                "--feature-matrix", (dir / "blobs.features.csv").string(), "split"}) == 0;
    }
    identical = identical && tree(dir / "a") == tree(dir / "b") && !tree(dir / "a").empty();

    std::string conditional = "88% check SKIP (set AFFECT_AVOIDANCE_FEATURES)";
    bool conditional_ok = true;
    if (const auto path = env("AFFECT_AVOIDANCE_FEATURES")) {
        const auto matrix = load_feature_matrix(*path);
        const auto pca = structure::pca_project(matrix, structure::kPcaFeatures, 2);
        const double two = pca.explained.sum();
        conditional_ok = std::abs(two - kTwoComponentTarget) <= kTwoComponentTolerance;
        conditional = fmt::format("two-component variance {:.3f} vs {} (tol {})", two, kTwoComponentTarget,
                                  kTwoComponentTolerance);
    }
    return pass_if(rank_ok && recovered && identical && conditional_ok,
                   fmt::format("rank-1 PC1 share {:.12f}, blobs {}/{} recovered, split reruns {}; {}",
                               pca1.explained(0), std::max(agree, truth.size() - agree), truth.size(),
                               identical ? "identical" : "DIFFER", conditional));
}

// ---------------------------------------------------------------- 5

std::vector<sentiment::SentimentSeries> build_from(const std::string& jsonl,
                                                   const std::vector<sentiment::IndexDefinition>& defs) {
    std::istringstream in(jsonl);
    return sentiment::build_monthly_indices(in, defs, {});
}

Outcome sentiment_checks() {
    const std::vector<std::string> p{"rally", "gain"};
    const std::vector<std::string> n{"fear", "slump"};
    const auto pos = lexicon::WordList::from_tokens("p", p);
    const auto neg = lexicon::WordList::from_tokens("n", n);
    // 2020-02: (2-1)/5 and (0-2)/4 -> mean -0.15; 2020-03: 1/2.
    const std::string fixture =
        "{\"id\":\"1\",\"date\":\"2020-02-03\",\"text\":\"Rally and gain despite fear\"}\n"
        "{\"id\":\"2\",\"date\":\"2020-02-17\",\"text\":\"fear of a slump\"}\n"
        "{\"id\":\"3\",\"date\":\"2020-03-01T09:30:00Z\",\"text\":\"Gain, today.\"}\n";
    const auto hand = build_from(fixture, {{"x", pos, neg}})[0];
    const bool hand_ok = hand.values == std::vector<double>{(0.2 - 0.5) / 2.0, 0.5} &&
                         hand.months == std::vector<YearMonth>{{2020, 2}, {2020, 3}};

    Rng rng(23);
    const std::vector<std::string> vocab{"rally", "gain", "fear", "slump", "bank", "rate", "calm", "boom", "bust", "news"};
    std::size_t failures = 0;
    for (std::size_t c = 0; c < kSentimentCases; ++c) {
        std::vector<std::string> pw, nw;
        for (const auto& w : vocab) {
            const auto r = rng.below(4);
            if (r == 0 || r == 2) pw.push_back(w);
            if (r == 1 || r == 2) nw.push_back(w);
        }
        if (pw.empty()) pw.push_back("rally");
        if (nw.empty()) nw.push_back("fear");
        const auto plist = lexicon::WordList::from_tokens("p", pw);
        const auto nlist = lexicon::WordList::from_tokens("n", nw);
        std::vector<std::string> lines;
        const auto docs = 1 + rng.below(20);
        for (std::size_t d = 0; d < docs; ++d) {
            std::string text;
            for (std::size_t t = 0, len = 1 + rng.below(25); t < len; ++t) text += vocab[rng.below(vocab.size())] + " ";
            lines.push_back(fmt::format("{{\"id\":\"{}\",\"date\":\"2019-{:02d}-{:02d}\",\"text\":\"{}\"}}\n", d,
                                        1 + rng.below(6), 1 + rng.below(28), text));
        }
        auto join = [](const std::vector<std::string>& v) { return std::accumulate(v.begin(), v.end(), std::string()); };
        const auto forward = build_from(join(lines), {{"f", plist, nlist}})[0];
        const auto swapped = build_from(join(lines), {{"s", nlist, plist}})[0];
        rng.shuffle(lines);
        const auto shuffled = build_from(join(lines), {{"f", plist, nlist}})[0];
        bool ok = forward.months == swapped.months && forward.months == shuffled.months;
        for (std::size_t i = 0; ok && i < forward.size(); ++i) {
            ok = forward.values[i] == -swapped.values[i] && forward.values[i] == shuffled.values[i];
        }
        failures += !ok;
    }
    return pass_if(hand_ok && failures == 0,
                   fmt::format("hand fixture {}, {} randomized corpora with {} negation/order failures",
                               hand_ok ? "exact" : "MISMATCH", kSentimentCases, failures));
}

// ---------------------------------------------------------------- 6

struct SubResult {
    bool ok;
    std::string text;
};

SubResult fevd_sums() {
    Rng rng(31);
    double worst = 0.0;
    for (int m = 0; m < 100; ++m) {
        const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.below(5));
        const auto var = test::random_stable_var(rng, k, 1 + rng.below(4));
        const auto irf = econ::impulse_response(var, econ::cholesky_impact(test::random_spd(rng, k)), test::names(k), 24);
        for (const auto& share : econ::fevd(irf, 24).share) {
            worst = std::max(worst, (share.rowwise().sum().array() - 1.0).abs().maxCoeff());
        }
    }
    return {worst <= kFevdTolerance, fmt::format("(a) FEVD row-sum err {:.1e}", worst)};
}

SubResult impact_columns() {
    Rng rng(37);
    bool exact = true;
    for (int m = 0; m < 100; ++m) {
        const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.below(5));
        const auto var = test::random_stable_var(rng, k, 1 + rng.below(3));
        const auto sigma = test::random_spd(rng, k);
        const auto irf = econ::impulse_response(var, econ::cholesky_impact(sigma), test::names(k), 3);
        const Eigen::MatrixXd l = sigma.llt().matrixL();
        exact &= irf.response[0] == l;
    }
    return {exact, fmt::format("(b) horizon 0 {} Cholesky factor", exact ? "==" : "!=")};
}

/// Random levels data mixing I(1) and stationary variables.
Eigen::MatrixXd mixed_levels(Rng& rng, Eigen::Index k, Eigen::Index t) {
    const auto var = test::random_stable_var(rng, k, 2, 0.8);
    Eigen::MatrixXd y = test::simulate_var(rng, var, test::random_spd(rng, k), t);
    for (Eigen::Index c = 0; c + 1 < k; c += 2) {
        double level = 0.0;
        for (Eigen::Index i = 0; i < t; ++i) y(i, c) = level += y(i, c);
    }
    return y;
}

SubResult var_mapping() {
    Rng rng(41);
    double worst = 0.0;
    for (int m = 0; m < 100; ++m) {
        const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.below(4));
        const auto y = mixed_levels(rng, k, 300);
        std::vector<bool> stationary(static_cast<std::size_t>(k));
        for (Eigen::Index c = 0; c < k; ++c) stationary[static_cast<std::size_t>(c)] = c % 2 == 1 || c == k - 1;
        const auto n_nonstat = std::count(stationary.begin(), stationary.end(), false);
        const std::size_t rank = n_nonstat >= 2 ? rng.below(static_cast<std::size_t>(n_nonstat)) : 0;
        const auto model = econ::estimate_vecm(y, test::names(k), {rank, stationary, 1 + rng.below(4)});
        const auto a = econ::vecm_fitted(model, y);
        const auto b = econ::vecm_to_var(model).fitted(y);
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
    return {worst <= kVarMapTolerance, fmt::format("(c) VECM/VAR fitted diff {:.1e}", worst)};
}

SubResult brute_force() {
    Rng rng(43);
    double worst = 0.0;
    for (int m = 0; m < 50; ++m) {
        const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.below(4));
        const auto y = mixed_levels(rng, k, 300);
        std::vector<bool> stationary(static_cast<std::size_t>(k));
        for (Eigen::Index c = 0; c < k; ++c) stationary[static_cast<std::size_t>(c)] = c % 2 == 1 || c == k - 1;
        const auto n_nonstat = std::count(stationary.begin(), stationary.end(), false);
        const std::size_t rank = n_nonstat >= 2 ? 1 : 0;
        const auto model = econ::estimate_vecm(y, test::names(k), {rank, stationary, 1 + rng.below(4)});
        const auto irf = econ::impulse_response(model, 24);
        const auto impact = econ::cholesky_impact(model.sigma);
        for (Eigen::Index j = 0; j < k; ++j) {
            const auto path = test::brute_force_response(model, impact.col(j), 24);
            for (std::size_t h = 0; h <= 24; ++h) {
                const double scale = std::max(1.0, path.row(static_cast<Eigen::Index>(h)).cwiseAbs().maxCoeff());
                worst = std::max(worst, (irf.response[h].col(j) - path.row(static_cast<Eigen::Index>(h)).transpose())
                                                .cwiseAbs()
                                                .maxCoeff() / scale);
            }
        }
    }
    return {worst <= kBruteForceTolerance, fmt::format("(d) IRF vs shocked path {:.1e}", worst)};
}

/// Planted rank 1: y1 = x + u, y2 = x, x a random walk with the given drift, u AR(1).
std::size_t johansen_rank_one_hits(double drift, std::uint64_t seed) {
    std::size_t hits = 0;
    for (std::size_t s = 0; s < 200; ++s) {
        Rng rng(derive_seed(seed, s));
        Eigen::MatrixXd y(500, 2);
        double trend = 0.0;
        double gap = 0.0;
        for (Eigen::Index t = 0; t < 500; ++t) {
            trend += drift + rng.normal();
            gap = 0.5 * gap + rng.normal();
            y.row(t) << trend + gap, trend;
        }
        hits += econ::johansen_trace(y, 2).rank == 1;
    }
    return hits;
}

SubResult johansen_recovery() {
    // The unrestricted-constant trace test presumes drifting trends; the
    // driftless count is reported alongside.
    const auto hits = johansen_rank_one_hits(0.5, 47);
    const auto driftless = johansen_rank_one_hits(0.0, 47);
    const double rate = static_cast<double>(hits) / 200.0;
    return {rate >= kJohansenMinRate,
            fmt::format("(e) Johansen rank-1 {}/200 with drifting trend ({}/200 driftless)", hits, driftless)};
}

SubResult adf_size_power() {
    std::size_t kept = 0;
    std::size_t rejected = 0;
    for (std::size_t s = 0; s < 200; ++s) {
        Rng rng(derive_seed(53, s));
        Eigen::VectorXd walk(500);
        Eigen::VectorXd noise(500);
        double level = 0.0;
        for (Eigen::Index t = 0; t < 500; ++t) {
            walk(t) = level += rng.normal();
            noise(t) = rng.normal();
        }
        kept += !econ::adf_test(walk).rejected_5pct;
        rejected += econ::adf_test(noise).rejected_5pct;
    }
    const double size_rate = static_cast<double>(kept) / 200.0;
    const double power = static_cast<double>(rejected) / 200.0;
    return {size_rate >= kAdfMinSize && power >= kAdfMinPower,
            fmt::format("(f) ADF walk kept {}/200, noise rejected {}/200", kept, rejected)};
}

SubResult hall_coverage() {
    int covered = 0;
    std::size_t dropped = 0;
    for (std::size_t d = 0; d < 100; ++d) {
        Rng rng(derive_seed(59, d));
        const auto var = test::random_stable_var(rng, 2, 1, 0.8);
        const auto sigma = test::random_spd(rng, 2);
        const auto y = test::simulate_var(rng, var, sigma, 250);
        const auto model = econ::estimate_vecm(y, test::names(2), {0, {true, true}, 1});
        econ::BootstrapOptions options;
        options.replications = 499;
        options.horizon = 5;
        options.level = 0.95;
        options.seed = derive_seed(61, d);
        const auto irf = econ::hall_bootstrap_irf(model, y, options);
        const Eigen::MatrixXd l = sigma.llt().matrixL();
        const auto truth = test::brute_force_response(var, l.col(1), 5);
        const double value = truth(5, 0);
        covered += irf.bands->lower[5](0, 1) <= value && value <= irf.bands->upper[5](0, 1);
        dropped += irf.bands->dropped;
    }
    return {covered >= kCoverageLow && covered <= kCoverageHigh,
            fmt::format("(g) Hall 95% bands cover true h=5 response in {}/100 DGPs ({} replications dropped)", covered,
                        dropped)};
}

Outcome econometrics() {
    const SubResult parts[] = {fevd_sums(),         impact_columns(), var_mapping(), brute_force(),
                               johansen_recovery(), adf_size_power(), hall_coverage()};
    bool ok = true;
    std::string detail;
    for (const auto& p : parts) {
        ok &= p.ok;
        detail += (detail.empty() ? "" : "; ") + p.text + (p.ok ? "" : " [FAIL]");
    }
    return {ok ? Status::Pass : Status::Fail, detail};
}

// ---------------------------------------------------------------- 7

Outcome pipeline_determinism() {
    const fs::path fixture = AFFECT_FIXTURE_DIR;
    test::TempDir dir;
    const auto previous = fs::current_path();
    fs::current_path(fixture);
    const std::vector<std::vector<std::string>> stages{
        {"lexstat"},         {"features", "train"}, {"features", "predict"}, {"features", "crossval"},
        {"split"},           {"index"},             {"econ", "adf"},         {"econ", "johansen"},
        {"econ", "vecm"},    {"econ", "irf"},       {"econ", "fevd"},
    };
    std::string failed;
    for (const char* run : {"run1", "run2"}) {
        for (const auto& stage : stages) {
            std::vector<std::string> args{"--config", "run.toml", "--out", (dir / run).string()};
            args.insert(args.end(), stage.begin(), stage.end());
            if (quiet_cli(args) != 0 && failed.empty()) failed = fmt::format("{} {}", run, fmt::join(stage, " "));
        }
    }
    fs::current_path(previous);
    if (!failed.empty()) return {Status::Fail, "stage failed: " + failed};
    const auto a = tree(dir / "run1");
    const auto b = tree(dir / "run2");
    std::size_t bytes = 0;
    for (const auto& [name, content] : a) bytes += content.size();
    std::string first_diff;
    for (const auto& [name, content] : a) {
        const auto it = b.find(name);
        if (it == b.end() || it->second != content) {
            first_diff = name;
            break;
        }
    }
    const bool same = a.size() == b.size() && first_diff.empty();
    return pass_if(same, fmt::format("{} stages x 2 runs, {} files / {} bytes {}", stages.size(), a.size(), bytes,
                                     same ? "byte-identical" : "differ at " + first_diff));
}

}  // namespace

int main() {
    log::threshold() = log::Level::Quiet;
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "permutation-oracle", permutation_oracle}, {2, "lexicon-means", lexicon_means},
        {3, "feature-extrapolation", feature_extrapolation}, {4, "pca-kmeans", structure_checks},
        {5, "sentiment-index", sentiment_checks},      {6, "econometrics", econometrics},
        {7, "pipeline-determinism", pipeline_determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {Status::Fail, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const char* tag = outcome.status == Status::Pass ? "PASS" : outcome.status == Status::Fail ? "FAIL" : "SKIP";
        failures += outcome.status == Status::Fail;
        fmt::print("{} {} {}: {} [{:.1f}s]\n", tag, c.id, c.name, outcome.detail, seconds);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
