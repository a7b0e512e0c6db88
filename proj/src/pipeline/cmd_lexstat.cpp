#include "pipeline.hpp"

#include "affect/error.hpp"
#include "affect/feature_matrix.hpp"
#include "affect/log.hpp"
#include "affect/resampling.hpp"
#include "affect/rng.hpp"
#include "affect/text_io.hpp"

namespace affect::pipeline {

namespace {

struct Side {
    std::string name;
    const std::vector<std::string>* paths;
};

void compare_side(const RunConfig& config, StageWriter& writer, const Side& side, std::uint64_t side_seed,
                  const lexicon::RatingTable& table, const FeatureMatrix* matched) {
    std::vector<lexicon::RatedWordSet> sets;
    for (const auto& path : *side.paths) {
        try {
            sets.push_back(lexicon::join(load_list(path), table));
        } catch (...) {
            rethrow_in_stage("lexstat", path);
        }
    }
    if (sets.empty()) return;
    if (sets.size() == 1) log::warn("lexstat: only one {} list configured; reporting means without tests", side.name);

    const auto& features = table.feature_names;
    const auto n_features = features.size();
    std::string csv = "list,words,rated,coverage";
    for (const auto& f : features) csv += "," + f + "_mean";
    for (const auto& f : features) csv += "," + f + "_p";
    csv += "\n";

    auto json_lists = nlohmann::json::array();
    const auto& reference = sets.front();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto& set = sets[i];
        const auto means = lexicon::feature_means(set);
        csv += set.list_name + "," + std::to_string(set.words.size() + set.dropped.size()) + "," +
               std::to_string(set.words.size()) + "," + io::format_double(set.coverage());
        for (Eigen::Index f = 0; f < means.size(); ++f) csv += "," + io::format_double(means(f));
        nlohmann::json entry = {{"list", set.list_name},
                                {"rated", set.words.size()},
                                {"dropped", set.dropped},
                                {"coverage", set.coverage()},
                                {"means", std::vector<double>(means.data(), means.data() + means.size())}};
        if (i == 0) {
            for (std::size_t f = 0; f < n_features; ++f) csv += ",";
        } else {
            auto tests = nlohmann::json::object();
            for (std::size_t f = 0; f < n_features; ++f) {
                const Eigen::VectorXd a = reference.rows.col(static_cast<Eigen::Index>(f));
                const Eigen::VectorXd b = set.rows.col(static_cast<Eigen::Index>(f));
                const auto seed = derive_seed(side_seed, i * n_features + f);
                try {
                    const auto result = resampling::mc_mean_diff_test(
                        std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
                        std::span<const double>(b.data(), static_cast<std::size_t>(b.size())), config.resamples, seed);
                    csv += "," + io::format_double(result.p_value);
                    tests[features[f]] = result;
                } catch (...) {
                    rethrow_in_stage("lexstat", set.list_name + " vs " + reference.list_name);
                }
            }
            entry["tests_vs_reference"] = std::move(tests);
        }
        csv += "\n";
        json_lists.push_back(std::move(entry));
    }
    writer.write(side.name + ".csv", csv);
    writer.write_json(side.name + ".json", {{"side", side.name},
                                            {"reference", reference.list_name},
                                            {"features", features},
                                            {"test", "two-sided Monte-Carlo permutation of the mean difference"},
                                            {"lists", std::move(json_lists)}});

    if (matched == nullptr) return;
    for (std::size_t i = 1; i < sets.size(); ++i) {
        const auto seed = derive_seed(side_seed, 0x4D41'0000ULL + i);
        try {
            const auto comparison = resampling::matched_feature_comparison(
                reference, sets[i], *matched, config.repeats, config.buckets, seed, config.valence_feature);
            const auto stem = side.name + "_matched_" + sets[i].list_name;
            writer.write(stem + ".csv", resampling::format_comparison_csv(comparison));
            nlohmann::json j = comparison;
            j["target"] = reference.list_name;
            j["source"] = sets[i].list_name;
            writer.write_json(stem + ".json", j);
        } catch (...) {
            rethrow_in_stage("lexstat", config.matched_features);
        }
    }
}

}  // namespace

void cmd_lexstat(const RunConfig& config) {
    require_file(config.vad_table, "vad-table");
    if (config.positive_lists.empty() && config.negative_lists.empty()) {
        throw Error(ErrorCode::InvalidArgument, "lexstat needs --positive-lists or --negative-lists");
    }
    lexicon::RatingTable table;
    try {
        table = lexicon::load_rating_table(config.vad_table, lexicon::kVadScale);
    } catch (...) {
        rethrow_in_stage("lexstat", config.vad_table);
    }
    FeatureMatrix matched;
    const bool have_matched = !config.matched_features.empty();
    if (have_matched) {
        require_file(config.matched_features, "matched-features");
        try {
            matched = load_feature_matrix(config.matched_features);
        } catch (...) {
            rethrow_in_stage("lexstat", config.matched_features);
        }
    }

    StageWriter writer(config, "lexstat", "lexstat");
    const Side sides[] = {{"positive", &config.positive_lists}, {"negative", &config.negative_lists}};
    for (std::size_t s = 0; s < 2; ++s) {
        compare_side(config, writer, sides[s], derive_seed(writer.seed(), s), table, have_matched ? &matched : nullptr);
    }
    writer.extra()["two_sided"] = true;
    writer.extra()["resampled_side"] = "source";
    writer.finish();
}

}  // namespace affect::pipeline
