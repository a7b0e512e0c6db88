#include "pipeline.hpp"

#include "affect/error.hpp"
#include "affect/sentiment.hpp"

#include <fstream>

namespace affect::pipeline {

namespace {

sentiment::IndexDefinition parse_index(const std::string& spec, bool negative_only) {
    const auto eq = spec.find('=');
    const auto colon = spec.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || eq == 0 || colon == std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "--index expects name=positive_list:negative_list, got '" + spec + "'");
    }
    sentiment::IndexDefinition def;
    def.name = spec.substr(0, eq);
    const auto positive = spec.substr(eq + 1, colon - eq - 1);
    const auto negative = spec.substr(colon + 1);
    if (!positive.empty() || !negative_only) def.positive = load_list(positive);
    def.negative = load_list(negative);
    return def;
}

}  // namespace

void cmd_index(const RunConfig& config) {
    require_file(config.corpus, "corpus");
    if (config.indices.empty()) throw Error(ErrorCode::InvalidArgument, "index needs at least one --index definition");
    std::vector<sentiment::IndexDefinition> defs;
    for (const auto& spec : config.indices) {
        try {
            defs.push_back(parse_index(spec, config.negative_only));
        } catch (...) {
            rethrow_in_stage("index", spec);
        }
        for (std::size_t i = 0; i + 1 < defs.size(); ++i) {
            if (defs[i].name == defs.back().name) throw Error(ErrorCode::InvalidArgument, "duplicate index name " + defs[i].name);
        }
    }

    sentiment::IndexOptions options;
    options.tags = config.tags;
    options.aggregation = config.aggregation == "mean" ? sentiment::Aggregation::Mean : sentiment::Aggregation::LengthWeighted;
    options.mode = config.negative_only ? sentiment::IndexMode::NegativeOnly : sentiment::IndexMode::Balance;

    std::ifstream corpus(config.corpus);
    sentiment::IndexStats stats;
    std::vector<sentiment::SentimentSeries> series;
    try {
        series = sentiment::build_monthly_indices(corpus, defs, options, &stats);
    } catch (...) {
        rethrow_in_stage("index", config.corpus);
    }

    StageWriter writer(config, "index", "index");
    auto lists = nlohmann::json::object();
    for (std::size_t i = 0; i < series.size(); ++i) {
        writer.write(series[i].name + ".csv", sentiment::format_series_csv(series[i]));
        lists[defs[i].name] = {
            {"positive", config.negative_only ? nlohmann::json(nullptr) : nlohmann::json(list_hash(defs[i].positive))},
            {"negative", list_hash(defs[i].negative)},
            {"conflicting_tokens", stats.conflicts[i]},
        };
    }
    writer.extra()["tokenizer"] = sentiment::kTokenizerId;
    writer.extra()["aggregation"] = sentiment::to_string(options.aggregation);
    writer.extra()["mode"] = sentiment::to_string(options.mode);
    writer.extra()["tags"] = options.tags;
    writer.extra()["list_hashes"] = std::move(lists);
    writer.extra()["records"] = stats.records;
    writer.extra()["filtered_out"] = stats.filtered_out;
    writer.extra()["zero_length"] = stats.zero_length;
    writer.extra()["scored"] = stats.scored;
    writer.finish();
}

}  // namespace affect::pipeline
