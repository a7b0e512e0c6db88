#include "pipeline.hpp"

#include "affect/error.hpp"
#include "affect/rng.hpp"

#include <fmt/format.h>

namespace affect::pipeline {

nlohmann::json config_json(const RunConfig& c) {
    return {
        {"seed", c.seed},
        {"lexstat",
         {{"vad_table", c.vad_table},
          {"positive_lists", c.positive_lists},
          {"negative_lists", c.negative_lists},
          {"matched_features", c.matched_features},
          {"valence_feature", c.valence_feature},
          {"resamples", c.resamples},
          {"repeats", c.repeats},
          {"buckets", c.buckets}}},
        {"features",
         {{"binder_table", c.binder_table},
          {"embeddings", c.embeddings},
          {"bundle", c.bundle},
          {"predict_lists", c.predict_lists},
          {"network", c.network},
          {"folds", c.folds},
          {"min_overlap", c.min_overlap}}},
        {"split",
         {{"split_list", c.split_list},
          {"feature_matrix", c.feature_matrix},
          {"pca_features", c.pca_features},
          {"correlation_features", c.correlation_features},
          {"label_features", c.label_features},
          {"components", c.components},
          {"restarts", c.restarts},
          {"label_override", c.label_override}}},
        {"index",
         {{"corpus", c.corpus},
          {"indices", c.indices},
          {"tags", c.tags},
          {"aggregation", c.aggregation},
          {"negative_only", c.negative_only}}},
        {"econ",
         {{"panel", c.panel},
          {"log_columns", c.log_columns},
          {"stationary_columns", c.stationary_columns},
          {"sentiment_series", c.sentiment_series},
          {"sentiment_name", c.sentiment_name},
          {"sentiment_column", c.sentiment_column},
          {"adf_max_lag", c.adf_max_lag},
          {"var_max_lag", c.var_max_lag},
          {"lag", c.lag},
          {"rank", c.rank},
          {"horizon", c.horizon},
          {"replications", c.replications},
          {"level", c.level},
          {"shock", c.shock}}},
    };
}

std::string config_hash(const RunConfig& config) {
    return fmt::format("{:016x}", fnv1a64(config_json(config).dump()));
}

void require_file(const std::string& path, const std::string& option) {
    if (path.empty()) throw Error(ErrorCode::InvalidArgument, "--" + option + " is required for this stage");
    if (!std::filesystem::is_regular_file(path)) {
        throw Error(ErrorCode::MissingFile, "--" + option + ": no such file '" + path + "'");
    }
}

void validate_common(const RunConfig& c) {
    auto positive = [](std::size_t value, const char* name) {
        if (value == 0) throw Error(ErrorCode::InvalidArgument, fmt::format("--{} must be positive", name));
    };
    positive(c.resamples, "resamples");
    positive(c.repeats, "repeats");
    positive(c.buckets, "buckets");
    positive(c.folds, "folds");
    positive(c.components, "components");
    positive(c.restarts, "restarts");
    positive(c.adf_max_lag, "adf-max-lag");
    positive(c.var_max_lag, "var-max-lag");
    positive(c.horizon, "horizon");
    positive(c.network.hidden_units, "hidden-units");
    positive(c.network.max_epochs, "max-epochs");
    positive(c.network.batch_size, "batch-size");
    if (!(c.level > 0.0 && c.level < 1.0)) throw Error(ErrorCode::InvalidArgument, "--level must lie in (0, 1)");
    if (c.rank < -1) throw Error(ErrorCode::InvalidArgument, "--rank must be -1 (select) or non-negative");
    if (c.aggregation != "mean" && c.aggregation != "length-weighted") {
        throw Error(ErrorCode::InvalidArgument, "--aggregation must be 'mean' or 'length-weighted'");
    }
    if (c.label_override != "none" && c.label_override != "cluster1" && c.label_override != "cluster2") {
        throw Error(ErrorCode::InvalidArgument, "--label-override must be none, cluster1 or cluster2");
    }
}

}  // namespace affect::pipeline
