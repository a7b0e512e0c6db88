#pragma once

#include "affect/econ/panel.hpp"
#include "affect/lexicon.hpp"
#include "affect/regressor.hpp"
#include "affect/sentiment.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace affect::pipeline {

/// Every stage parameter in one place. Paths are taken as given; the
/// output directory never enters the config hash.
struct RunConfig {
    std::uint64_t seed = 0;
    std::filesystem::path out = "out";

    // lexstat
    std::string vad_table;
    std::vector<std::string> positive_lists;  // first entry is the reference list
    std::vector<std::string> negative_lists;
    std::string matched_features;  // optional FeatureMatrix CSV for valence-matched comparisons
    std::string valence_feature = "Valence";
    std::size_t resamples = 10000;
    std::size_t repeats = 2000;
    std::size_t buckets = 10;

    // features
    std::string binder_table;
    std::string embeddings;
    std::string bundle;                     // default <out>/features/bundle.json
    std::vector<std::string> predict_lists;  // default: every configured list
    features::NetworkConfig network;
    std::size_t folds = 5;
    std::size_t min_overlap = 100;

    // split
    std::string split_list;
    std::string feature_matrix;  // default <out>/features/<list>.features.csv
    std::vector<std::string> pca_features{"Fearful", "Surprised", "Cognition", "Drive"};
    std::vector<std::string> correlation_features{"Fearful", "Surprised", "Cognition", "Drive", "Arousal"};
    std::vector<std::string> label_features{"Cognition", "Drive"};
    std::size_t components = 2;
    std::size_t restarts = 100;
    std::string label_override = "none";  // none | cluster1 | cluster2

    // index
    std::string corpus;
    std::vector<std::string> indices;  // name=positive_path:negative_path
    std::vector<std::string> tags;
    std::string aggregation = "mean";  // mean | length-weighted
    bool negative_only = false;

    // econ
    std::string panel;
    std::vector<std::string> log_columns;
    std::vector<std::string> stationary_columns;
    std::string sentiment_series;  // series CSV appended as the last column
    std::string sentiment_name;    // column name; alone, reads <out>/index/<name>.csv
    std::string sentiment_column;  // panel column to move last when no series is given
    std::size_t adf_max_lag = 12;
    std::size_t var_max_lag = 8;
    std::size_t lag = 0;  // 0 selects by the Schwarz criterion
    int rank = -1;        // -1 uses the Johansen trace selection
    std::size_t horizon = 24;
    std::size_t replications = 1000;
    double level = 0.95;
    std::string shock;  // default: last panel column

    int verbosity = 1;
};

[[nodiscard]] nlohmann::json config_json(const RunConfig& config);
[[nodiscard]] std::string config_hash(const RunConfig& config);

/// Checks counts, ranges and that the named paths exist. Throws Config errors.
void require_file(const std::string& path, const std::string& option);
void validate_common(const RunConfig& config);

/// Collects a stage's output files and writes them with a metadata sidecar
/// `<stage>/<name>.meta.json` recording hash, stage seed and version.
class StageWriter {
public:
    StageWriter(const RunConfig& config, std::string stage, std::string name);

    [[nodiscard]] std::filesystem::path dir() const { return dir_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    void write(const std::string& file, const std::string& content);
    void write_json(const std::string& file, const nlohmann::json& content);
    nlohmann::json& extra() { return extra_; }
    void finish();

private:
    const RunConfig& config_;
    std::string stage_;
    std::string name_;
    std::filesystem::path dir_;
    std::uint64_t seed_;
    std::vector<std::string> files_;
    nlohmann::json extra_ = nlohmann::json::object();
};

/// Stage-level error context: "<stage>: <input>: <message>".
[[noreturn]] void rethrow_in_stage(const std::string& stage, const std::string& input);

[[nodiscard]] lexicon::WordList load_list(const std::string& path);
[[nodiscard]] std::string list_hash(const lexicon::WordList& list);

[[nodiscard]] econ::MacroPanel load_econ_panel(const RunConfig& config);

void cmd_lexstat(const RunConfig& config);
void cmd_features(const RunConfig& config, const std::string& action);
void cmd_split(const RunConfig& config);
void cmd_index(const RunConfig& config);
void cmd_econ(const RunConfig& config, const std::string& action);

}  // namespace affect::pipeline
