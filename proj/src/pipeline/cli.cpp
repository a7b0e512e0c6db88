#include "affect/cli.hpp"

#include "pipeline.hpp"

#include "affect/error.hpp"
#include "affect/log.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

namespace affect {

namespace {

void add_options(CLI::App& app, pipeline::RunConfig& c) {
    app.set_config("--config", "", "Key-value run configuration (TOML/INI); flags override file values");
    app.add_option("--seed", c.seed, "Global seed; stage seeds derive from it")->capture_default_str();
    app.add_option("--out", c.out, "Output directory")->capture_default_str();
    app.add_flag_callback("-q,--quiet", [&c] { c.verbosity = 0; }, "Suppress warnings");
    app.add_flag_callback("-v,--verbose", [&c] { c.verbosity = 2; }, "Report progress");

    auto* lex = "lexstat";
    app.add_option("--vad-table", c.vad_table, "VAD rating table (scale 0-1)")->group(lex);
    app.add_option("--positive-lists", c.positive_lists, "Positive-side word-lists, reference first")->group(lex);
    app.add_option("--negative-lists", c.negative_lists, "Negative-side word-lists, reference first")->group(lex);
    app.add_option("--matched-features", c.matched_features, "Feature matrix for valence-matched comparisons")->group(lex);
    app.add_option("--valence-feature", c.valence_feature, "Valence column of the VAD table")->group(lex)->capture_default_str();
    app.add_option("--resamples", c.resamples, "Permutation-test resamples")->group(lex)->capture_default_str();
    app.add_option("--repeats", c.repeats, "Valence-matching repeats")->group(lex)->capture_default_str();
    app.add_option("--buckets", c.buckets, "Valence buckets")->group(lex)->capture_default_str();

    auto* feat = "features";
    app.add_option("--binder-table", c.binder_table, "Binder rating table (scale 0-7)")->group(feat);
    app.add_option("--embeddings", c.embeddings, "Word vectors in text format")->group(feat);
    app.add_option("--bundle", c.bundle, "Regressor bundle path (default <out>/features/bundle.json)")->group(feat);
    app.add_option("--predict-lists", c.predict_lists, "Word-lists to predict (default: every configured list)")->group(feat);
    app.add_option("--hidden-units", c.network.hidden_units)->group(feat)->capture_default_str();
    app.add_option("--max-epochs", c.network.max_epochs)->group(feat)->capture_default_str();
    app.add_option("--patience", c.network.patience)->group(feat)->capture_default_str();
    app.add_option("--validation-fraction", c.network.validation_fraction)->group(feat)->capture_default_str();
    app.add_option("--learning-rate", c.network.learning_rate)->group(feat)->capture_default_str();
    app.add_option("--batch-size", c.network.batch_size)->group(feat)->capture_default_str();
    app.add_option("--folds", c.folds, "Cross-validation folds")->group(feat)->capture_default_str();
    app.add_option("--min-overlap", c.min_overlap, "Minimum rated words with vectors")->group(feat)->capture_default_str();

    auto* split = "split";
    app.add_option("--split-list", c.split_list, "Word-list to split")->group(split);
    app.add_option("--feature-matrix", c.feature_matrix, "Predicted features for the split list")->group(split);
    app.add_option("--pca-features", c.pca_features)->group(split)->delimiter(',')->capture_default_str();
    app.add_option("--correlation-features", c.correlation_features)->group(split)->delimiter(',')->capture_default_str();
    app.add_option("--label-features", c.label_features)->group(split)->delimiter(',')->capture_default_str();
    app.add_option("--components", c.components)->group(split)->capture_default_str();
    app.add_option("--restarts", c.restarts, "k-means restarts")->group(split)->capture_default_str();
    app.add_option("--label-override", c.label_override, "none | cluster1 | cluster2 (cluster that becomes Alt1)")
        ->group(split)
        ->capture_default_str();

    auto* index = "index";
    app.add_option("--corpus", c.corpus, "JSON-lines news corpus")->group(index);
    app.add_option("--index", c.indices, "name=positive_list:negative_list (repeatable)")->group(index);
    app.add_option("--tags", c.tags, "Keep articles carrying any of these tags")->group(index)->delimiter(',');
    app.add_option("--aggregation", c.aggregation, "mean | length-weighted")->group(index)->capture_default_str();
    app.add_flag("--negative-only", c.negative_only, "Score only negative-list hits")->group(index);

    auto* econ = "econ";
    app.add_option("--panel", c.panel, "Monthly macro panel CSV")->group(econ);
    app.add_option("--log-columns", c.log_columns)->group(econ)->delimiter(',');
    app.add_option("--stationary-columns", c.stationary_columns, "Variables entering through identity relations")
        ->group(econ)
        ->delimiter(',');
    app.add_option("--sentiment-series", c.sentiment_series, "Series CSV appended as the last variable")->group(econ);
    app.add_option("--sentiment-name", c.sentiment_name)->group(econ);
    app.add_option("--sentiment-column", c.sentiment_column, "Panel column moved last")->group(econ);
    app.add_option("--adf-max-lag", c.adf_max_lag)->group(econ)->capture_default_str();
    app.add_option("--var-max-lag", c.var_max_lag)->group(econ)->capture_default_str();
    app.add_option("--lag", c.lag, "Levels lag; 0 selects by Schwarz criterion")->group(econ)->capture_default_str();
    app.add_option("--rank", c.rank, "Cointegrating rank; -1 uses the trace test")->group(econ)->capture_default_str();
    app.add_option("--horizon", c.horizon)->group(econ)->capture_default_str();
    app.add_option("--replications", c.replications, "Bootstrap replications; 0 disables bands")
        ->group(econ)
        ->capture_default_str();
    app.add_option("--level", c.level, "Band confidence level")->group(econ)->capture_default_str();
    app.add_option("--shock", c.shock, "Shocked variable (default: last)")->group(econ);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    pipeline::RunConfig config;
    CLI::App app{"Affect lexicon analysis and sentiment econometrics pipeline", "affect"};
    app.set_version_flag("--version", AFFECT_VERSION);
    add_options(app, config);
    app.require_subcommand(1);
    app.allow_config_extras(CLI::config_extras_mode::error);

    auto* lexstat = app.add_subcommand("lexstat", "Compare word-lists on VAD ratings")->fallthrough();
    auto* features = app.add_subcommand("features", "Extrapolate Binder features from embeddings")->fallthrough();
    features->require_subcommand(1);
    for (const char* action : {"train", "predict", "crossval"}) features->add_subcommand(action)->fallthrough();
    auto* split = app.add_subcommand("split", "PCA + k-means split of a word-list")->fallthrough();
    auto* index = app.add_subcommand("index", "Monthly sentiment indices from a corpus")->fallthrough();
    auto* econ = app.add_subcommand("econ", "Unit roots, cointegration, VECM, IRF and FEVD")->fallthrough();
    econ->require_subcommand(1);
    for (const char* action : {"adf", "johansen", "vecm", "irf", "fevd"}) econ->add_subcommand(action)->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorCategory::Config);
    }

    log::threshold() = static_cast<log::Level>(std::clamp(config.verbosity, 0, 2));
    try {
        pipeline::validate_common(config);
        if (lexstat->parsed()) pipeline::cmd_lexstat(config);
        else if (features->parsed()) pipeline::cmd_features(config, features->get_subcommands().front()->get_name());
        else if (split->parsed()) pipeline::cmd_split(config);
        else if (index->parsed()) pipeline::cmd_index(config);
        else if (econ->parsed()) pipeline::cmd_econ(config, econ->get_subcommands().front()->get_name());
    } catch (const Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return static_cast<int>(ErrorCategory::Data);
    }
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace affect
