#include "pipeline.hpp"

#include "affect/embeddings.hpp"
#include "affect/error.hpp"
#include "affect/extrapolation.hpp"
#include "affect/feature_matrix.hpp"
#include "affect/log.hpp"
#include "affect/text_io.hpp"

#include <unordered_set>

namespace affect::pipeline {

namespace {

std::filesystem::path bundle_path(const RunConfig& config) {
    return config.bundle.empty() ? config.out / "features" / "bundle.json" : std::filesystem::path(config.bundle);
}

lexicon::RatingTable load_binder(const RunConfig& config) {
    require_file(config.binder_table, "binder-table");
    try {
        return lexicon::load_rating_table(config.binder_table, lexicon::kBinderScale);
    } catch (...) {
        rethrow_in_stage("features", config.binder_table);
    }
}

features::EmbeddingTable load_vectors(const RunConfig& config, const std::unordered_set<std::string>& keep) {
    require_file(config.embeddings, "embeddings");
    try {
        return features::load_embeddings(config.embeddings, &keep);
    } catch (...) {
        rethrow_in_stage("features", config.embeddings);
    }
}

std::vector<std::string> lists_to_predict(const RunConfig& config) {
    std::vector<std::string> paths = config.predict_lists;
    if (paths.empty()) {
        for (const auto* group : {&config.positive_lists, &config.negative_lists}) paths.insert(paths.end(), group->begin(), group->end());
        if (!config.split_list.empty()) paths.push_back(config.split_list);
    }
    std::vector<std::string> unique;
    for (const auto& p : paths) {
        if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(p);
    }
    return unique;
}

void train(const RunConfig& config) {
    const auto binder = load_binder(config);
    const std::unordered_set<std::string> keep(binder.words.begin(), binder.words.end());
    const auto vectors = load_vectors(config, keep);
    StageWriter writer(config, "features", "train");
    features::FeatureRegressorBundle bundle;
    try {
        bundle = features::train_feature_regressors(binder, vectors, config.network, writer.seed(), config.min_overlap);
    } catch (...) {
        rethrow_in_stage("features", config.binder_table);
    }
    std::string report = "feature,epochs_run,best_epoch,train_mse,validation_mse,validation_correlation\n";
    for (const auto& r : bundle.regressors) {
        report += r.feature + "," + std::to_string(r.report.epochs_run) + "," + std::to_string(r.report.best_epoch) + "," +
                  io::format_double(r.report.train_mse) + "," + io::format_double(r.report.validation_mse) + "," +
                  io::format_double(r.report.validation_correlation) + "\n";
    }
    writer.write("training.csv", report);
    const auto path = bundle_path(config);
    if (config.bundle.empty()) {
        writer.write("bundle.json", nlohmann::json(bundle).dump(1) + "\n");
    } else {
        features::save_bundle(bundle, path);
        writer.extra()["bundle"] = path.string();
    }
    writer.extra()["training_words"] = bundle.training_words.size();
    writer.extra()["validation_words"] = bundle.validation_words.size();
    writer.finish();
}

void predict(const RunConfig& config) {
    const auto bundle = features::load_bundle(bundle_path(config));
    const auto paths = lists_to_predict(config);
    if (paths.empty()) throw Error(ErrorCode::InvalidArgument, "features predict needs --predict-lists or configured lists");
    std::vector<lexicon::WordList> lists;
    std::unordered_set<std::string> keep;
    for (const auto& path : paths) {
        lists.push_back(load_list(path));
        keep.insert(lists.back().words().begin(), lists.back().words().end());
    }
    const auto vectors = load_vectors(config, keep);
    StageWriter writer(config, "features", "predict");
    auto dropped = nlohmann::json::object();
    for (std::size_t i = 0; i < lists.size(); ++i) {
        features::Prediction prediction;
        try {
            prediction = features::predict_features(bundle, lists[i], vectors);
        } catch (...) {
            rethrow_in_stage("features", paths[i]);
        }
        if (!prediction.dropped.empty()) {
            log::warn("features: {} words of {} have no embedding", prediction.dropped.size(), lists[i].name());
        }
        writer.write(lists[i].name() + ".features.csv", format_feature_csv(prediction.matrix));
        dropped[lists[i].name()] = prediction.dropped;
    }
    writer.extra()["dropped"] = std::move(dropped);
    writer.finish();
}

void crossval(const RunConfig& config) {
    const auto binder = load_binder(config);
    const std::unordered_set<std::string> keep(binder.words.begin(), binder.words.end());
    const auto vectors = load_vectors(config, keep);
    StageWriter writer(config, "features", "crossval");
    features::CrossValidationReport report;
    try {
        report = features::cross_validate(binder, vectors, config.network, config.folds, writer.seed());
    } catch (...) {
        rethrow_in_stage("features", config.binder_table);
    }
    writer.write("crossval.csv", features::format_crossval_csv(report));
    writer.extra()["k_folds"] = report.k_folds;
    writer.extra()["words"] = report.n_words;
    writer.finish();
}

}  // namespace

void cmd_features(const RunConfig& config, const std::string& action) {
    if (action == "train") return train(config);
    if (action == "predict") return predict(config);
    if (action == "crossval") return crossval(config);
    throw Error(ErrorCode::InvalidArgument, "unknown features action '" + action + "'");
}

}  // namespace affect::pipeline
