#include "affect/extrapolation.hpp"

#include "affect/error.hpp"
#include "affect/log.hpp"
#include "affect/parallel.hpp"
#include "affect/rng.hpp"
#include "affect/stats.hpp"
#include "affect/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace affect::features {

namespace {

constexpr std::uint64_t kSplitStream = 0x5917;
constexpr std::uint64_t kFoldStream = 0xF01D;

struct Overlap {
    std::vector<std::string> words;
    Eigen::MatrixXd inputs;   // words x dimension
    Eigen::MatrixXd targets;  // words x features
};

Overlap overlap_of(const lexicon::RatingTable& ratings, const EmbeddingTable& embeddings) {
    Overlap o;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> rows;
    for (std::size_t i = 0; i < ratings.words.size(); ++i) {
        if (const auto e = embeddings.find(ratings.words[i])) {
            o.words.push_back(ratings.words[i]);
            rows.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(*e));
        }
    }
    o.inputs.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(embeddings.dimension()));
    o.targets.resize(static_cast<Eigen::Index>(rows.size()), ratings.values.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        o.inputs.row(static_cast<Eigen::Index>(r)) = embeddings.vectors().row(rows[r].second);
        o.targets.row(static_cast<Eigen::Index>(r)) = ratings.values.row(rows[r].first);
    }
    return o;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
    return out;
}

Eigen::MatrixXd standardize(const Eigen::MatrixXd& x, const Eigen::VectorXd& mean, const Eigen::VectorXd& scale) {
    return (x.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
}

std::size_t validation_count(std::size_t n, double fraction) {
    if (fraction <= 0.0 || n < 3) return 0;
    auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    return std::clamp<std::size_t>(count, 1, n - 2);
}

/// Fits every feature on `train` rows with an internal validation split.
FeatureRegressorBundle fit_bundle(const Overlap& data, const std::vector<Eigen::Index>& train_rows,
                                  const std::vector<std::string>& feature_names, lexicon::Scale scale,
                                  const NetworkConfig& config, std::uint64_t seed) {
    std::vector<Eigen::Index> order = train_rows;
    Rng split_rng(derive_seed(seed, kSplitStream));
    split_rng.shuffle(order);
    const auto n_val = validation_count(order.size(), config.validation_fraction);
    std::vector<Eigen::Index> val_rows(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
    std::vector<Eigen::Index> fit_rows(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
    std::sort(val_rows.begin(), val_rows.end());
    std::sort(fit_rows.begin(), fit_rows.end());

    FeatureRegressorBundle bundle;
    bundle.feature_names = feature_names;
    bundle.scale = scale;
    bundle.embedding_dimension = static_cast<std::size_t>(data.inputs.cols());
    bundle.config = config;
    bundle.seed = seed;
    for (auto r : fit_rows) bundle.training_words.push_back(data.words[static_cast<std::size_t>(r)]);
    for (auto r : val_rows) bundle.validation_words.push_back(data.words[static_cast<std::size_t>(r)]);

    const Eigen::MatrixXd fit_raw = take_rows(data.inputs, fit_rows);
    bundle.input_mean = fit_raw.colwise().mean().transpose();
    bundle.input_scale.resize(fit_raw.cols());
    for (Eigen::Index c = 0; c < fit_raw.cols(); ++c) {
        const double var = (fit_raw.col(c).array() - bundle.input_mean(c)).square().sum() /
                           static_cast<double>(std::max<Eigen::Index>(1, fit_raw.rows() - 1));
        const double sd = std::sqrt(var);
        bundle.input_scale(c) = sd > 1e-12 ? sd : 1.0;
    }
    const Eigen::MatrixXd fit_x = standardize(fit_raw, bundle.input_mean, bundle.input_scale);
    const Eigen::MatrixXd val_x = standardize(take_rows(data.inputs, val_rows), bundle.input_mean, bundle.input_scale);
    const Eigen::MatrixXd fit_y = take_rows(data.targets, fit_rows);
    const Eigen::MatrixXd val_y = take_rows(data.targets, val_rows);

    bundle.regressors.resize(feature_names.size());
    parallel_for(feature_names.size(), [&](std::size_t f) {
        auto& reg = bundle.regressors[f];
        reg.feature = feature_names[f];
        reg.seed = derive_seed(seed, f);
        const auto col = static_cast<Eigen::Index>(f);
        try {
            reg.network = fit_network(fit_x, fit_y.col(col), val_x, val_y.col(col), config, reg.seed, &reg.report);
        } catch (const Error& e) {
            throw Error(e.code(), "feature " + reg.feature + ": " + e.what());
        }
    });
    return bundle;
}

}  // namespace

Eigen::MatrixXd FeatureRegressorBundle::predict_raw(const Eigen::MatrixXd& embeddings) const {
    if (static_cast<std::size_t>(embeddings.cols()) != embedding_dimension) {
        throw Error(ErrorCode::DimensionMismatch,
                    "embedding dimension " + std::to_string(embeddings.cols()) + " differs from bundle dimension " +
                        std::to_string(embedding_dimension));
    }
    const Eigen::MatrixXd x = standardize(embeddings, input_mean, input_scale);
    Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(regressors.size()));
    for (std::size_t f = 0; f < regressors.size(); ++f) {
        out.col(static_cast<Eigen::Index>(f)) = regressors[f].network.predict(x);
    }
    return out;
}

FeatureRegressorBundle train_feature_regressors(const lexicon::RatingTable& ratings,
                                                const EmbeddingTable& embeddings, const NetworkConfig& config,
                                                std::uint64_t seed, std::size_t min_overlap) {
    const auto data = overlap_of(ratings, embeddings);
    if (data.words.size() < std::max<std::size_t>(min_overlap, 3)) {
        throw Error(ErrorCode::InsufficientOverlap,
                    std::to_string(data.words.size()) + " rated words have embeddings; need at least " +
                        std::to_string(std::max<std::size_t>(min_overlap, 3)));
    }
    std::vector<Eigen::Index> all(data.words.size());
    std::iota(all.begin(), all.end(), Eigen::Index{0});
    return fit_bundle(data, all, ratings.feature_names, ratings.scale, config, seed);
}

CrossValidationReport cross_validate(const lexicon::RatingTable& ratings, const EmbeddingTable& embeddings,
                                     const NetworkConfig& config, std::size_t k_folds, std::uint64_t seed) {
    if (k_folds < 2) throw Error(ErrorCode::InvalidArgument, "k_folds must be at least 2");
    const auto data = overlap_of(ratings, embeddings);
    const auto n = data.words.size();
    if (k_folds > n) {
        throw Error(ErrorCode::InsufficientOverlap, std::to_string(k_folds) + " folds requested for " +
                                                        std::to_string(n) + " words; a fold would be empty");
    }
    if (n - n / k_folds < 3) throw Error(ErrorCode::InsufficientOverlap, "too few words to train each fold");

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    Rng rng(derive_seed(seed, kFoldStream));
    rng.shuffle(order);

    Eigen::MatrixXd out_of_fold(static_cast<Eigen::Index>(n), data.targets.cols());
    for (std::size_t fold = 0; fold < k_folds; ++fold) {
        std::vector<Eigen::Index> test;
        std::vector<Eigen::Index> train;
        for (std::size_t i = 0; i < n; ++i) (i % k_folds == fold ? test : train).push_back(order[i]);
        const auto bundle = fit_bundle(data, train, ratings.feature_names, ratings.scale, config, derive_seed(seed, fold));
        const Eigen::MatrixXd predicted =
            bundle.predict_raw(take_rows(data.inputs, test)).cwiseMax(ratings.scale.min).cwiseMin(ratings.scale.max);
        for (std::size_t i = 0; i < test.size(); ++i) out_of_fold.row(test[i]) = predicted.row(static_cast<Eigen::Index>(i));
    }

    CrossValidationReport report;
    report.feature_names = ratings.feature_names;
    report.k_folds = k_folds;
    report.n_words = n;
    report.seed = seed;
    report.correlation.resize(data.targets.cols());
    for (Eigen::Index f = 0; f < data.targets.cols(); ++f) {
        const double r = stats::pearson(out_of_fold.col(f), data.targets.col(f));
        if (!std::isfinite(r)) log::warn("cross-validation: constant predictions or ratings for feature {}", ratings.feature_names[static_cast<std::size_t>(f)]);
        report.correlation(f) = std::isfinite(r) ? r : 0.0;
    }
    return report;
}

Prediction predict_features(const FeatureRegressorBundle& bundle, const lexicon::WordList& words,
                            const EmbeddingTable& embeddings) {
    Prediction result;
    std::vector<Eigen::Index> rows;
    for (const auto& word : words.words()) {
        if (const auto e = embeddings.find(word)) {
            result.matrix.words.push_back(word);
            rows.push_back(static_cast<Eigen::Index>(*e));
        } else {
            result.dropped.push_back(word);
        }
    }
    if (rows.empty()) throw Error(ErrorCode::NoOverlap, "no word of " + words.name() + " has an embedding");
    result.matrix.feature_names = bundle.feature_names;
    result.matrix.scale = bundle.scale;
    result.matrix.values = bundle.predict_raw(take_rows(embeddings.vectors(), rows))
                               .cwiseMax(bundle.scale.min)
                               .cwiseMin(bundle.scale.max);
    if (!result.matrix.values.allFinite()) throw Error(ErrorCode::NonFinite, "non-finite feature prediction");
    return result;
}

void to_json(nlohmann::json& j, const FeatureRegressorBundle& bundle) {
    nlohmann::json regs = nlohmann::json::array();
    for (const auto& r : bundle.regressors) {
        regs.push_back({{"feature", r.feature},
                        {"seed", r.seed},
                        {"network", r.network},
                        {"epochs_run", r.report.epochs_run},
                        {"best_epoch", r.report.best_epoch},
                        {"train_mse", r.report.train_mse},
                        {"validation_mse", r.report.validation_mse},
                        {"validation_correlation", r.report.validation_correlation}});
    }
    j = nlohmann::json{{"format", "affect-feature-bundle"},
                       {"format_version", bundle.format_version},
                       {"feature_names", bundle.feature_names},
                       {"scale", {bundle.scale.min, bundle.scale.max}},
                       {"embedding_dimension", bundle.embedding_dimension},
                       {"input_mean", std::vector<double>(bundle.input_mean.begin(), bundle.input_mean.end())},
                       {"input_scale", std::vector<double>(bundle.input_scale.begin(), bundle.input_scale.end())},
                       {"config", bundle.config},
                       {"seed", bundle.seed},
                       {"training_words", bundle.training_words},
                       {"validation_words", bundle.validation_words},
                       {"regressors", regs}};
}

void from_json(const nlohmann::json& j, FeatureRegressorBundle& bundle) {
    if (j.value("format", std::string{}) != "affect-feature-bundle") {
        throw Error(ErrorCode::MalformedRecord, "not a feature bundle");
    }
    bundle.format_version = j.at("format_version").get<int>();
    if (bundle.format_version != kBundleFormatVersion) {
        throw Error(ErrorCode::MalformedRecord, "unsupported bundle version " + std::to_string(bundle.format_version));
    }
    j.at("feature_names").get_to(bundle.feature_names);
    const auto scale = j.at("scale").get<std::vector<double>>();
    bundle.scale = {scale.at(0), scale.at(1)};
    j.at("embedding_dimension").get_to(bundle.embedding_dimension);
    const auto mean = j.at("input_mean").get<std::vector<double>>();
    const auto sd = j.at("input_scale").get<std::vector<double>>();
    if (mean.size() != bundle.embedding_dimension || sd.size() != bundle.embedding_dimension) {
        throw Error(ErrorCode::DimensionMismatch, "bundle standardization does not match embedding dimension");
    }
    bundle.input_mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    bundle.input_scale = Eigen::Map<const Eigen::VectorXd>(sd.data(), static_cast<Eigen::Index>(sd.size()));
    j.at("config").get_to(bundle.config);
    j.at("seed").get_to(bundle.seed);
    j.at("training_words").get_to(bundle.training_words);
    j.at("validation_words").get_to(bundle.validation_words);
    bundle.regressors.clear();
    for (const auto& r : j.at("regressors")) {
        FeatureRegressor reg;
        r.at("feature").get_to(reg.feature);
        r.at("seed").get_to(reg.seed);
        r.at("network").get_to(reg.network);
        r.at("epochs_run").get_to(reg.report.epochs_run);
        r.at("best_epoch").get_to(reg.report.best_epoch);
        r.at("train_mse").get_to(reg.report.train_mse);
        r.at("validation_mse").get_to(reg.report.validation_mse);
        r.at("validation_correlation").get_to(reg.report.validation_correlation);
        bundle.regressors.push_back(std::move(reg));
    }
    if (bundle.regressors.size() != bundle.feature_names.size()) {
        throw Error(ErrorCode::MalformedRecord, "bundle must hold exactly one regressor per feature");
    }
    for (std::size_t f = 0; f < bundle.regressors.size(); ++f) {
        if (bundle.regressors[f].feature != bundle.feature_names[f]) {
            throw Error(ErrorCode::MalformedRecord, "regressor order does not match feature names");
        }
    }
}

void save_bundle(const FeatureRegressorBundle& bundle, const std::filesystem::path& path) {
    io::write_file(path, nlohmann::json(bundle).dump(1) + "\n");
}

FeatureRegressorBundle load_bundle(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw Error(ErrorCode::MissingBundle, "no trained bundle at " + path.string() + "; run `features train` first");
    }
    std::ifstream in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, path.string() + ": " + e.what());
    }
    return j.get<FeatureRegressorBundle>();
}

std::string format_crossval_csv(const CrossValidationReport& report) {
    std::string out = "feature,correlation\n";
    for (std::size_t f = 0; f < report.feature_names.size(); ++f) {
        out += report.feature_names[f] + "," + io::format_double(report.correlation(static_cast<Eigen::Index>(f))) + "\n";
    }
    return out;
}

}  // namespace affect::features
