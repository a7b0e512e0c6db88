#pragma once

#include "affect/embeddings.hpp"
#include "affect/feature_matrix.hpp"
#include "affect/lexicon.hpp"
#include "affect/regressor.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace affect::features {

inline constexpr int kBundleFormatVersion = 1;
inline constexpr std::size_t kMinTrainingOverlap = 100;

struct FeatureRegressor {
    std::string feature;
    std::uint64_t seed = 0;
    RegressionNetwork network;
    FitReport report;
};

/// One fitted network per rating feature, plus the shared input
/// standardization (training-split statistics) and the exact config.
struct FeatureRegressorBundle {
    int format_version = kBundleFormatVersion;
    std::vector<std::string> feature_names;
    lexicon::Scale scale = lexicon::kBinderScale;
    std::size_t embedding_dimension = 0;
    Eigen::VectorXd input_mean;
    Eigen::VectorXd input_scale;
    NetworkConfig config;
    std::uint64_t seed = 0;
    std::vector<std::string> training_words;
    std::vector<std::string> validation_words;
    std::vector<FeatureRegressor> regressors;

    /// Raw (unclamped) predictions, rows of `embeddings` x features.
    [[nodiscard]] Eigen::MatrixXd predict_raw(const Eigen::MatrixXd& embeddings) const;
};

/// Fits one regressor per feature of `ratings` on the words that have an
/// embedding. Throws InsufficientOverlap below `min_overlap` shared words.
[[nodiscard]] FeatureRegressorBundle train_feature_regressors(const lexicon::RatingTable& ratings,
                                                              const EmbeddingTable& embeddings,
                                                              const NetworkConfig& config, std::uint64_t seed,
                                                              std::size_t min_overlap = kMinTrainingOverlap);

struct CrossValidationReport {
    std::vector<std::string> feature_names;
    Eigen::VectorXd correlation;  // per feature, pooled out-of-fold Pearson r
    std::size_t k_folds = 0;
    std::size_t n_words = 0;
    std::uint64_t seed = 0;
};

/// k-fold cross-validation over the shared words. Each feature's score is
/// the correlation between pooled out-of-fold predictions and ratings, so
/// leave-one-out (k = number of words) is supported.
[[nodiscard]] CrossValidationReport cross_validate(const lexicon::RatingTable& ratings,
                                                   const EmbeddingTable& embeddings,
                                                   const NetworkConfig& config, std::size_t k_folds,
                                                   std::uint64_t seed);

struct Prediction {
    FeatureMatrix matrix;
    std::vector<std::string> dropped;
};

/// Predictions clamped to the bundle scale, rows in list order minus words
/// without an embedding. Throws NoOverlap when no word has one.
[[nodiscard]] Prediction predict_features(const FeatureRegressorBundle& bundle, const lexicon::WordList& words,
                                          const EmbeddingTable& embeddings);

void to_json(nlohmann::json& j, const FeatureRegressorBundle& bundle);
void from_json(const nlohmann::json& j, FeatureRegressorBundle& bundle);

void save_bundle(const FeatureRegressorBundle& bundle, const std::filesystem::path& path);
/// Throws MissingBundle if the file does not exist.
[[nodiscard]] FeatureRegressorBundle load_bundle(const std::filesystem::path& path);

/// `feature,correlation`
[[nodiscard]] std::string format_crossval_csv(const CrossValidationReport& report);

}  // namespace affect::features
