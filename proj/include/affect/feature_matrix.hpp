#pragma once

#include "affect/lexicon.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace affect {

/// Words x named features on a declared scale (predicted Binder ratings).
struct FeatureMatrix {
    std::vector<std::string> words;
    std::vector<std::string> feature_names;
    Eigen::MatrixXd values;  // words.size() x feature_names.size()
    lexicon::Scale scale = lexicon::kBinderScale;

    [[nodiscard]] std::size_t feature_index(std::string_view feature) const;
    [[nodiscard]] Eigen::VectorXd column(std::string_view feature) const;
    /// Sub-matrix of the named columns, in the order given.
    [[nodiscard]] Eigen::MatrixXd columns(const std::vector<std::string>& features) const;
};

/// `word,<feature>...` CSV with round-trip number formatting.
[[nodiscard]] std::string format_feature_csv(const FeatureMatrix& matrix);

[[nodiscard]] FeatureMatrix load_feature_matrix(const std::filesystem::path& path,
                                                lexicon::Scale scale = lexicon::kBinderScale);

[[nodiscard]] lexicon::RatingTable as_rating_table(const FeatureMatrix& matrix);
[[nodiscard]] FeatureMatrix as_feature_matrix(const lexicon::RatingTable& table);

}  // namespace affect
