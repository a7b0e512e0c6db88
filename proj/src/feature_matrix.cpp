#include "affect/feature_matrix.hpp"

#include "affect/error.hpp"
#include "affect/text_io.hpp"

#include <algorithm>

namespace affect {

std::size_t FeatureMatrix::feature_index(std::string_view feature) const {
    const auto it = std::find(feature_names.begin(), feature_names.end(), feature);
    if (it == feature_names.end()) {
        throw Error(ErrorCode::MissingFeature, "feature column '" + std::string(feature) + "' not found");
    }
    return static_cast<std::size_t>(it - feature_names.begin());
}

Eigen::VectorXd FeatureMatrix::column(std::string_view feature) const {
    return values.col(static_cast<Eigen::Index>(feature_index(feature)));
}

Eigen::MatrixXd FeatureMatrix::columns(const std::vector<std::string>& features) const {
    Eigen::MatrixXd out(values.rows(), static_cast<Eigen::Index>(features.size()));
    for (std::size_t j = 0; j < features.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = column(features[j]);
    }
    return out;
}

std::string format_feature_csv(const FeatureMatrix& matrix) {
    std::string out = "word";
    for (const auto& name : matrix.feature_names) out += "," + name;
    out += '\n';
    for (std::size_t i = 0; i < matrix.words.size(); ++i) {
        out += matrix.words[i];
        for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) {
            out += ',';
            out += io::format_double(matrix.values(static_cast<Eigen::Index>(i), j));
        }
        out += '\n';
    }
    return out;
}

lexicon::RatingTable as_rating_table(const FeatureMatrix& matrix) {
    return lexicon::make_rating_table(matrix.feature_names, matrix.scale, matrix.words, matrix.values);
}

FeatureMatrix as_feature_matrix(const lexicon::RatingTable& table) {
    return FeatureMatrix{table.words, table.feature_names, table.values, table.scale};
}

FeatureMatrix load_feature_matrix(const std::filesystem::path& path, lexicon::Scale scale) {
    return as_feature_matrix(lexicon::load_rating_table(path, scale));
}

}  // namespace affect
