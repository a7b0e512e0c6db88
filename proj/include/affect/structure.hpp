#pragma once

#include "affect/feature_matrix.hpp"
#include "affect/lexicon.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

namespace affect::structure {

struct CorrelationMatrix {
    std::vector<std::string> feature_names;
    Eigen::MatrixXd values;
};

/// Pairwise Pearson correlations over words. Needs at least three words;
/// throws ZeroVariance for a constant feature.
[[nodiscard]] CorrelationMatrix feature_correlations(const FeatureMatrix& matrix,
                                                     const std::vector<std::string>& features);

/// Principal components of the correlation matrix (z-scored features).
struct PcaResult {
    std::vector<std::string> feature_names;
    std::vector<std::string> words;
    Eigen::MatrixXd loadings;     // features x components, orthonormal columns
    Eigen::MatrixXd scores;       // words x components
    Eigen::VectorXd explained;    // fraction of total variance, per retained component
    Eigen::VectorXd eigenvalues;  // all eigenvalues, descending
    Eigen::VectorXd mean;         // standardization, per feature
    Eigen::VectorXd sd;           // sample standard deviation, per feature
    std::size_t rank = 0;
};

inline const std::vector<std::string> kPcaFeatures{"Fearful", "Surprised", "Cognition", "Drive"};
inline const std::vector<std::string> kCorrelationFeatures{"Fearful", "Surprised", "Cognition", "Drive", "Arousal"};
inline const std::vector<std::string> kLabelFeatures{"Cognition", "Drive"};

/// Each component's largest-magnitude loading is made positive. Throws
/// DegenerateCovariance when the correlation rank is below n_components.
[[nodiscard]] PcaResult pca_project(const FeatureMatrix& matrix, const std::vector<std::string>& features,
                                    std::size_t n_components = 2);

/// Standardizes new rows with the stored parameters and projects them.
[[nodiscard]] Eigen::MatrixXd project(const PcaResult& pca, const Eigen::MatrixXd& rows);

struct ClusterAssignment {
    std::vector<std::string> words;
    std::vector<int> labels;    // 1-based, cluster 1 has the lowest centroid on the first axis
    Eigen::MatrixXd centroids;  // k x dimensions, row c-1 is cluster c
    double inertia = 0.0;
    std::uint64_t seed = 0;
    std::size_t n_restarts = 0;
    std::size_t best_restart = 0;
    std::size_t iterations = 0;
    std::vector<double> inertia_trace;  // best restart, after every Lloyd step
};

inline constexpr std::size_t kDefaultRestarts = 100;
inline constexpr std::size_t kMaxKmeansIterations = 300;

/// Lloyd iterations from the given centroids until assignments stop
/// changing. Empty clusters are re-seeded at the point farthest from its
/// centroid. Labels in the result are not canonicalized.
[[nodiscard]] ClusterAssignment lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids,
                                      std::size_t max_iterations = kMaxKmeansIterations);

/// Best-of-n_restarts k-means with greedy k-means++ seeding. Restart r uses
/// derive_seed(seed, r); the lowest inertia wins, ties to the lower index.
[[nodiscard]] ClusterAssignment kmeans_cluster(const Eigen::MatrixXd& points, std::vector<std::string> words,
                                               std::size_t k = 2, std::size_t n_restarts = kDefaultRestarts,
                                               std::uint64_t seed = 0,
                                               std::size_t max_iterations = kMaxKmeansIterations);

enum class LabelOverride { None, Cluster1IsAlt1, Cluster2IsAlt1 };

struct SplitResult {
    lexicon::WordList alt1;
    lexicon::WordList alt2;
    int alt1_cluster = 1;
    double alt1_score = 0.0;  // cluster mean of the summed labeling features
    double alt2_score = 0.0;
};

/// Alt1 is the cluster with the higher mean of the summed labeling features
/// (Cognition + Drive by default). Words absent from the assignment or the
/// matrix go to neither list. An exact tie throws LabelTie unless overridden.
[[nodiscard]] SplitResult split_word_list(const lexicon::WordList& list, const ClusterAssignment& assignment,
                                          const FeatureMatrix& matrix, LabelOverride label_override = LabelOverride::None,
                                          const std::vector<std::string>& label_features = kLabelFeatures);

void to_json(nlohmann::json& j, const CorrelationMatrix& corr);
void to_json(nlohmann::json& j, const PcaResult& pca);

/// `feature,<feature>...` square table.
[[nodiscard]] std::string format_correlation_csv(const CorrelationMatrix& corr);
/// `word,pc1,...,cluster`
[[nodiscard]] std::string format_projection_csv(const PcaResult& pca, const ClusterAssignment& clusters);

}  // namespace affect::structure
