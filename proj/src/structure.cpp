#include "affect/structure.hpp"

#include "affect/error.hpp"
#include "affect/parallel.hpp"
#include "affect/rng.hpp"
#include "affect/stats.hpp"
#include "affect/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace affect::structure {

namespace {

void require_variance(const Eigen::VectorXd& column, const std::string& name) {
    if ((column.array() - column.mean()).abs().maxCoeff() <= 0.0) {
        throw Error(ErrorCode::ZeroVariance, "feature " + name + " has zero variance");
    }
}

}  // namespace

CorrelationMatrix feature_correlations(const FeatureMatrix& matrix, const std::vector<std::string>& features) {
    if (matrix.values.rows() < 3) throw Error(ErrorCode::TooFewPoints, "correlations need at least 3 words");
    const Eigen::MatrixXd data = matrix.columns(features);
    for (std::size_t j = 0; j < features.size(); ++j) require_variance(data.col(static_cast<Eigen::Index>(j)), features[j]);
    CorrelationMatrix corr;
    corr.feature_names = features;
    const auto p = data.cols();
    corr.values = Eigen::MatrixXd::Identity(p, p);
    for (Eigen::Index a = 0; a < p; ++a) {
        for (Eigen::Index b = a + 1; b < p; ++b) {
            const double r = stats::pearson(data.col(a), data.col(b));
            corr.values(a, b) = r;
            corr.values(b, a) = r;
        }
    }
    return corr;
}

PcaResult pca_project(const FeatureMatrix& matrix, const std::vector<std::string>& features,
                      std::size_t n_components) {
    const auto p = static_cast<Eigen::Index>(features.size());
    const auto n = matrix.values.rows();
    const auto k = static_cast<Eigen::Index>(n_components);
    if (k < 1 || p < k) throw Error(ErrorCode::InvalidArgument, "need at least n_components features");
    if (n < k + 1) throw Error(ErrorCode::TooFewPoints, "need at least n_components + 1 words");

    const Eigen::MatrixXd data = matrix.columns(features);
    PcaResult pca;
    pca.feature_names = features;
    pca.words = matrix.words;
    pca.mean = data.colwise().mean().transpose();
    pca.sd.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        require_variance(data.col(j), features[static_cast<std::size_t>(j)]);
        pca.sd(j) = std::sqrt((data.col(j).array() - pca.mean(j)).square().sum() / static_cast<double>(n - 1));
    }
    const Eigen::MatrixXd z = (data.rowwise() - pca.mean.transpose()).array().rowwise() / pca.sd.transpose().array();
    const Eigen::MatrixXd corr = (z.transpose() * z) / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::DegenerateCovariance, "eigen-decomposition failed");
    pca.eigenvalues = solver.eigenvalues().reverse().cwiseMax(0.0);
    Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

    const double total = pca.eigenvalues.sum();
    pca.rank = static_cast<std::size_t>((pca.eigenvalues.array() > 1e-10 * total).count());
    if (pca.rank < n_components) {
        throw Error(ErrorCode::DegenerateCovariance, "correlation matrix has rank " + std::to_string(pca.rank) +
                                                         " below the " + std::to_string(n_components) +
                                                         " requested components");
    }
    for (Eigen::Index c = 0; c < p; ++c) {
        Eigen::Index lead = 0;
        const double biggest = vectors.col(c).cwiseAbs().maxCoeff();
        while (std::abs(vectors(lead, c)) < biggest - 1e-12) ++lead;
        if (vectors(lead, c) < 0.0) vectors.col(c) *= -1.0;
    }
    pca.loadings = vectors.leftCols(k);
    pca.scores = z * pca.loadings;
    pca.explained = pca.eigenvalues.head(k) / total;
    return pca;
}

Eigen::MatrixXd project(const PcaResult& pca, const Eigen::MatrixXd& rows) {
    const Eigen::MatrixXd z = (rows.rowwise() - pca.mean.transpose()).array().rowwise() / pca.sd.transpose().array();
    return z * pca.loadings;
}

namespace {

double squared_distance(const Eigen::MatrixXd& points, Eigen::Index i, const Eigen::MatrixXd& centroids, Eigen::Index c) {
    return (points.row(i) - centroids.row(c)).squaredNorm();
}

/// Nearest centroid, ties to the lower index.
Eigen::Index nearest(const Eigen::MatrixXd& points, Eigen::Index i, const Eigen::MatrixXd& centroids, double* dist) {
    Eigen::Index best = 0;
    double best_d = squared_distance(points, i, centroids, 0);
    for (Eigen::Index c = 1; c < centroids.rows(); ++c) {
        const double d = squared_distance(points, i, centroids, c);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    if (dist != nullptr) *dist = best_d;
    return best;
}

double inertia_of(const Eigen::MatrixXd& points, const std::vector<int>& labels, const Eigen::MatrixXd& centroids) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        total += squared_distance(points, i, centroids, labels[static_cast<std::size_t>(i)]);
    }
    return total;
}

/// Greedy k-means++: each new centre is the best of several D²-weighted candidates.
Eigen::MatrixXd greedy_seed(const Eigen::MatrixXd& points, std::size_t k, Rng& rng) {
    const auto n = points.rows();
    const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
    Eigen::MatrixXd centroids(static_cast<Eigen::Index>(k), points.cols());
    centroids.row(0) = points.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
    Eigen::VectorXd closest(n);
    for (Eigen::Index i = 0; i < n; ++i) closest(i) = (points.row(i) - centroids.row(0)).squaredNorm();

    for (std::size_t c = 1; c < k; ++c) {
        const double potential = closest.sum();
        Eigen::Index best_candidate = -1;
        double best_potential = std::numeric_limits<double>::infinity();
        Eigen::VectorXd best_closest;
        for (std::size_t t = 0; t < trials; ++t) {
            Eigen::Index candidate = n - 1;
            if (potential > 0.0) {
                double target = rng.uniform() * potential;
                for (Eigen::Index i = 0; i < n; ++i) {
                    target -= closest(i);
                    if (target < 0.0) {
                        candidate = i;
                        break;
                    }
                }
            } else {
                candidate = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
            }
            Eigen::VectorXd updated(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                updated(i) = std::min(closest(i), (points.row(i) - points.row(candidate)).squaredNorm());
            }
            const double candidate_potential = updated.sum();
            if (candidate_potential < best_potential) {
                best_potential = candidate_potential;
                best_candidate = candidate;
                best_closest = std::move(updated);
            }
        }
        centroids.row(static_cast<Eigen::Index>(c)) = points.row(best_candidate);
        closest = std::move(best_closest);
    }
    return centroids;
}

std::size_t count_distinct(const Eigen::MatrixXd& points) {
    std::set<std::vector<double>> distinct;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(points.cols()));
        for (Eigen::Index j = 0; j < points.cols(); ++j) row[static_cast<std::size_t>(j)] = points(i, j);
        distinct.insert(std::move(row));
    }
    return distinct.size();
}

}  // namespace

ClusterAssignment lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids, std::size_t max_iterations) {
    const auto n = points.rows();
    const auto k = centroids.rows();
    ClusterAssignment result;
    result.labels.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (Eigen::Index i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = static_cast<int>(nearest(points, i, centroids, nullptr));

    std::size_t iteration = 0;
    while (true) {
        // update step, re-seeding empty clusters
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (int label : labels) ++counts[static_cast<std::size_t>(label)];
        for (Eigen::Index c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            Eigen::Index far = -1;
            double far_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const auto owner = labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(owner)] < 2) continue;
                const double d = squared_distance(points, i, centroids, owner);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            if (far < 0) break;
            --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
            labels[static_cast<std::size_t>(far)] = static_cast<int>(c);
            ++counts[static_cast<std::size_t>(c)];
        }
        centroids.setZero();
        for (Eigen::Index i = 0; i < n; ++i) centroids.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
        for (Eigen::Index c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
        }
        result.inertia_trace.push_back(inertia_of(points, labels, centroids));
        ++iteration;
        if (labels == result.labels || iteration >= max_iterations) break;
        result.labels = labels;
        // assignment step
        for (Eigen::Index i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = static_cast<int>(nearest(points, i, centroids, nullptr));
        if (labels == result.labels) break;
    }
    result.labels = labels;
    result.centroids = centroids;
    result.inertia = inertia_of(points, labels, centroids);
    result.iterations = iteration;
    return result;
}

ClusterAssignment kmeans_cluster(const Eigen::MatrixXd& points, std::vector<std::string> words, std::size_t k,
                                 std::size_t n_restarts, std::uint64_t seed, std::size_t max_iterations) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
    if (n_restarts < 1) throw Error(ErrorCode::InvalidArgument, "n_restarts must be positive");
    if (static_cast<std::size_t>(points.rows()) != words.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one word per clustered point required");
    }
    if (count_distinct(points) < k) {
        throw Error(ErrorCode::TooFewPoints, "fewer than " + std::to_string(k) + " distinct points");
    }

    std::vector<ClusterAssignment> runs(n_restarts);
    parallel_for(n_restarts, [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        runs[r] = lloyd(points, greedy_seed(points, k, rng), max_iterations);
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < n_restarts; ++r) {
        if (runs[r].inertia < runs[best].inertia) best = r;
    }
    ClusterAssignment result = std::move(runs[best]);

    // canonical labels: ascending centroid on the first axis, then the next axes
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        for (Eigen::Index d = 0; d < result.centroids.cols(); ++d) {
            if (result.centroids(a, d) != result.centroids(b, d)) return result.centroids(a, d) < result.centroids(b, d);
        }
        return a < b;
    });
    std::vector<int> relabel(static_cast<std::size_t>(k));
    Eigen::MatrixXd sorted(result.centroids.rows(), result.centroids.cols());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        relabel[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos) + 1;
        sorted.row(static_cast<Eigen::Index>(pos)) = result.centroids.row(order[pos]);
    }
    for (auto& label : result.labels) label = relabel[static_cast<std::size_t>(label)];
    result.centroids = std::move(sorted);
    result.words = std::move(words);
    result.seed = seed;
    result.n_restarts = n_restarts;
    result.best_restart = best;
    return result;
}

SplitResult split_word_list(const lexicon::WordList& list, const ClusterAssignment& assignment,
                            const FeatureMatrix& matrix, LabelOverride label_override,
                            const std::vector<std::string>& label_features) {
    std::unordered_map<std::string_view, int> cluster_of;
    for (std::size_t i = 0; i < assignment.words.size(); ++i) cluster_of.emplace(assignment.words[i], assignment.labels[i]);
    std::unordered_map<std::string_view, Eigen::Index> row_of;
    for (std::size_t i = 0; i < matrix.words.size(); ++i) row_of.emplace(matrix.words[i], static_cast<Eigen::Index>(i));
    std::vector<Eigen::Index> columns;
    for (const auto& f : label_features) columns.push_back(static_cast<Eigen::Index>(matrix.feature_index(f)));

    std::vector<std::string> members[2];
    double sums[2] = {0.0, 0.0};
    for (const auto& word : list.words()) {
        const auto c = cluster_of.find(word);
        const auto r = row_of.find(word);
        if (c == cluster_of.end() || r == row_of.end()) continue;
        if (c->second != 1 && c->second != 2) throw Error(ErrorCode::InvalidArgument, "split expects clusters 1 and 2");
        const auto slot = static_cast<std::size_t>(c->second - 1);
        double score = 0.0;
        for (auto col : columns) score += matrix.values(r->second, col);
        sums[slot] += score;
        members[slot].push_back(word);
    }
    if (members[0].empty() || members[1].empty()) {
        throw Error(ErrorCode::EmptySet, "both clusters need rated words of " + list.name());
    }
    const double score1 = sums[0] / static_cast<double>(members[0].size());
    const double score2 = sums[1] / static_cast<double>(members[1].size());

    int alt1 = 0;
    switch (label_override) {
    case LabelOverride::Cluster1IsAlt1: alt1 = 1; break;
    case LabelOverride::Cluster2IsAlt1: alt1 = 2; break;
    case LabelOverride::None:
        if (std::abs(score1 - score2) <= 1e-12 * std::max({1.0, std::abs(score1), std::abs(score2)})) {
            throw Error(ErrorCode::LabelTie, "clusters have equal labeling means (" + io::format_double(score1) +
                                                 "); pass an explicit label override");
        }
        alt1 = score1 > score2 ? 1 : 2;
        break;
    }
    const auto a = static_cast<std::size_t>(alt1 - 1);
    const auto b = 1 - a;
    SplitResult split;
    split.alt1 = lexicon::WordList::from_tokens(list.name() + "_alt1", members[a]);
    split.alt2 = lexicon::WordList::from_tokens(list.name() + "_alt2", members[b]);
    split.alt1_cluster = alt1;
    split.alt1_score = a == 0 ? score1 : score2;
    split.alt2_score = a == 0 ? score2 : score1;
    return split;
}

void to_json(nlohmann::json& j, const CorrelationMatrix& corr) {
    std::vector<std::vector<double>> rows;
    for (Eigen::Index r = 0; r < corr.values.rows(); ++r) {
        std::vector<double> row;
        for (Eigen::Index c = 0; c < corr.values.cols(); ++c) row.push_back(corr.values(r, c));
        rows.push_back(std::move(row));
    }
    j = nlohmann::json{{"features", corr.feature_names}, {"pearson", rows}};
}

void to_json(nlohmann::json& j, const PcaResult& pca) {
    std::vector<std::vector<double>> loadings;
    for (Eigen::Index r = 0; r < pca.loadings.rows(); ++r) {
        std::vector<double> row;
        for (Eigen::Index c = 0; c < pca.loadings.cols(); ++c) row.push_back(pca.loadings(r, c));
        loadings.push_back(std::move(row));
    }
    j = nlohmann::json{{"basis", "correlation"},
                       {"features", pca.feature_names},
                       {"loadings", loadings},
                       {"explained_variance", std::vector<double>(pca.explained.begin(), pca.explained.end())},
                       {"explained_total", pca.explained.sum()},
                       {"eigenvalues", std::vector<double>(pca.eigenvalues.begin(), pca.eigenvalues.end())},
                       {"mean", std::vector<double>(pca.mean.begin(), pca.mean.end())},
                       {"sd", std::vector<double>(pca.sd.begin(), pca.sd.end())},
                       {"rank", pca.rank},
                       {"sign_rule", "largest-magnitude loading positive"}};
}

std::string format_correlation_csv(const CorrelationMatrix& corr) {
    std::string out = "feature";
    for (const auto& f : corr.feature_names) out += "," + f;
    out += '\n';
    for (std::size_t r = 0; r < corr.feature_names.size(); ++r) {
        out += corr.feature_names[r];
        for (Eigen::Index c = 0; c < corr.values.cols(); ++c) {
            out += "," + io::format_double(corr.values(static_cast<Eigen::Index>(r), c));
        }
        out += '\n';
    }
    return out;
}

std::string format_projection_csv(const PcaResult& pca, const ClusterAssignment& clusters) {
    if (pca.words != clusters.words) throw Error(ErrorCode::DimensionMismatch, "PCA and cluster words differ");
    std::string out = "word";
    for (Eigen::Index c = 0; c < pca.scores.cols(); ++c) out += ",pc" + std::to_string(c + 1);
    out += ",cluster\n";
    for (std::size_t i = 0; i < pca.words.size(); ++i) {
        out += pca.words[i];
        for (Eigen::Index c = 0; c < pca.scores.cols(); ++c) {
            out += "," + io::format_double(pca.scores(static_cast<Eigen::Index>(i), c));
        }
        out += "," + std::to_string(clusters.labels[i]) + "\n";
    }
    return out;
}

}  // namespace affect::structure
