#include "pipeline.hpp"

#include "affect/error.hpp"
#include "affect/feature_matrix.hpp"
#include "affect/structure.hpp"
#include "affect/text_io.hpp"

namespace affect::pipeline {

void cmd_split(const RunConfig& config) {
    require_file(config.split_list, "split-list");
    const auto list = load_list(config.split_list);
    const auto matrix_path = config.feature_matrix.empty()
                                 ? (config.out / "features" / (list.name() + ".features.csv")).string()
                                 : config.feature_matrix;
    require_file(matrix_path, "feature-matrix");

    StageWriter writer(config, "split", "split");
    try {
        const auto matrix = load_feature_matrix(matrix_path);
        const auto correlations = structure::feature_correlations(matrix, config.correlation_features);
        const auto pca = structure::pca_project(matrix, config.pca_features, config.components);
        const auto clusters = structure::kmeans_cluster(pca.scores, pca.words, 2, config.restarts, writer.seed());
        const auto override_rule = config.label_override == "cluster1"   ? structure::LabelOverride::Cluster1IsAlt1
                                   : config.label_override == "cluster2" ? structure::LabelOverride::Cluster2IsAlt1
                                                                         : structure::LabelOverride::None;
        const auto split = structure::split_word_list(list, clusters, matrix, override_rule, config.label_features);

        writer.write("correlations.csv", structure::format_correlation_csv(correlations));
        writer.write_json("correlations.json", correlations);
        writer.write_json("pca.json", pca);
        writer.write("projection.csv", structure::format_projection_csv(pca, clusters));
        writer.write_json("clusters.json", {{"k", 2},
                                            {"seed", clusters.seed},
                                            {"restarts", clusters.n_restarts},
                                            {"best_restart", clusters.best_restart},
                                            {"iterations", clusters.iterations},
                                            {"inertia", clusters.inertia},
                                            {"alt1_cluster", split.alt1_cluster},
                                            {"alt1_score", split.alt1_score},
                                            {"alt2_score", split.alt2_score},
                                            {"label_features", config.label_features}});
        writer.write(split.alt1.name() + ".txt", lexicon::format_word_list(split.alt1));
        writer.write(split.alt2.name() + ".txt", lexicon::format_word_list(split.alt2));
        writer.extra()["explained_variance"] =
            std::vector<double>(pca.explained.data(), pca.explained.data() + pca.explained.size());
    } catch (...) {
        rethrow_in_stage("split", matrix_path);
    }
    writer.finish();
}

}  // namespace affect::pipeline
