#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>
#include <json.hpp>

namespace affect::features {

/// Training settings for one regression network. Defaults: 100 ReLU hidden
/// units, Adam, early stopping on a 10% validation split with patience 20,
/// at most 500 epochs.
struct NetworkConfig {
    std::size_t hidden_units = 100;
    std::size_t max_epochs = 500;
    std::size_t patience = 20;
    double validation_fraction = 0.1;
    double learning_rate = 1e-3;
    std::size_t batch_size = 32;
    double weight_decay = 0.0;
};

void to_json(nlohmann::json& j, const NetworkConfig& config);
void from_json(const nlohmann::json& j, NetworkConfig& config);

/// Single-hidden-layer ReLU network with a scalar linear output.
struct RegressionNetwork {
    Eigen::MatrixXd hidden_weights;  // hidden x inputs
    Eigen::VectorXd hidden_bias;
    Eigen::VectorXd output_weights;  // hidden
    double output_bias = 0.0;

    [[nodiscard]] double predict_one(const Eigen::Ref<const Eigen::VectorXd>& input) const;
    /// One prediction per row of `inputs`.
    [[nodiscard]] Eigen::VectorXd predict(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const;
};

void to_json(nlohmann::json& j, const RegressionNetwork& network);
void from_json(const nlohmann::json& j, RegressionNetwork& network);

struct FitReport {
    std::size_t epochs_run = 0;
    std::size_t best_epoch = 0;
    double train_mse = 0.0;
    double validation_mse = 0.0;
    double validation_correlation = 0.0;
};

/// Mean-squared-error fit with Adam. With a non-empty validation set the
/// weights of the best validation epoch are returned and training stops
/// after `patience` epochs without improvement. Throws TrainingDiverged on
/// a non-finite loss.
[[nodiscard]] RegressionNetwork fit_network(const Eigen::MatrixXd& train_inputs,
                                            const Eigen::VectorXd& train_targets,
                                            const Eigen::MatrixXd& validation_inputs,
                                            const Eigen::VectorXd& validation_targets,
                                            const NetworkConfig& config, std::uint64_t seed,
                                            FitReport* report = nullptr);

}  // namespace affect::features
