#pragma once

#include "affect/econ/johansen.hpp"
#include "affect/econ/var.hpp"

#include <Eigen/Core>
#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace affect::econ {

struct MacroPanel;

/// What to estimate: the cointegrating rank of the non-stationary block,
/// which variables enter through identity relations, and the levels lag.
struct VecmSpec {
    std::size_t rank = 0;
    std::vector<bool> stationary;  // one flag per variable
    std::size_t lag = 2;
};

/// Mixed VECM with an unrestricted constant:
///   dy_t = alpha beta' y_{t-1} + sum_i gamma[i-1] dy_{t-i} + intercept + u_t
/// beta holds `rank` estimated relations on the non-stationary block
/// followed by one identity relation per stationary variable.
struct VecmModel {
    std::vector<std::string> names;
    VecmSpec spec;
    Eigen::MatrixXd beta;               // K x (rank + n_stationary)
    Eigen::MatrixXd alpha;              // K x (rank + n_stationary)
    std::vector<Eigen::MatrixXd> gamma;  // lag - 1 matrices, K x K
    Eigen::VectorXd intercept;
    Eigen::MatrixXd sigma;      // U'U / T
    Eigen::MatrixXd residuals;  // T x K, row i belongs to observation i + lag
    Eigen::VectorXd johansen_eigenvalues;

    [[nodiscard]] Eigen::Index dimension() const noexcept { return static_cast<Eigen::Index>(names.size()); }
    [[nodiscard]] std::size_t n_relations() const noexcept { return static_cast<std::size_t>(beta.cols()); }
};

/// Throws RankTooLarge, CollinearRegressors, InsufficientObservations.
[[nodiscard]] VecmModel estimate_vecm(const Eigen::MatrixXd& levels, std::vector<std::string> names,
                                      const VecmSpec& spec);
[[nodiscard]] VecmModel estimate_vecm(const MacroPanel& panel, std::size_t rank, std::size_t lag);

/// Levels VAR of order `lag` with the same one-step fitted values.
[[nodiscard]] VarForm vecm_to_var(const VecmModel& model);

/// One-step fitted levels for rows lag..T-1, from the error-correction form.
[[nodiscard]] Eigen::MatrixXd vecm_fitted(const VecmModel& model, const Eigen::MatrixXd& levels);

void to_json(nlohmann::json& j, const VecmModel& model);
void from_json(const nlohmann::json& j, VecmModel& model);

void save_model(const VecmModel& model, const std::filesystem::path& path);
/// Throws MissingModel when the file does not exist.
[[nodiscard]] VecmModel load_model(const std::filesystem::path& path);

}  // namespace affect::econ
