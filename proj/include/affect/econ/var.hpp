#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace affect::econ {

/// Levels VAR: y_t = intercept + sum_i A[i-1] y_{t-i} + u_t.
struct VarForm {
    std::vector<Eigen::MatrixXd> coefficients;
    Eigen::VectorXd intercept;

    [[nodiscard]] std::size_t lag() const noexcept { return coefficients.size(); }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return intercept.size(); }
    /// One-step fitted values for rows lag..T-1 of `levels`.
    [[nodiscard]] Eigen::MatrixXd fitted(const Eigen::MatrixXd& levels) const;
};

/// Kp x Kp companion matrix.
[[nodiscard]] Eigen::MatrixXd companion(const VarForm& var);
/// Largest eigenvalue modulus of the companion matrix.
[[nodiscard]] double spectral_radius(const VarForm& var);

struct VarFit {
    VarForm form;
    Eigen::MatrixXd residuals;
    Eigen::MatrixXd sigma;  // U'U / T
};

/// Least-squares levels VAR with a constant, using rows from `first_row`
/// (at least `lag`) onwards as the dependent sample.
[[nodiscard]] VarFit fit_var(const Eigen::MatrixXd& levels, std::size_t lag, std::size_t first_row = 0);

/// Schwarz criterion lag choice for a levels VAR with a constant. Every
/// candidate 1..max_lag is fit on the same sample; ties go to the shorter
/// lag. Throws InsufficientObservations.
[[nodiscard]] std::size_t select_lag(const Eigen::MatrixXd& levels, std::size_t max_lag,
                                     std::vector<double>* criteria = nullptr);

}  // namespace affect::econ
