#pragma once

#include <Eigen/Dense>

namespace affect::econ {

struct OlsFit {
    Eigen::MatrixXd coef;       // regressors x equations
    Eigen::MatrixXd residuals;  // observations x equations
};

/// Equation-wise least squares of every column of `y` on `x` through a
/// column-pivoted QR. Throws CollinearRegressors if `x` is rank deficient.
[[nodiscard]] OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// Single-equation least squares with conventional standard errors.
struct OlsStats {
    Eigen::VectorXd coef;
    Eigen::VectorXd std_error;
    double ssr = 0.0;
    Eigen::Index nobs = 0;
};

[[nodiscard]] OlsStats ols_stats(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

/// Residuals of `y` after projecting on `x` (x may have zero columns).
[[nodiscard]] Eigen::MatrixXd residualize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// Row-wise first differences.
[[nodiscard]] Eigen::MatrixXd diff_rows(const Eigen::MatrixXd& levels);

}  // namespace affect::econ
