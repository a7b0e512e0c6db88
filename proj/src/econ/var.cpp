#include "affect/econ/var.hpp"

#include "affect/econ/linalg.hpp"
#include "affect/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace affect::econ {

namespace {

Eigen::MatrixXd lagged_design(const Eigen::MatrixXd& levels, std::size_t lag, std::size_t first_row) {
    const auto k = levels.cols();
    const auto rows = levels.rows() - static_cast<Eigen::Index>(first_row);
    Eigen::MatrixXd x(rows, 1 + k * static_cast<Eigen::Index>(lag));
    x.col(0).setOnes();
    for (std::size_t i = 1; i <= lag; ++i) {
        x.middleCols(1 + k * static_cast<Eigen::Index>(i - 1), k) =
            levels.middleRows(static_cast<Eigen::Index>(first_row - i), rows);
    }
    return x;
}

}  // namespace

Eigen::MatrixXd VarForm::fitted(const Eigen::MatrixXd& levels) const {
    const auto p = static_cast<Eigen::Index>(lag());
    const auto rows = levels.rows() - p;
    Eigen::MatrixXd out = intercept.transpose().replicate(rows, 1);
    for (Eigen::Index i = 1; i <= p; ++i) {
        out += levels.middleRows(p - i, rows) * coefficients[static_cast<std::size_t>(i - 1)].transpose();
    }
    return out;
}

Eigen::MatrixXd companion(const VarForm& var) {
    const auto k = var.dimension();
    const auto p = static_cast<Eigen::Index>(var.lag());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k * p, k * p);
    for (Eigen::Index i = 0; i < p; ++i) c.block(0, i * k, k, k) = var.coefficients[static_cast<std::size_t>(i)];
    if (p > 1) c.block(k, 0, k * (p - 1), k * (p - 1)).setIdentity();
    return c;
}

double spectral_radius(const VarForm& var) {
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion(var), false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

VarFit fit_var(const Eigen::MatrixXd& levels, std::size_t lag, std::size_t first_row) {
    if (lag == 0) throw Error(ErrorCode::InvalidArgument, "VAR lag must be at least 1");
    first_row = std::max(first_row, lag);
    const auto k = levels.cols();
    if (levels.rows() - static_cast<Eigen::Index>(first_row) < 1 + k * static_cast<Eigen::Index>(lag) + k) {
        throw Error(ErrorCode::InsufficientObservations,
                    std::to_string(levels.rows()) + " observations for a lag-" + std::to_string(lag) + " VAR in " +
                        std::to_string(k) + " variables");
    }
    const auto x = lagged_design(levels, lag, first_row);
    const Eigen::MatrixXd y = levels.bottomRows(x.rows());
    auto fit = ols(x, y);

    VarFit out;
    out.form.intercept = fit.coef.row(0).transpose();
    for (std::size_t i = 0; i < lag; ++i) {
        out.form.coefficients.push_back(fit.coef.middleRows(1 + k * static_cast<Eigen::Index>(i), k).transpose());
    }
    out.sigma = fit.residuals.transpose() * fit.residuals / static_cast<double>(x.rows());
    out.residuals = std::move(fit.residuals);
    return out;
}

std::size_t select_lag(const Eigen::MatrixXd& levels, std::size_t max_lag, std::vector<double>* criteria) {
    if (max_lag == 0) throw Error(ErrorCode::InvalidArgument, "max lag must be at least 1");
    const auto k = static_cast<double>(levels.cols());
    std::size_t best = 1;
    double best_ic = std::numeric_limits<double>::infinity();
    if (criteria != nullptr) criteria->clear();
    for (std::size_t p = 1; p <= max_lag; ++p) {
        const auto fit = fit_var(levels, p, max_lag);
        const double t = static_cast<double>(fit.residuals.rows());
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(fit.sigma);
        const double log_det = ldlt.vectorD().array().log().sum();
        if (!std::isfinite(log_det)) {
            throw Error(ErrorCode::SingularMatrix, "residual covariance of lag-" + std::to_string(p) + " VAR is singular");
        }
        const double params = static_cast<double>(p) * k * k + k;
        const double ic = log_det + std::log(t) / t * params;
        if (criteria != nullptr) criteria->push_back(ic);
        if (ic < best_ic) {
            best_ic = ic;
            best = p;
        }
    }
    return best;
}

}  // namespace affect::econ
