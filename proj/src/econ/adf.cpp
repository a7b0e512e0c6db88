#include "affect/econ/adf.hpp"

#include "affect/econ/linalg.hpp"
#include "affect/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace affect::econ {

namespace {

// tau_c and tau_ct rows for N = 1: {1%, 5%, 10%} x {b0, b1, b2, b3}.
constexpr double kTauC[3][4] = {
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
};
constexpr double kTauCt[3][4] = {
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
};

/// Columns: deterministic terms, y_{t-1}, then `lags` lagged differences.
/// Rows use observations t = start .. n-1 of the differenced series.
Eigen::MatrixXd design(const Eigen::VectorXd& y, const Eigen::VectorXd& dy, std::size_t lags, std::size_t start,
                       Deterministic det) {
    const auto rows = dy.size() - static_cast<Eigen::Index>(start);
    const Eigen::Index n_det = det == Deterministic::Constant ? 1 : 2;
    Eigen::MatrixXd x(rows, n_det + 1 + static_cast<Eigen::Index>(lags));
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto t = i + static_cast<Eigen::Index>(start);  // index into dy; dy(t) = y(t+1) - y(t)
        x(i, 0) = 1.0;
        if (n_det == 2) x(i, 1) = static_cast<double>(t + 1);
        x(i, n_det) = y(t);
        for (std::size_t j = 1; j <= lags; ++j) x(i, n_det + static_cast<Eigen::Index>(j)) = dy(t - static_cast<Eigen::Index>(j));
    }
    return x;
}

}  // namespace

std::string_view to_string(Deterministic det) noexcept {
    return det == Deterministic::Constant ? "constant" : "constant+trend";
}

std::array<double, 3> adf_critical_values(Deterministic deterministic, std::size_t nobs) {
    const auto& table = deterministic == Deterministic::Constant ? kTauC : kTauCt;
    const double inv = 1.0 / static_cast<double>(nobs);
    std::array<double, 3> out{};
    for (int level = 0; level < 3; ++level) {
        const auto* b = table[level];
        out[static_cast<std::size_t>(level)] = b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
    }
    return out;
}

AdfResult adf_test(const Eigen::Ref<const Eigen::VectorXd>& series, std::size_t max_lag, Deterministic deterministic) {
    const auto n = static_cast<std::size_t>(series.size());
    if (n <= max_lag + 10) {
        throw Error(ErrorCode::SeriesTooShort,
                    std::to_string(n) + " observations; need more than " + std::to_string(max_lag + 10));
    }
    if (!series.allFinite()) throw Error(ErrorCode::NonFinite, "series has non-finite values");
    if (series.maxCoeff() == series.minCoeff()) throw Error(ErrorCode::ConstantSeries, "series is constant");

    const Eigen::VectorXd y = series;
    const Eigen::VectorXd dy = y.tail(n - 1) - y.head(n - 1);

    std::size_t best_lag = 0;
    double best_ic = std::numeric_limits<double>::infinity();
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        const auto x = design(y, dy, lag, max_lag, deterministic);
        const Eigen::VectorXd target = dy.tail(x.rows());
        const auto fit = ols(x, target);
        const double nobs = static_cast<double>(x.rows());
        const double ic = nobs * std::log(fit.residuals.squaredNorm() / nobs) + static_cast<double>(x.cols()) * std::log(nobs);
        if (ic < best_ic) {
            best_ic = ic;
            best_lag = lag;
        }
    }

    const auto x = design(y, dy, best_lag, best_lag, deterministic);
    const auto fit = ols_stats(x, dy.tail(x.rows()));
    const Eigen::Index level_col = deterministic == Deterministic::Constant ? 1 : 2;

    AdfResult result;
    result.deterministic = deterministic;
    result.lag = best_lag;
    result.max_lag = max_lag;
    result.nobs = static_cast<std::size_t>(x.rows());
    result.statistic = fit.coef(level_col) / fit.std_error(level_col);
    result.critical = adf_critical_values(deterministic, result.nobs);
    result.rejected_5pct = result.statistic < result.critical[1];
    return result;
}

}  // namespace affect::econ
