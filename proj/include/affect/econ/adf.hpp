#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <string_view>

namespace affect::econ {

enum class Deterministic { Constant, ConstantTrend };

[[nodiscard]] std::string_view to_string(Deterministic det) noexcept;

struct AdfResult {
    double statistic = 0.0;
    std::size_t lag = 0;
    std::size_t max_lag = 0;
    std::size_t nobs = 0;
    Deterministic deterministic = Deterministic::Constant;
    std::array<double, 3> critical{};  // 1%, 5%, 10%
    bool rejected_5pct = false;
};

/// Augmented Dickey-Fuller test. The number of lagged differences is chosen
/// by the Schwarz criterion on a common sample, then the regression is refit
/// on every usable observation. Critical values follow MacKinnon (2010).
/// Throws SeriesTooShort (n <= max_lag + 10) and ConstantSeries.
[[nodiscard]] AdfResult adf_test(const Eigen::Ref<const Eigen::VectorXd>& series, std::size_t max_lag = 12,
                                 Deterministic deterministic = Deterministic::Constant);

/// MacKinnon (2010) response-surface critical values for one series.
[[nodiscard]] std::array<double, 3> adf_critical_values(Deterministic deterministic, std::size_t nobs);

}  // namespace affect::econ
