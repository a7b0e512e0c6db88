#pragma once

#include "affect/econ/dynamics.hpp"
#include "affect/econ/vecm.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>

namespace affect::econ {

struct BootstrapOptions {
    std::size_t replications = 1000;
    double level = 0.95;
    std::size_t horizon = 24;
    std::uint64_t seed = 0;
    double max_drop_fraction = 0.05;
};

/// Residual-based recursive bootstrap with Hall percentile intervals
/// [2 theta - q(1 - a/2), 2 theta - q(a/2)], pointwise per response, shock
/// and horizon. Each replication resamples centered residual rows, rebuilds
/// the sample from the first `lag` observed rows, re-estimates the model
/// with the same spec and recomputes the responses. Replications that fail
/// to re-estimate are dropped; BootstrapFailure if more than
/// `max_drop_fraction` of them fail.
[[nodiscard]] IrfResult hall_bootstrap_irf(const VecmModel& model, const Eigen::MatrixXd& levels,
                                           const BootstrapOptions& options);

/// One bootstrap sample: same initial rows as `levels`, then the levels VAR
/// driven by `residuals` (T - lag rows).
[[nodiscard]] Eigen::MatrixXd simulate_levels(const VarForm& var, const Eigen::MatrixXd& initial,
                                              const Eigen::MatrixXd& residuals);

}  // namespace affect::econ
