#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>

namespace affect::econ {

struct JohansenResult {
    Eigen::VectorXd eigenvalues;   // descending, in [0, 1)
    Eigen::VectorXd trace;         // trace(r) for H0: rank <= r, r = 0..K-1
    Eigen::MatrixXd critical;      // K x 3: 90%, 95%, 99% for each r
    Eigen::MatrixXd eigenvectors;  // K x K, columns ordered with eigenvalues
    std::size_t rank = 0;          // first r not rejected at 5%
    std::size_t lag = 1;           // levels lag
    std::size_t nobs = 0;
};

/// Johansen reduced-rank regression with an unrestricted constant.
/// `levels` is T x K, `lag` the levels-VAR order (lag - 1 lagged
/// differences enter the short-run block). Throws SingularMatrix.
[[nodiscard]] JohansenResult johansen_trace(const Eigen::MatrixXd& levels, std::size_t lag);

/// Trace critical values (90/95/99%) for `n_common_trends` = K - r, with an
/// unrestricted constant. Supports 1..12.
[[nodiscard]] std::array<double, 3> johansen_trace_critical(std::size_t n_common_trends);

/// Cointegrating vectors for rank r, normalized so the leading r x r block
/// is the identity. Throws SingularMatrix.
[[nodiscard]] Eigen::MatrixXd normalized_beta(const JohansenResult& result, std::size_t rank);

}  // namespace affect::econ
