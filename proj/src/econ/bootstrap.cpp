#include "affect/econ/bootstrap.hpp"

#include "affect/error.hpp"
#include "affect/log.hpp"
#include "affect/parallel.hpp"
#include "affect/rng.hpp"
#include "affect/stats.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace affect::econ {

Eigen::MatrixXd simulate_levels(const VarForm& var, const Eigen::MatrixXd& initial, const Eigen::MatrixXd& residuals) {
    const auto p = static_cast<Eigen::Index>(var.lag());
    const auto k = var.dimension();
    if (initial.rows() != p || initial.cols() != k || residuals.cols() != k) {
        throw Error(ErrorCode::DimensionMismatch, "initial rows or residuals do not match the VAR");
    }
    Eigen::MatrixXd y(p + residuals.rows(), k);
    y.topRows(p) = initial;
    for (Eigen::Index t = p; t < y.rows(); ++t) {
        Eigen::VectorXd next = var.intercept + residuals.row(t - p).transpose();
        for (Eigen::Index i = 1; i <= p; ++i) next.noalias() += var.coefficients[static_cast<std::size_t>(i - 1)] * y.row(t - i).transpose();
        y.row(t) = next.transpose();
    }
    return y;
}

IrfResult hall_bootstrap_irf(const VecmModel& model, const Eigen::MatrixXd& levels, const BootstrapOptions& options) {
    if (options.replications < 100) {
        throw Error(ErrorCode::InvalidArgument, "bootstrap needs at least 100 replications");
    }
    if (!(options.level > 0.0 && options.level < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "confidence level must lie in (0, 1)");
    }
    const auto p = static_cast<Eigen::Index>(model.spec.lag);
    if (levels.cols() != model.dimension() || levels.rows() - p != model.residuals.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "panel does not match the sample the model was estimated on");
    }

    auto point = impulse_response(model, options.horizon);
    const auto var = vecm_to_var(model);
    const Eigen::MatrixXd initial = levels.topRows(p);
    const Eigen::MatrixXd centered = model.residuals.rowwise() - model.residuals.colwise().mean();
    const auto n_resid = static_cast<std::uint64_t>(centered.rows());

    std::vector<std::optional<std::vector<Eigen::MatrixXd>>> draws(options.replications);
    parallel_for(options.replications, [&](std::size_t r) {
        Rng rng(derive_seed(options.seed, r));
        Eigen::MatrixXd resampled(centered.rows(), centered.cols());
        for (Eigen::Index t = 0; t < resampled.rows(); ++t) {
            resampled.row(t) = centered.row(static_cast<Eigen::Index>(rng.below(n_resid)));
        }
        try {
            const auto sample = simulate_levels(var, initial, resampled);
            if (!sample.allFinite()) return;
            const auto refit = estimate_vecm(sample, model.names, model.spec);
            const auto impact = cholesky_impact(refit.sigma);
            draws[r] = orthogonal_responses(vecm_to_var(refit), impact, options.horizon);
        } catch (const Error&) {
            draws[r].reset();
        }
    });

    std::vector<const std::vector<Eigen::MatrixXd>*> kept;
    for (const auto& d : draws) {
        if (d) kept.push_back(&*d);
    }
    IrfBands bands;
    bands.level = options.level;
    bands.replications = kept.size();
    bands.dropped = options.replications - kept.size();
    if (static_cast<double>(bands.dropped) > options.max_drop_fraction * static_cast<double>(options.replications)) {
        throw Error(ErrorCode::BootstrapFailure, std::to_string(bands.dropped) + " of " +
                                                     std::to_string(options.replications) +
                                                     " bootstrap replications failed to re-estimate");
    }
    if (bands.dropped > 0) log::warn("{} bootstrap replications dropped", bands.dropped);

    const double a = 1.0 - options.level;
    const auto k = model.dimension();
    std::vector<double> sample(kept.size());
    for (std::size_t h = 0; h <= options.horizon; ++h) {
        Eigen::MatrixXd lower(k, k);
        Eigen::MatrixXd upper(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                for (std::size_t r = 0; r < kept.size(); ++r) sample[r] = (*kept[r])[h](i, j);
                const double theta = point.response[h](i, j);
                lower(i, j) = 2.0 * theta - stats::quantile(sample, 1.0 - a / 2.0);
                upper(i, j) = 2.0 * theta - stats::quantile(sample, a / 2.0);
            }
        }
        bands.lower.push_back(std::move(lower));
        bands.upper.push_back(std::move(upper));
    }
    point.bands = std::move(bands);
    return point;
}

}  // namespace affect::econ
