#pragma once

#include "affect/econ/var.hpp"
#include "affect/econ/vecm.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace affect::econ {

/// Lower-triangular L with L L' = sigma. A ridge of 1e-10 x mean diagonal
/// is added only if the plain factorization fails; `ridged` reports it.
/// Throws NotPositiveDefinite if the ridge does not help either.
[[nodiscard]] Eigen::MatrixXd cholesky_impact(const Eigen::MatrixXd& sigma, bool* ridged = nullptr);

struct IrfBands {
    std::vector<Eigen::MatrixXd> lower;
    std::vector<Eigen::MatrixXd> upper;
    double level = 0.95;
    std::size_t replications = 0;  // kept
    std::size_t dropped = 0;
};

/// response[h](i, j): response of variable i at horizon h to a one
/// standard deviation orthogonalized shock in variable j.
struct IrfResult {
    std::vector<std::string> names;
    std::vector<Eigen::MatrixXd> response;  // horizons 0..H
    double spectral_radius = 0.0;
    bool explosive = false;
    std::optional<IrfBands> bands;

    [[nodiscard]] std::size_t horizon() const noexcept { return response.empty() ? 0 : response.size() - 1; }
};

/// Companion-power responses Theta_h = J C^h J' impact for h = 0..H,
/// without diagnostics. Throws NumericOverflow.
[[nodiscard]] std::vector<Eigen::MatrixXd> orthogonal_responses(const VarForm& var, const Eigen::MatrixXd& impact,
                                                                std::size_t horizon);

/// Orthogonalized responses from powers of the companion matrix applied to
/// the impact block. Throws NumericOverflow if a response stops being finite.
[[nodiscard]] IrfResult impulse_response(const VarForm& var, const Eigen::MatrixXd& impact,
                                         std::vector<std::string> names, std::size_t horizon);
[[nodiscard]] IrfResult impulse_response(const VecmModel& model, std::size_t horizon);

/// share[h-1](i, j): fraction of variable i's h-step forecast error variance
/// due to shock j, for h = 1..H.
struct FevdResult {
    std::vector<std::string> names;
    std::vector<Eigen::MatrixXd> share;
};

[[nodiscard]] FevdResult fevd(const IrfResult& irf, std::size_t horizon);
[[nodiscard]] FevdResult fevd(const VecmModel& model, std::size_t horizon);

/// `horizon,response,shock,point,lower,upper`; bands empty when absent.
/// An empty `shock` writes every shock.
[[nodiscard]] std::string format_irf_csv(const IrfResult& irf, const std::string& shock = {});
/// `horizon,variable,shock,share`
[[nodiscard]] std::string format_fevd_csv(const FevdResult& fevd);

}  // namespace affect::econ
