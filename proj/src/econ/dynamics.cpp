#include "affect/econ/dynamics.hpp"

#include "affect/error.hpp"
#include "affect/log.hpp"
#include "affect/text_io.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <string>

namespace affect::econ {

Eigen::MatrixXd cholesky_impact(const Eigen::MatrixXd& sigma, bool* ridged) {
    if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "covariance matrix must be square and non-empty");
    }
    if (!sigma.allFinite()) throw Error(ErrorCode::NonFinite, "covariance has non-finite entries");
    if (ridged != nullptr) *ridged = false;
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() == Eigen::Success && (llt.matrixLLT().diagonal().array() > 0.0).all()) {
        return llt.matrixL();
    }
    const double ridge = 1e-10 * sigma.diagonal().mean();
    Eigen::MatrixXd adjusted = sigma;
    adjusted.diagonal().array() += ridge;
    llt.compute(adjusted);
    if (ridge <= 0.0 || llt.info() != Eigen::Success || !(llt.matrixLLT().diagonal().array() > 0.0).all()) {
        throw Error(ErrorCode::NotPositiveDefinite, "residual covariance is not positive definite");
    }
    log::warn("residual covariance near singular; added ridge {} before Cholesky", ridge);
    if (ridged != nullptr) *ridged = true;
    return llt.matrixL();
}

std::vector<Eigen::MatrixXd> orthogonal_responses(const VarForm& var, const Eigen::MatrixXd& impact,
                                                  std::size_t horizon) {
    const auto k = var.dimension();
    const auto p = static_cast<Eigen::Index>(var.lag());
    if (impact.rows() != k || impact.cols() != k) {
        throw Error(ErrorCode::DimensionMismatch, "impact matrix does not match the VAR dimension");
    }
    const auto c = companion(var);
    Eigen::MatrixXd state = Eigen::MatrixXd::Zero(k * p, k);
    state.topRows(k) = impact;
    std::vector<Eigen::MatrixXd> out;
    out.reserve(horizon + 1);
    out.push_back(impact);
    for (std::size_t h = 1; h <= horizon; ++h) {
        state = c * state;
        if (!state.allFinite()) {
            throw Error(ErrorCode::NumericOverflow, "impulse responses overflow at horizon " + std::to_string(h));
        }
        out.push_back(state.topRows(k));
    }
    return out;
}

IrfResult impulse_response(const VarForm& var, const Eigen::MatrixXd& impact, std::vector<std::string> names,
                           std::size_t horizon) {
    if (static_cast<Eigen::Index>(names.size()) != var.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "variable names do not match the VAR dimension");
    }
    IrfResult out;
    out.names = std::move(names);
    out.spectral_radius = spectral_radius(var);
    out.explosive = out.spectral_radius > 1.0 + 1e-8;
    if (out.explosive) log::warn("companion matrix has explosive roots (spectral radius {})", out.spectral_radius);
    try {
        out.response = orthogonal_responses(var, impact, horizon);
    } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (spectral radius " + io::format_double(out.spectral_radius) + ")");
    }
    return out;
}

IrfResult impulse_response(const VecmModel& model, std::size_t horizon) {
    return impulse_response(vecm_to_var(model), cholesky_impact(model.sigma), model.names, horizon);
}

FevdResult fevd(const IrfResult& irf, std::size_t horizon) {
    if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "FEVD horizon must be at least 1");
    if (irf.response.size() < horizon) throw Error(ErrorCode::InvalidArgument, "not enough IRF horizons for FEVD");
    FevdResult out;
    out.names = irf.names;
    Eigen::MatrixXd cumulative = Eigen::MatrixXd::Zero(irf.response[0].rows(), irf.response[0].cols());
    for (std::size_t h = 0; h < horizon; ++h) {
        cumulative += irf.response[h].cwiseAbs2();
        const Eigen::VectorXd total = cumulative.rowwise().sum();
        out.share.push_back(total.cwiseInverse().asDiagonal() * cumulative);
    }
    return out;
}

FevdResult fevd(const VecmModel& model, std::size_t horizon) {
    return fevd(impulse_response(model, horizon - 1), horizon);
}

std::string format_irf_csv(const IrfResult& irf, const std::string& shock) {
    std::string out = "horizon,response,shock,point,lower,upper\n";
    const auto k = irf.names.size();
    std::size_t first = 0;
    std::size_t last = k;
    if (!shock.empty()) {
        const auto it = std::find(irf.names.begin(), irf.names.end(), shock);
        if (it == irf.names.end()) throw Error(ErrorCode::MissingFeature, "no variable named '" + shock + "' to shock");
        first = static_cast<std::size_t>(it - irf.names.begin());
        last = first + 1;
    }
    for (std::size_t h = 0; h < irf.response.size(); ++h) {
        for (std::size_t j = first; j < last; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                const auto r = static_cast<Eigen::Index>(i);
                const auto c = static_cast<Eigen::Index>(j);
                out += std::to_string(h) + "," + irf.names[i] + "," + irf.names[j] + "," +
                       io::format_double(irf.response[h](r, c)) + ",";
                if (irf.bands) {
                    out += io::format_double(irf.bands->lower[h](r, c)) + "," + io::format_double(irf.bands->upper[h](r, c));
                } else {
                    out += ",";
                }
                out += "\n";
            }
        }
    }
    return out;
}

std::string format_fevd_csv(const FevdResult& fevd) {
    std::string out = "horizon,variable,shock,share\n";
    for (std::size_t h = 0; h < fevd.share.size(); ++h) {
        for (std::size_t i = 0; i < fevd.names.size(); ++i) {
            for (std::size_t j = 0; j < fevd.names.size(); ++j) {
                out += std::to_string(h + 1) + "," + fevd.names[i] + "," + fevd.names[j] + "," +
                       io::format_double(fevd.share[h](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) + "\n";
            }
        }
    }
    return out;
}

}  // namespace affect::econ
