#include "affect/econ/linalg.hpp"

#include "affect/error.hpp"

#include <string>

namespace affect::econ {

namespace {

Eigen::ColPivHouseholderQR<Eigen::MatrixXd> checked_qr(const Eigen::MatrixXd& x) {
    if (x.rows() < x.cols()) {
        throw Error(ErrorCode::InsufficientObservations, std::to_string(x.rows()) + " observations for " +
                                                             std::to_string(x.cols()) + " regressors");
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-12);
    if (qr.rank() < x.cols()) {
        throw Error(ErrorCode::CollinearRegressors,
                    "regressor matrix has rank " + std::to_string(qr.rank()) + " of " + std::to_string(x.cols()));
    }
    return qr;
}

}  // namespace

OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    OlsFit fit;
    if (x.cols() == 0) {
        fit.coef = Eigen::MatrixXd::Zero(0, y.cols());
        fit.residuals = y;
        return fit;
    }
    const auto qr = checked_qr(x);
    fit.coef = qr.solve(y);
    fit.residuals = y - x * fit.coef;
    return fit;
}

OlsStats ols_stats(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    const auto qr = checked_qr(x);
    OlsStats out;
    out.nobs = x.rows();
    out.coef = qr.solve(y);
    const Eigen::VectorXd resid = y - x * out.coef;
    out.ssr = resid.squaredNorm();
    const auto k = x.cols();
    const double s2 = out.ssr / static_cast<double>(x.rows() - k);
    // (X'X)^-1 = P R^-1 R^-T P'
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::VectorXd diag_perm = r_inv.rowwise().squaredNorm();
    out.std_error.resize(k);
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = 0; i < k; ++i) out.std_error(perm(i)) = std::sqrt(s2 * diag_perm(i));
    return out;
}

Eigen::MatrixXd residualize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    return ols(x, y).residuals;
}

Eigen::MatrixXd diff_rows(const Eigen::MatrixXd& levels) {
    if (levels.rows() < 2) return Eigen::MatrixXd(0, levels.cols());
    return levels.bottomRows(levels.rows() - 1) - levels.topRows(levels.rows() - 1);
}

}  // namespace affect::econ
