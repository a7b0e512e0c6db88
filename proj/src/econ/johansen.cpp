#include "affect/econ/johansen.hpp"

#include "affect/econ/linalg.hpp"
#include "affect/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace affect::econ {

namespace {

// MacKinnon, Haug and Michelis (1999) trace critical values, constant
// unrestricted, indexed by number of common trends.
constexpr double kTraceCritical[12][3] = {
    {2.7055, 3.8415, 6.6349},       {13.4294, 15.4943, 19.9349},    {27.0669, 29.7961, 35.4628},
    {44.4929, 47.8545, 54.6815},    {65.8202, 69.8189, 77.8202},    {91.1090, 95.7542, 104.9637},
    {120.3673, 125.6185, 135.9825}, {153.6341, 159.5290, 171.0905}, {190.8714, 197.3772, 210.0366},
    {232.1030, 239.2468, 253.2526}, {277.3740, 285.1402, 300.2821}, {326.5354, 334.9795, 351.2150},
};

}  // namespace

std::array<double, 3> johansen_trace_critical(std::size_t n_common_trends) {
    if (n_common_trends < 1 || n_common_trends > 12) {
        throw Error(ErrorCode::InvalidArgument,
                    "trace critical values cover 1 to 12 common trends, not " + std::to_string(n_common_trends));
    }
    const auto* row = kTraceCritical[n_common_trends - 1];
    return {row[0], row[1], row[2]};
}

JohansenResult johansen_trace(const Eigen::MatrixXd& levels, std::size_t lag) {
    const auto k = levels.cols();
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "Johansen test needs at least 2 variables");
    if (lag < 1) throw Error(ErrorCode::InvalidArgument, "Johansen lag must be at least 1");
    if (k > 12) throw Error(ErrorCode::InvalidArgument, "Johansen test supports at most 12 variables");
    const auto p = static_cast<Eigen::Index>(lag);
    const auto dy = diff_rows(levels);
    const auto t = dy.rows() - (p - 1);
    if (t <= k * p + 1) {
        throw Error(ErrorCode::InsufficientObservations, std::to_string(levels.rows()) + " observations for lag " +
                                                             std::to_string(lag) + " and " + std::to_string(k) + " variables");
    }

    // Row i targets dy(i + p - 1) = y_{s} - y_{s-1} with s = i + p.
    Eigen::MatrixXd z(t, 1 + k * (p - 1));
    z.col(0).setOnes();
    for (Eigen::Index j = 1; j < p; ++j) z.middleCols(1 + k * (j - 1), k) = dy.middleRows(p - 1 - j, t);
    const Eigen::MatrixXd r0 = residualize(z, dy.bottomRows(t));
    const Eigen::MatrixXd r1 = residualize(z, levels.middleRows(p - 1, t));

    const double tt = static_cast<double>(t);
    const Eigen::MatrixXd s00 = r0.transpose() * r0 / tt;
    const Eigen::MatrixXd s11 = r1.transpose() * r1 / tt;
    const Eigen::MatrixXd s01 = r0.transpose() * r1 / tt;

    const Eigen::LLT<Eigen::MatrixXd> l11(s11);
    const Eigen::LLT<Eigen::MatrixXd> l00(s00);
    if (l11.info() != Eigen::Success || l00.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularMatrix, "Johansen moment matrices are not positive definite");
    }
    // Symmetric form: L^-1 S10 S00^-1 S01 L^-T with S11 = L L'.
    const Eigen::MatrixXd a = l11.matrixL().solve(s01.transpose());
    Eigen::MatrixXd m = a * l00.solve(a.transpose());
    m = 0.5 * (m + m.transpose());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    if (eig.info() != Eigen::Success) throw Error(ErrorCode::SingularMatrix, "Johansen eigenproblem failed");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return eig.eigenvalues()(i) > eig.eigenvalues()(j); });

    const Eigen::MatrixXd vectors = l11.matrixU().solve(eig.eigenvectors());
    JohansenResult out;
    out.lag = lag;
    out.nobs = static_cast<std::size_t>(t);
    out.eigenvalues.resize(k);
    out.eigenvectors.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        out.eigenvalues(i) = std::clamp(eig.eigenvalues()(order[static_cast<std::size_t>(i)]), 0.0, std::nextafter(1.0, 0.0));
        out.eigenvectors.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
    }
    out.trace.resize(k);
    out.critical.resize(k, 3);
    out.rank = static_cast<std::size_t>(k);
    bool selected = false;
    for (Eigen::Index r = 0; r < k; ++r) {
        double stat = 0.0;
        for (Eigen::Index i = r; i < k; ++i) stat -= tt * std::log1p(-out.eigenvalues(i));
        out.trace(r) = stat;
        const auto cv = johansen_trace_critical(static_cast<std::size_t>(k - r));
        out.critical.row(r) << cv[0], cv[1], cv[2];
        if (!selected && stat < cv[1]) {
            out.rank = static_cast<std::size_t>(r);
            selected = true;
        }
    }
    return out;
}

Eigen::MatrixXd normalized_beta(const JohansenResult& result, std::size_t rank) {
    const auto r = static_cast<Eigen::Index>(rank);
    if (r == 0) return Eigen::MatrixXd(result.eigenvectors.rows(), 0);
    if (r > result.eigenvectors.cols()) {
        throw Error(ErrorCode::RankTooLarge, "rank " + std::to_string(rank) + " exceeds " +
                                                 std::to_string(result.eigenvectors.cols()) + " variables");
    }
    const Eigen::MatrixXd beta = result.eigenvectors.leftCols(r);
    const Eigen::FullPivLU<Eigen::MatrixXd> lead(beta.topRows(r));
    if (!lead.isInvertible()) {
        throw Error(ErrorCode::SingularMatrix, "leading block of the cointegrating vectors is singular");
    }
    return beta * lead.inverse();
}

}  // namespace affect::econ
