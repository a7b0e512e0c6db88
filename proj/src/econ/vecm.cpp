#include "affect/econ/vecm.hpp"

#include "affect/econ/linalg.hpp"
#include "affect/econ/panel.hpp"
#include "affect/error.hpp"
#include "affect/text_io.hpp"

#include <fstream>
#include <sstream>

namespace affect::econ {

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from(const nlohmann::json& j, Eigen::Index cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix in model file");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
}

Eigen::VectorXd vector_from(const nlohmann::json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j.at(static_cast<std::size_t>(i)).get<double>();
    return v;
}

}  // namespace

VecmModel estimate_vecm(const Eigen::MatrixXd& levels, std::vector<std::string> names, const VecmSpec& spec) {
    const auto k = levels.cols();
    if (static_cast<Eigen::Index>(names.size()) != k || static_cast<Eigen::Index>(spec.stationary.size()) != k) {
        throw Error(ErrorCode::DimensionMismatch, "VECM spec does not match the number of variables");
    }
    if (spec.lag < 1) throw Error(ErrorCode::InvalidArgument, "VECM lag must be at least 1");
    if (!levels.allFinite()) throw Error(ErrorCode::NonFinite, "panel has non-finite values");

    std::vector<Eigen::Index> nonstat;
    std::vector<Eigen::Index> stat;
    for (Eigen::Index c = 0; c < k; ++c) (spec.stationary[static_cast<std::size_t>(c)] ? stat : nonstat).push_back(c);
    const auto r = static_cast<Eigen::Index>(spec.rank);
    if (r > static_cast<Eigen::Index>(nonstat.size())) {
        throw Error(ErrorCode::RankTooLarge, "rank " + std::to_string(spec.rank) + " exceeds the " +
                                                 std::to_string(nonstat.size()) + " non-stationary variables");
    }

    VecmModel model;
    model.names = std::move(names);
    model.spec = spec;
    const auto n_rel = r + static_cast<Eigen::Index>(stat.size());
    model.beta = Eigen::MatrixXd::Zero(k, n_rel);
    if (r > 0) {
        Eigen::MatrixXd block(levels.rows(), static_cast<Eigen::Index>(nonstat.size()));
        for (std::size_t i = 0; i < nonstat.size(); ++i) block.col(static_cast<Eigen::Index>(i)) = levels.col(nonstat[i]);
        const auto johansen = johansen_trace(block, spec.lag);
        model.johansen_eigenvalues = johansen.eigenvalues;
        const auto beta_n = normalized_beta(johansen, spec.rank);
        for (std::size_t i = 0; i < nonstat.size(); ++i) model.beta.row(nonstat[i]).head(r) = beta_n.row(static_cast<Eigen::Index>(i));
    }
    for (std::size_t i = 0; i < stat.size(); ++i) model.beta(stat[i], r + static_cast<Eigen::Index>(i)) = 1.0;

    const auto p = static_cast<Eigen::Index>(spec.lag);
    const auto dy = diff_rows(levels);
    const auto t = levels.rows() - p;
    const auto n_reg = n_rel + k * (p - 1) + 1;
    if (t <= n_reg) {
        throw Error(ErrorCode::InsufficientObservations,
                    std::to_string(levels.rows()) + " observations for " + std::to_string(n_reg) + " regressors per equation");
    }
    // Observation s = i + p; dy_s = dy(s - 1).
    Eigen::MatrixXd x(t, n_reg);
    x.leftCols(n_rel) = levels.middleRows(p - 1, t) * model.beta;
    for (Eigen::Index j = 1; j < p; ++j) x.middleCols(n_rel + k * (j - 1), k) = dy.middleRows(p - 1 - j, t);
    x.col(n_reg - 1).setOnes();
    const auto fit = ols(x, dy.bottomRows(t));

    model.alpha = fit.coef.topRows(n_rel).transpose();
    for (Eigen::Index j = 1; j < p; ++j) model.gamma.push_back(fit.coef.middleRows(n_rel + k * (j - 1), k).transpose());
    model.intercept = fit.coef.row(n_reg - 1).transpose();
    model.residuals = fit.residuals;
    model.sigma = fit.residuals.transpose() * fit.residuals / static_cast<double>(t);
    model.sigma = 0.5 * (model.sigma + model.sigma.transpose());
    return model;
}

VecmModel estimate_vecm(const MacroPanel& panel, std::size_t rank, std::size_t lag) {
    return estimate_vecm(panel.values, panel.names, VecmSpec{rank, panel.stationary, lag});
}

VarForm vecm_to_var(const VecmModel& model) {
    const auto k = model.dimension();
    const auto p = model.spec.lag;
    const Eigen::MatrixXd pi = model.alpha * model.beta.transpose();
    VarForm var;
    var.intercept = model.intercept;
    var.coefficients.assign(p, Eigen::MatrixXd::Zero(k, k));
    var.coefficients[0] = Eigen::MatrixXd::Identity(k, k) + pi;
    for (std::size_t i = 1; i < p; ++i) {
        var.coefficients[i - 1] += model.gamma[i - 1];
        var.coefficients[i] -= model.gamma[i - 1];
    }
    return var;
}

Eigen::MatrixXd vecm_fitted(const VecmModel& model, const Eigen::MatrixXd& levels) {
    const auto p = static_cast<Eigen::Index>(model.spec.lag);
    const auto t = levels.rows() - p;
    const auto dy = diff_rows(levels);
    const Eigen::MatrixXd ect = levels.middleRows(p - 1, t) * model.beta;
    Eigen::MatrixXd d = ect * model.alpha.transpose();
    d.rowwise() += model.intercept.transpose();
    for (Eigen::Index j = 1; j < p; ++j) d += dy.middleRows(p - 1 - j, t) * model.gamma[static_cast<std::size_t>(j - 1)].transpose();
    return levels.middleRows(p - 1, t) + d;
}

void to_json(nlohmann::json& j, const VecmModel& model) {
    auto gamma = nlohmann::json::array();
    for (const auto& g : model.gamma) gamma.push_back(matrix_json(g));
    j = nlohmann::json{
        {"format", "affect-vecm"},
        {"deterministic", "unrestricted-constant"},
        {"variables", model.names},
        {"stationary", model.spec.stationary},
        {"rank", model.spec.rank},
        {"lag", model.spec.lag},
        {"beta", matrix_json(model.beta)},
        {"alpha", matrix_json(model.alpha)},
        {"gamma", gamma},
        {"intercept", std::vector<double>(model.intercept.data(), model.intercept.data() + model.intercept.size())},
        {"sigma", matrix_json(model.sigma)},
        {"residuals", matrix_json(model.residuals)},
        {"johansen_eigenvalues",
         std::vector<double>(model.johansen_eigenvalues.data(),
                             model.johansen_eigenvalues.data() + model.johansen_eigenvalues.size())},
    };
}

void from_json(const nlohmann::json& j, VecmModel& model) {
    if (j.value("format", "") != "affect-vecm") throw Error(ErrorCode::MalformedRecord, "not a VECM model file");
    model.names = j.at("variables").get<std::vector<std::string>>();
    const auto k = static_cast<Eigen::Index>(model.names.size());
    model.spec.stationary = j.at("stationary").get<std::vector<bool>>();
    model.spec.rank = j.at("rank").get<std::size_t>();
    model.spec.lag = j.at("lag").get<std::size_t>();
    const auto n_rel = static_cast<Eigen::Index>(j.at("beta").empty() ? 0 : j.at("beta").at(0).size());
    model.beta = matrix_from(j.at("beta"), n_rel);
    model.alpha = matrix_from(j.at("alpha"), n_rel);
    model.gamma.clear();
    for (const auto& g : j.at("gamma")) model.gamma.push_back(matrix_from(g, k));
    model.intercept = vector_from(j.at("intercept"));
    model.sigma = matrix_from(j.at("sigma"), k);
    model.residuals = matrix_from(j.at("residuals"), k);
    model.johansen_eigenvalues = vector_from(j.at("johansen_eigenvalues"));
    if (model.beta.rows() != k || model.alpha.rows() != k || model.intercept.size() != k ||
        model.gamma.size() + 1 != model.spec.lag || model.spec.stationary.size() != model.names.size()) {
        throw Error(ErrorCode::DimensionMismatch, "inconsistent VECM model file");
    }
}

void save_model(const VecmModel& model, const std::filesystem::path& path) {
    io::write_file(path, nlohmann::json(model).dump(1) + "\n");
}

VecmModel load_model(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw Error(ErrorCode::MissingModel, "no VECM model at " + path.string() + "; run `econ vecm` first");
    }
    std::ifstream in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, path.string() + ": " + e.what());
    }
    try {
        return j.get<VecmModel>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, path.string() + ": " + e.what());
    }
}

}  // namespace affect::econ
