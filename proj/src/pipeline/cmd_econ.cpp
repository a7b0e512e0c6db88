#include "pipeline.hpp"

#include "affect/econ/adf.hpp"
#include "affect/econ/bootstrap.hpp"
#include "affect/econ/dynamics.hpp"
#include "affect/econ/johansen.hpp"
#include "affect/econ/var.hpp"
#include "affect/econ/vecm.hpp"
#include "affect/error.hpp"
#include "affect/log.hpp"
#include "affect/text_io.hpp"

#include <algorithm>

namespace affect::pipeline {

namespace {

bool contains(const std::vector<std::string>& names, const std::string& name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<double> as_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::MatrixXd columns(const econ::MacroPanel& panel, const std::vector<std::size_t>& cols) {
    Eigen::MatrixXd out(panel.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = panel.values.col(static_cast<Eigen::Index>(cols[i]));
    return out;
}

std::size_t resolve_lag(const RunConfig& config, const econ::MacroPanel& panel, nlohmann::json* record) {
    if (config.lag > 0) {
        if (record != nullptr) (*record)["lag_source"] = "configured";
        return config.lag;
    }
    std::vector<double> criteria;
    const auto lag = econ::select_lag(panel.values, config.var_max_lag, &criteria);
    if (record != nullptr) {
        (*record)["lag_source"] = "schwarz";
        (*record)["lag_criteria"] = criteria;
    }
    return lag;
}

nlohmann::json johansen_json(const econ::JohansenResult& result, const std::vector<std::string>& names) {
    auto critical = nlohmann::json::array();
    for (Eigen::Index r = 0; r < result.critical.rows(); ++r) {
        critical.push_back({result.critical(r, 0), result.critical(r, 1), result.critical(r, 2)});
    }
    return {{"variables", names},
            {"deterministic", "unrestricted-constant"},
            {"lag", result.lag},
            {"nobs", result.nobs},
            {"eigenvalues", as_vector(result.eigenvalues)},
            {"trace", as_vector(result.trace)},
            {"critical_90_95_99", critical},
            {"selected_rank", result.rank}};
}

std::filesystem::path model_path(const RunConfig& config) { return config.out / "econ" / "vecm.json"; }

econ::VecmModel load_matching_model(const RunConfig& config, const econ::MacroPanel& panel) {
    auto model = econ::load_model(model_path(config));
    if (model.names != panel.names) {
        throw Error(ErrorCode::DimensionMismatch, "model variables differ from the configured panel; rerun `econ vecm`");
    }
    if (panel.rows() - static_cast<Eigen::Index>(model.spec.lag) != model.residuals.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "model sample differs from the configured panel; rerun `econ vecm`");
    }
    return model;
}

void run_adf(const RunConfig& config, const econ::MacroPanel& panel) {
    StageWriter writer(config, "econ", "adf");
    std::string csv = "variable,statistic,lag,nobs,cv_1pct,cv_5pct,cv_10pct,rejected_5pct,declared_stationary\n";
    for (std::size_t c = 0; c < panel.names.size(); ++c) {
        econ::AdfResult result;
        try {
            result = econ::adf_test(panel.values.col(static_cast<Eigen::Index>(c)), config.adf_max_lag);
        } catch (...) {
            rethrow_in_stage("econ adf", panel.names[c]);
        }
        if (result.rejected_5pct != panel.stationary[c]) {
            log::warn("econ adf: {} is declared {} but the test {} a unit root at 5%", panel.names[c],
                      panel.stationary[c] ? "stationary" : "non-stationary",
                      result.rejected_5pct ? "rejects" : "does not reject");
        }
        csv += panel.names[c] + "," + io::format_double(result.statistic) + "," + std::to_string(result.lag) + "," +
               std::to_string(result.nobs) + "," + io::format_double(result.critical[0]) + "," +
               io::format_double(result.critical[1]) + "," + io::format_double(result.critical[2]) + "," +
               (result.rejected_5pct ? "true" : "false") + "," + (panel.stationary[c] ? "true" : "false") + "\n";
    }
    writer.write("adf.csv", csv);
    writer.extra()["deterministic"] = "constant";
    writer.extra()["max_lag"] = config.adf_max_lag;
    writer.extra()["lag_selection"] = "schwarz";
    writer.finish();
}

void run_johansen(const RunConfig& config, const econ::MacroPanel& panel) {
    StageWriter writer(config, "econ", "johansen");
    const auto block = panel.nonstationary_columns();
    std::vector<std::string> names;
    for (auto c : block) names.push_back(panel.names[c]);
    try {
        auto record = nlohmann::json::object();
        const auto lag = resolve_lag(config, panel, &record);
        const auto result = econ::johansen_trace(columns(panel, block), lag);
        auto j = johansen_json(result, names);
        for (const auto& [key, value] : record.items()) j[key] = value;
        writer.write_json("johansen.json", j);
        std::string csv = "rank,eigenvalue,trace,cv_90,cv_95,cv_99\n";
        for (Eigen::Index r = 0; r < result.trace.size(); ++r) {
            csv += std::to_string(r) + "," + io::format_double(result.eigenvalues(r)) + "," +
                   io::format_double(result.trace(r)) + "," + io::format_double(result.critical(r, 0)) + "," +
                   io::format_double(result.critical(r, 1)) + "," + io::format_double(result.critical(r, 2)) + "\n";
        }
        writer.write("johansen.csv", csv);
    } catch (...) {
        rethrow_in_stage("econ johansen", config.panel);
    }
    writer.finish();
}

void run_vecm(const RunConfig& config, const econ::MacroPanel& panel) {
    StageWriter writer(config, "econ", "vecm");
    try {
        auto summary = nlohmann::json::object();
        const auto lag = resolve_lag(config, panel, &summary);
        std::size_t rank = 0;
        const auto block = panel.nonstationary_columns();
        if (config.rank >= 0) {
            rank = static_cast<std::size_t>(config.rank);
            summary["rank_source"] = "configured";
        } else if (block.size() >= 2) {
            rank = econ::johansen_trace(columns(panel, block), lag).rank;
            if (rank == block.size()) {
                log::warn("econ vecm: Johansen rejects every rank below full; using rank {}", rank - 1);
                --rank;
            }
            summary["rank_source"] = "johansen-trace-5pct";
        }
        const auto model = econ::estimate_vecm(panel, rank, lag);
        const auto var = econ::vecm_to_var(model);
        writer.write_json("vecm.json", model);
        summary["variables"] = model.names;
        summary["deterministic"] = "unrestricted-constant";
        summary["lag"] = lag;
        summary["rank"] = rank;
        summary["relations"] = model.n_relations();
        summary["nobs"] = model.residuals.rows();
        summary["companion_spectral_radius"] = econ::spectral_radius(var);
        summary["sigma_divisor"] = "T";
        writer.write_json("vecm_summary.json", summary);
    } catch (...) {
        rethrow_in_stage("econ vecm", config.panel);
    }
    writer.finish();
}

void run_irf(const RunConfig& config, const econ::MacroPanel& panel) {
    const auto model = load_matching_model(config, panel);
    StageWriter writer(config, "econ", "irf");
    const auto shock = config.shock.empty() ? panel.names.back() : config.shock;
    try {
        econ::IrfResult irf;
        if (config.replications > 0) {
            econ::BootstrapOptions options;
            options.replications = config.replications;
            options.level = config.level;
            options.horizon = config.horizon;
            options.seed = writer.seed();
            irf = econ::hall_bootstrap_irf(model, panel.values, options);
            writer.extra()["bootstrap"] = {{"method", "hall"},
                                           {"bands", "pointwise"},
                                           {"level", irf.bands->level},
                                           {"replications", irf.bands->replications},
                                           {"dropped", irf.bands->dropped}};
        } else {
            irf = econ::impulse_response(model, config.horizon);
        }
        writer.write("irf.csv", econ::format_irf_csv(irf, shock));
        writer.extra()["shock"] = shock;
        writer.extra()["shock_size"] = "one standard deviation, Cholesky";
        writer.extra()["spectral_radius"] = irf.spectral_radius;
        writer.extra()["explosive"] = irf.explosive;
    } catch (...) {
        rethrow_in_stage("econ irf", model_path(config).string());
    }
    writer.finish();
}

void run_fevd(const RunConfig& config, const econ::MacroPanel& panel) {
    const auto model = load_matching_model(config, panel);
    StageWriter writer(config, "econ", "fevd");
    try {
        writer.write("fevd.csv", econ::format_fevd_csv(econ::fevd(model, config.horizon)));
    } catch (...) {
        rethrow_in_stage("econ fevd", model_path(config).string());
    }
    writer.finish();
}

}  // namespace

econ::MacroPanel load_econ_panel(const RunConfig& config) {
    require_file(config.panel, "panel");
    std::string series_name;
    std::string series_path = config.sentiment_series;
    if (series_path.empty() && !config.sentiment_name.empty()) {
        series_path = (config.out / "index" / (config.sentiment_name + ".csv")).string();
    }
    if (!series_path.empty()) {
        require_file(series_path, "sentiment-series");
        series_name = config.sentiment_name.empty() ? std::filesystem::path(series_path).stem().string()
                                                    : config.sentiment_name;
    }
    econ::PanelSpec spec;
    spec.log_columns = config.log_columns;
    for (const auto& name : config.stationary_columns) {
        if (name != series_name) spec.stationary_columns.push_back(name);
    }
    if (series_name.empty()) spec.sentiment_column = config.sentiment_column;
    try {
        auto panel = econ::load_panel(config.panel, spec);
        if (series_name.empty()) return panel;
        const auto series = sentiment::load_series_csv(series_path, series_name);
        return econ::with_sentiment(panel, series, contains(config.stationary_columns, series_name));
    } catch (...) {
        rethrow_in_stage("econ", config.panel);
    }
}

void cmd_econ(const RunConfig& config, const std::string& action) {
    using Runner = void (*)(const RunConfig&, const econ::MacroPanel&);
    Runner runner = nullptr;
    if (action == "adf") runner = run_adf;
    else if (action == "johansen") runner = run_johansen;
    else if (action == "vecm") runner = run_vecm;
    else if (action == "irf") runner = run_irf;
    else if (action == "fevd") runner = run_fevd;
    else throw Error(ErrorCode::InvalidArgument, "unknown econ action '" + action + "'");
    if (action == "irf" || action == "fevd") {
        if (!std::filesystem::exists(model_path(config))) {
            throw Error(ErrorCode::MissingModel, "econ " + action + ": no model at " + model_path(config).string() +
                                                     "; run `econ vecm` first");
        }
    }
    runner(config, load_econ_panel(config));
}

}  // namespace affect::pipeline
