#include "affect/regressor.hpp"

#include "affect/error.hpp"
#include "affect/rng.hpp"
#include "affect/stats.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace affect::features {

double RegressionNetwork::predict_one(const Eigen::Ref<const Eigen::VectorXd>& input) const {
    const Eigen::VectorXd hidden = (hidden_weights * input + hidden_bias).cwiseMax(0.0);
    return output_weights.dot(hidden) + output_bias;
}

Eigen::VectorXd RegressionNetwork::predict(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
    Eigen::MatrixXd hidden = (hidden_weights * inputs.transpose()).colwise() + hidden_bias;
    hidden = hidden.cwiseMax(0.0);
    Eigen::VectorXd out = hidden.transpose() * output_weights;
    out.array() += output_bias;
    return out;
}

namespace {

struct Adam {
    double lr;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t step = 0;

    template <typename Param, typename Grad>
    void update(Param& param, const Grad& grad, Param& m, Param& v, double c1, double c2) const {
        m = beta1 * m + (1.0 - beta1) * grad;
        v = beta2 * v + (1.0 - beta2) * grad.cwiseProduct(grad);
        param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
    }
};

double mse(const RegressionNetwork& net, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    return (net.predict(x) - y).squaredNorm() / static_cast<double>(y.size());
}

}  // namespace

RegressionNetwork fit_network(const Eigen::MatrixXd& train_inputs, const Eigen::VectorXd& train_targets,
                              const Eigen::MatrixXd& validation_inputs,
                              const Eigen::VectorXd& validation_targets, const NetworkConfig& config,
                              std::uint64_t seed, FitReport* report) {
    const auto n = train_inputs.rows();
    const auto d = train_inputs.cols();
    const auto h = static_cast<Eigen::Index>(config.hidden_units);
    if (n < 1 || train_targets.size() != n) throw Error(ErrorCode::InvalidArgument, "empty or mismatched training set");
    if (h < 1 || config.batch_size < 1 || config.max_epochs < 1 || !(config.learning_rate > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "invalid network configuration");
    }
    const bool has_validation = validation_inputs.rows() > 0;

    Rng rng(seed);
    RegressionNetwork net;
    const double in_limit = std::sqrt(6.0 / static_cast<double>(d));
    const double out_limit = std::sqrt(6.0 / static_cast<double>(h + 1));
    net.hidden_weights.resize(h, d);
    for (Eigen::Index i = 0; i < h; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) net.hidden_weights(i, j) = (2.0 * rng.uniform() - 1.0) * in_limit;
    }
    net.hidden_bias = Eigen::VectorXd::Constant(h, 0.01);
    net.output_weights.resize(h);
    for (Eigen::Index i = 0; i < h; ++i) net.output_weights(i) = (2.0 * rng.uniform() - 1.0) * out_limit;
    net.output_bias = train_targets.mean();

    Eigen::MatrixXd m_w1 = Eigen::MatrixXd::Zero(h, d), v_w1 = m_w1;
    Eigen::VectorXd m_b1 = Eigen::VectorXd::Zero(h), v_b1 = m_b1;
    Eigen::VectorXd m_w2 = Eigen::VectorXd::Zero(h), v_w2 = m_w2;
    Eigen::VectorXd m_b2 = Eigen::VectorXd::Zero(1), v_b2 = m_b2;
    Adam adam{config.learning_rate};

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    RegressionNetwork best = net;
    double best_loss = has_validation ? mse(net, validation_inputs, validation_targets)
                                      : mse(net, train_inputs, train_targets);
    std::size_t best_epoch = 0;
    std::size_t epochs_run = 0;
    const auto batch = static_cast<Eigen::Index>(config.batch_size);

    Eigen::MatrixXd xb;
    Eigen::VectorXd yb;
    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        epochs_run = epoch;
        rng.shuffle(order);
        for (Eigen::Index start = 0; start < n; start += batch) {
            const auto size = std::min(batch, n - start);
            xb.resize(size, d);
            yb.resize(size);
            for (Eigen::Index r = 0; r < size; ++r) {
                xb.row(r) = train_inputs.row(order[static_cast<std::size_t>(start + r)]);
                yb(r) = train_targets(order[static_cast<std::size_t>(start + r)]);
            }
            Eigen::MatrixXd pre = (net.hidden_weights * xb.transpose()).colwise() + net.hidden_bias;  // h x B
            const Eigen::MatrixXd act = pre.cwiseMax(0.0);
            Eigen::VectorXd out = act.transpose() * net.output_weights;
            out.array() += net.output_bias;
            const Eigen::VectorXd g = (out - yb) * (2.0 / static_cast<double>(size));

            const Eigen::VectorXd grad_w2 = act * g + config.weight_decay * net.output_weights;
            Eigen::VectorXd grad_b2(1);
            grad_b2(0) = g.sum();
            Eigen::MatrixXd delta = net.output_weights * g.transpose();  // h x B
            delta = delta.cwiseProduct((pre.array() > 0.0).cast<double>().matrix());
            const Eigen::MatrixXd grad_w1 = delta * xb + config.weight_decay * net.hidden_weights;
            const Eigen::VectorXd grad_b1 = delta.rowwise().sum();

            ++adam.step;
            const double c1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.step));
            const double c2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.step));
            adam.update(net.hidden_weights, grad_w1, m_w1, v_w1, c1, c2);
            adam.update(net.hidden_bias, grad_b1, m_b1, v_b1, c1, c2);
            adam.update(net.output_weights, grad_w2, m_w2, v_w2, c1, c2);
            Eigen::VectorXd b2(1);
            b2(0) = net.output_bias;
            adam.update(b2, grad_b2, m_b2, v_b2, c1, c2);
            net.output_bias = b2(0);
        }
        const double loss = has_validation ? mse(net, validation_inputs, validation_targets)
                                           : mse(net, train_inputs, train_targets);
        if (!std::isfinite(loss)) {
            throw Error(ErrorCode::TrainingDiverged,
                        "non-finite loss at epoch " + std::to_string(epoch) + " (learning rate " +
                            std::to_string(config.learning_rate) + ", " + std::to_string(n) + " examples)");
        }
        if (loss < best_loss) {
            best_loss = loss;
            best = net;
            best_epoch = epoch;
        } else if (has_validation && epoch - best_epoch >= config.patience) {
            break;
        }
    }
    if (!has_validation) {
        best = net;
        best_epoch = epochs_run;
    }
    if (report != nullptr) {
        report->epochs_run = epochs_run;
        report->best_epoch = best_epoch;
        report->train_mse = mse(best, train_inputs, train_targets);
        if (has_validation) {
            report->validation_mse = mse(best, validation_inputs, validation_targets);
            const double r = stats::pearson(best.predict(validation_inputs), validation_targets);
            report->validation_correlation = std::isfinite(r) ? r : 0.0;
        }
    }
    return best;
}

void to_json(nlohmann::json& j, const NetworkConfig& config) {
    j = nlohmann::json{{"hidden_units", config.hidden_units},
                       {"activation", "relu"},
                       {"optimizer", "adam"},
                       {"max_epochs", config.max_epochs},
                       {"patience", config.patience},
                       {"validation_fraction", config.validation_fraction},
                       {"learning_rate", config.learning_rate},
                       {"batch_size", config.batch_size},
                       {"weight_decay", config.weight_decay}};
}

void from_json(const nlohmann::json& j, NetworkConfig& config) {
    j.at("hidden_units").get_to(config.hidden_units);
    j.at("max_epochs").get_to(config.max_epochs);
    j.at("patience").get_to(config.patience);
    j.at("validation_fraction").get_to(config.validation_fraction);
    j.at("learning_rate").get_to(config.learning_rate);
    j.at("batch_size").get_to(config.batch_size);
    j.at("weight_decay").get_to(config.weight_decay);
}

void to_json(nlohmann::json& j, const RegressionNetwork& network) {
    const auto h = network.hidden_weights.rows();
    const auto d = network.hidden_weights.cols();
    std::vector<double> w1(static_cast<std::size_t>(h * d));
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(w1.data(), h, d) =
        network.hidden_weights;
    j = nlohmann::json{{"hidden", h},
                       {"inputs", d},
                       {"hidden_weights", w1},
                       {"hidden_bias", std::vector<double>(network.hidden_bias.begin(), network.hidden_bias.end())},
                       {"output_weights",
                        std::vector<double>(network.output_weights.begin(), network.output_weights.end())},
                       {"output_bias", network.output_bias}};
}

void from_json(const nlohmann::json& j, RegressionNetwork& network) {
    const auto h = j.at("hidden").get<Eigen::Index>();
    const auto d = j.at("inputs").get<Eigen::Index>();
    const auto w1 = j.at("hidden_weights").get<std::vector<double>>();
    const auto b1 = j.at("hidden_bias").get<std::vector<double>>();
    const auto w2 = j.at("output_weights").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(w1.size()) != h * d || static_cast<Eigen::Index>(b1.size()) != h ||
        static_cast<Eigen::Index>(w2.size()) != h) {
        throw Error(ErrorCode::DimensionMismatch, "network weights do not match declared shape");
    }
    network.hidden_weights =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(w1.data(), h, d);
    network.hidden_bias = Eigen::Map<const Eigen::VectorXd>(b1.data(), h);
    network.output_weights = Eigen::Map<const Eigen::VectorXd>(w2.data(), h);
    network.output_bias = j.at("output_bias").get<double>();
}

}  // namespace affect::features
