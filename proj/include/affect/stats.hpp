#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Core>

namespace affect::stats {

/// Pearson correlation; NaN when either side has zero variance.
[[nodiscard]] inline double pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                                    const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const Eigen::VectorXd dx = x.array() - x.mean();
    const Eigen::VectorXd dy = y.array() - y.mean();
    const double sxx = dx.squaredNorm();
    const double syy = dy.squaredNorm();
    if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::clamp(dx.dot(dy) / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Linear-interpolation quantile (type 7) of an unsorted sample.
[[nodiscard]] inline double quantile(std::vector<double> sample, double prob) {
    if (sample.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(sample.begin(), sample.end());
    const double h = (static_cast<double>(sample.size()) - 1.0) * std::clamp(prob, 0.0, 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sample.size() - 1);
    return sample[lo] + (h - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

}  // namespace affect::stats

namespace affect::stats {

/// Exactly rounded floating-point sum (Shewchuk partials). The result does
/// not depend on the order values are added or sums are merged.
class ExactSum {
public:
    void add(double x) {
        std::size_t i = 0;
        for (double y : partials_) {
            if (std::abs(x) < std::abs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials_[i++] = lo;
            x = hi;
        }
        partials_.resize(i);
        partials_.push_back(x);
    }

    void merge(const ExactSum& other) {
        for (double p : other.partials_) add(p);
    }

    [[nodiscard]] double value() const {
        if (partials_.empty()) return 0.0;
        auto n = partials_.size();
        double hi = partials_[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials_[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) break;
        }
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            if (y == x - hi) hi = x;
        }
        return hi;
    }

private:
    std::vector<double> partials_;
};

}  // namespace affect::stats
