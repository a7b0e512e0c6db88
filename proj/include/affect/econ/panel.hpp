#pragma once

#include "affect/calendar.hpp"
#include "affect/sentiment.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <vector>

namespace affect::econ {

/// Monthly macro observations aligned on consecutive months. Columns keep
/// their input order except that the sentiment column is always last.
struct MacroPanel {
    std::vector<std::string> names;
    std::vector<YearMonth> months;
    Eigen::MatrixXd values;  // months x variables, logged where flagged
    std::vector<bool> logged;
    std::vector<bool> stationary;

    [[nodiscard]] Eigen::Index rows() const noexcept { return values.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return values.cols(); }
    [[nodiscard]] std::size_t index_of(const std::string& name) const;  // throws MissingFeature
    [[nodiscard]] std::vector<std::size_t> nonstationary_columns() const;
    [[nodiscard]] std::vector<std::size_t> stationary_columns() const;
};

struct PanelSpec {
    std::vector<std::string> log_columns;
    std::vector<std::string> stationary_columns;
    std::string sentiment_column;  // moved last when present
};

/// Reads a CSV with a `month` column (YYYY-MM) and one column per variable.
/// Empty cells and `NA` count as missing. Rows are trimmed to the widest
/// window in which every column is observed; a missing cell or skipped
/// month inside that window throws MissingValue.
[[nodiscard]] MacroPanel load_panel(const std::filesystem::path& path, const PanelSpec& spec);

/// Appends a sentiment series as the last column and trims both sides to
/// their common window. Throws MissingValue on gaps inside it.
[[nodiscard]] MacroPanel with_sentiment(const MacroPanel& panel, const sentiment::SentimentSeries& series,
                                        bool stationary = true);

[[nodiscard]] std::string format_panel_csv(const MacroPanel& panel);

}  // namespace affect::econ
