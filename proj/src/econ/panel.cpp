#include "affect/econ/panel.hpp"

#include "affect/error.hpp"
#include "affect/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace affect::econ {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

bool contains(const std::vector<std::string>& names, const std::string& name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

/// Trims `rows` (keyed by month) to the widest fully observed window.
MacroPanel trim_window(std::vector<std::string> names, const std::map<YearMonth, std::vector<double>>& rows,
                       const std::string& source) {
    auto complete = [](const std::vector<double>& r) {
        return std::none_of(r.begin(), r.end(), [](double v) { return std::isnan(v); });
    };
    auto first = std::find_if(rows.begin(), rows.end(), [&](const auto& kv) { return complete(kv.second); });
    if (first == rows.end()) throw Error(ErrorCode::InsufficientObservations, source + ": no fully observed month");
    auto last = std::find_if(rows.rbegin(), rows.rend(), [&](const auto& kv) { return complete(kv.second); });

    MacroPanel panel;
    panel.names = std::move(names);
    const auto end = last.base();
    YearMonth expected = first->first;
    std::vector<const std::vector<double>*> kept;
    for (auto it = first; it != end; ++it) {
        if (it->first != expected) {
            throw Error(ErrorCode::MissingValue, source + ": month " + expected.to_string() + " missing inside window");
        }
        if (!complete(it->second)) {
            for (std::size_t c = 0; c < it->second.size(); ++c) {
                if (std::isnan(it->second[c])) {
                    throw Error(ErrorCode::MissingValue,
                                source + ": " + panel.names[c] + " missing at " + it->first.to_string());
                }
            }
        }
        panel.months.push_back(it->first);
        kept.push_back(&it->second);
        expected = expected.next();
    }
    panel.values.resize(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(panel.names.size()));
    for (std::size_t r = 0; r < kept.size(); ++r) {
        for (std::size_t c = 0; c < panel.names.size(); ++c) {
            panel.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*kept[r])[c];
        }
    }
    return panel;
}

}  // namespace

std::size_t MacroPanel::index_of(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::MissingFeature, "panel has no column '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

std::vector<std::size_t> MacroPanel::nonstationary_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (!stationary[c]) out.push_back(c);
    }
    return out;
}

std::vector<std::size_t> MacroPanel::stationary_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (stationary[c]) out.push_back(c);
    }
    return out;
}

MacroPanel load_panel(const std::filesystem::path& path, const PanelSpec& spec) {
    const auto lines = io::read_lines(path);
    const auto source = path.string();
    if (lines.empty()) throw Error(ErrorCode::EmptySet, source + ": empty panel file");
    const auto header = io::split(lines[0], ',');
    if (header.empty() || io::trim(header[0]) != "month") {
        throw Error(ErrorCode::MalformedRecord, source + ": first column must be 'month'");
    }
    std::vector<std::string> names;
    for (std::size_t c = 1; c < header.size(); ++c) names.emplace_back(io::trim(header[c]));
    if (names.empty()) throw Error(ErrorCode::EmptySet, source + ": no variable columns");
    for (const auto* group : {&spec.log_columns, &spec.stationary_columns}) {
        for (const auto& name : *group) {
            if (!contains(names, name)) throw Error(ErrorCode::MissingFeature, source + ": no column '" + name + "'");
        }
    }
    if (!spec.sentiment_column.empty() && !contains(names, spec.sentiment_column)) {
        throw Error(ErrorCode::MissingFeature, source + ": no column '" + spec.sentiment_column + "'");
    }

    std::map<YearMonth, std::vector<double>> rows;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        if (io::trim(lines[l]).empty()) continue;
        const auto where = source + ":" + std::to_string(l + 1);
        const auto cells = io::split(lines[l], ',');
        if (cells.size() != header.size()) throw Error(ErrorCode::RaggedRow, where + ": wrong number of cells");
        const auto month = YearMonth::parse(cells[0]);
        if (!month) throw Error(ErrorCode::MalformedRecord, where + ": bad month '" + std::string(cells[0]) + "'");
        if (rows.count(*month)) throw Error(ErrorCode::MalformedRecord, where + ": duplicate month");
        std::vector<double> row(names.size(), kMissing);
        for (std::size_t c = 0; c < names.size(); ++c) {
            const auto cell = io::trim(cells[c + 1]);
            if (cell.empty() || cell == "NA" || cell == "NaN") continue;
            const auto value = io::parse_double(cell);
            if (!value || !std::isfinite(*value)) {
                throw Error(ErrorCode::NonNumeric, where + ": " + names[c] + " is not numeric");
            }
            row[c] = *value;
        }
        rows.emplace(*month, std::move(row));
    }

    auto panel = trim_window(names, rows, source);
    panel.logged.assign(names.size(), false);
    panel.stationary.assign(names.size(), false);
    for (std::size_t c = 0; c < names.size(); ++c) {
        panel.stationary[c] = contains(spec.stationary_columns, names[c]);
        if (!contains(spec.log_columns, names[c])) continue;
        panel.logged[c] = true;
        auto col = panel.values.col(static_cast<Eigen::Index>(c));
        if ((col.array() <= 0.0).any()) {
            throw Error(ErrorCode::OutOfScale, source + ": " + names[c] + " has non-positive values and cannot be logged");
        }
        col = col.array().log().matrix();
    }

    if (!spec.sentiment_column.empty()) {
        const auto s = panel.index_of(spec.sentiment_column);
        const auto last = names.size() - 1;
        if (s != last) {
            std::vector<Eigen::Index> order;
            for (std::size_t c = 0; c < names.size(); ++c) {
                if (c != s) order.push_back(static_cast<Eigen::Index>(c));
            }
            order.push_back(static_cast<Eigen::Index>(s));
            MacroPanel moved;
            moved.months = panel.months;
            moved.values.resize(panel.rows(), panel.cols());
            for (std::size_t i = 0; i < order.size(); ++i) {
                const auto c = static_cast<std::size_t>(order[i]);
                moved.values.col(static_cast<Eigen::Index>(i)) = panel.values.col(order[i]);
                moved.names.push_back(panel.names[c]);
                moved.logged.push_back(panel.logged[c]);
                moved.stationary.push_back(panel.stationary[c]);
            }
            panel = std::move(moved);
        }
    }
    return panel;
}

MacroPanel with_sentiment(const MacroPanel& panel, const sentiment::SentimentSeries& series, bool stationary) {
    if (contains(panel.names, series.name)) {
        throw Error(ErrorCode::InvalidArgument, "panel already has a column named '" + series.name + "'");
    }
    std::map<YearMonth, std::vector<double>> rows;
    const auto width = panel.names.size() + 1;
    for (Eigen::Index r = 0; r < panel.rows(); ++r) {
        std::vector<double> row(width, kMissing);
        for (std::size_t c = 0; c < panel.names.size(); ++c) row[c] = panel.values(r, static_cast<Eigen::Index>(c));
        rows.emplace(panel.months[static_cast<std::size_t>(r)], std::move(row));
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        auto& row = rows[series.months[i]];
        if (row.empty()) row.assign(width, kMissing);
        row.back() = series.values[i];
    }
    auto names = panel.names;
    names.push_back(series.name);
    auto merged = trim_window(std::move(names), rows, "panel+" + series.name);
    merged.logged = panel.logged;
    merged.logged.push_back(false);
    merged.stationary = panel.stationary;
    merged.stationary.push_back(stationary);
    return merged;
}

std::string format_panel_csv(const MacroPanel& panel) {
    std::string out = "month";
    for (const auto& name : panel.names) out += "," + name;
    out += "\n";
    for (Eigen::Index r = 0; r < panel.rows(); ++r) {
        out += panel.months[static_cast<std::size_t>(r)].to_string();
        for (Eigen::Index c = 0; c < panel.cols(); ++c) out += "," + io::format_double(panel.values(r, c));
        out += "\n";
    }
    return out;
}

}  // namespace affect::econ
