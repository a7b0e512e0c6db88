#include "affect/lexicon.hpp"

#include "affect/error.hpp"
#include "affect/log.hpp"
#include "affect/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace affect::lexicon {

namespace {

bool has_whitespace(std::string_view token) {
    return std::any_of(token.begin(), token.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

WordList WordList::from_tokens(std::string name, std::span<const std::string> tokens) {
    WordList list;
    list.name_ = std::move(name);
    for (const auto& raw : tokens) {
        if (raw.empty()) throw Error(ErrorCode::InvalidToken, "empty token in list " + list.name_);
        if (has_whitespace(raw)) {
            throw Error(ErrorCode::InvalidToken,
                        "token '" + raw + "' in list " + list.name_ + " contains whitespace");
        }
        auto word = io::to_lower_ascii(raw);
        if (list.index_.insert(word).second) list.words_.push_back(std::move(word));
    }
    if (list.words_.empty()) throw Error(ErrorCode::EmptyList, "word list " + list.name_ + " is empty");
    return list;
}

bool WordList::contains(std::string_view word) const {
    return index_.find(std::string(word)) != index_.end();
}

WordList load_word_list(const std::filesystem::path& path, std::optional<std::string> name) {
    std::vector<std::string> tokens;
    std::size_t line_no = 0;
    for (const auto& line : io::read_lines(path)) {
        ++line_no;
        const auto token = io::trim(line);
        if (token.empty() || token.front() == '#') continue;
        if (has_whitespace(token)) {
            throw Error(ErrorCode::InvalidToken, path.string() + ":" + std::to_string(line_no) +
                                                     ": token '" + std::string(token) +
                                                     "' contains whitespace");
        }
        tokens.emplace_back(token);
    }
    if (tokens.empty()) throw Error(ErrorCode::EmptyList, "no tokens in " + path.string());
    return WordList::from_tokens(name.value_or(path.stem().string()), tokens);
}

std::string format_word_list(const WordList& list) {
    std::string out = "# " + list.name() + "\n";
    for (const auto& word : list.words()) {
        out += word;
        out += '\n';
    }
    return out;
}

std::optional<std::size_t> RatingTable::find(std::string_view word) const {
    const auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> RatingTable::feature_index(std::string_view feature) const {
    const auto it = std::find(feature_names.begin(), feature_names.end(), feature);
    if (it == feature_names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - feature_names.begin());
}

void RatingTable::reindex() {
    index_.clear();
    for (std::size_t i = 0; i < words.size(); ++i) index_.emplace(words[i], i);
}

RatingTable make_rating_table(std::vector<std::string> feature_names, Scale scale,
                              std::span<const std::string> words, const Eigen::MatrixXd& values) {
    if (feature_names.empty()) throw Error(ErrorCode::InvalidArgument, "rating table without features");
    if (static_cast<std::size_t>(values.rows()) != words.size() ||
        static_cast<std::size_t>(values.cols()) != feature_names.size()) {
        throw Error(ErrorCode::RaggedRow, "rating values do not match words x features");
    }
    RatingTable table;
    table.feature_names = std::move(feature_names);
    table.scale = scale;
    std::unordered_map<std::string, std::size_t> position;
    std::vector<Eigen::Index> source_row;
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            const double v = values(static_cast<Eigen::Index>(i), j);
            if (!std::isfinite(v) || !scale.contains(v)) {
                throw Error(ErrorCode::OutOfScale,
                            "rating " + io::format_double(v) + " for '" + words[i] + "' outside [" +
                                io::format_double(scale.min) + "," + io::format_double(scale.max) + "]");
            }
        }
        auto word = io::to_lower_ascii(words[i]);
        const auto [it, inserted] = position.emplace(word, table.words.size());
        if (inserted) {
            table.words.push_back(std::move(word));
            source_row.push_back(static_cast<Eigen::Index>(i));
        } else {
            source_row[it->second] = static_cast<Eigen::Index>(i);
            ++table.duplicate_rows;
        }
    }
    table.values.resize(static_cast<Eigen::Index>(table.words.size()), values.cols());
    for (std::size_t r = 0; r < source_row.size(); ++r) {
        table.values.row(static_cast<Eigen::Index>(r)) = values.row(source_row[r]);
    }
    table.reindex();
    return table;
}

RatingTable load_rating_table(const std::filesystem::path& path, Scale scale) {
    const auto lines = io::read_lines(path);
    std::size_t header_at = 0;
    while (header_at < lines.size() && io::trim(lines[header_at]).empty()) ++header_at;
    if (header_at == lines.size()) throw Error(ErrorCode::EmptyList, "rating table " + path.string() + " is empty");

    const char delim = io::detect_delimiter(lines[header_at], path);
    const auto header = io::split(lines[header_at], delim);
    if (header.size() < 2) throw Error(ErrorCode::RaggedRow, "rating table " + path.string() + " has no feature columns");
    std::vector<std::string> features;
    for (std::size_t c = 1; c < header.size(); ++c) features.emplace_back(io::trim(header[c]));

    std::vector<std::string> words;
    std::vector<double> flat;
    for (std::size_t l = header_at + 1; l < lines.size(); ++l) {
        if (io::trim(lines[l]).empty()) continue;
        const auto where = path.string() + ":" + std::to_string(l + 1);
        const auto cells = io::split(lines[l], delim);
        if (cells.size() != header.size()) {
            throw Error(ErrorCode::RaggedRow, where + ": expected " + std::to_string(header.size()) +
                                                  " cells, found " + std::to_string(cells.size()));
        }
        const auto word = io::trim(cells[0]);
        if (word.empty()) throw Error(ErrorCode::InvalidToken, where + ": empty word cell");
        words.emplace_back(word);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            const auto value = io::parse_double(cells[c]);
            if (!value) {
                throw Error(ErrorCode::NonNumeric,
                            where + ": non-numeric rating '" + std::string(io::trim(cells[c])) + "'");
            }
            if (!std::isfinite(*value) || !scale.contains(*value)) {
                throw Error(ErrorCode::OutOfScale, where + ": rating " + io::format_double(*value) +
                                                       " for feature " + features[c - 1] + " outside [" +
                                                       io::format_double(scale.min) + "," +
                                                       io::format_double(scale.max) + "]");
            }
            flat.push_back(*value);
        }
    }
    const auto n_features = static_cast<Eigen::Index>(features.size());
    Eigen::MatrixXd values(static_cast<Eigen::Index>(words.size()), n_features);
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < n_features; ++c) {
            values(r, c) = flat[static_cast<std::size_t>(r * n_features + c)];
        }
    }
    auto table = make_rating_table(std::move(features), scale, words, values);
    if (table.duplicate_rows > 0) {
        log::warn("{}: {} duplicate word rows (last occurrence kept)", path.string(), table.duplicate_rows);
    }
    return table;
}

std::size_t RatedWordSet::feature_index(std::string_view feature) const {
    const auto it = std::find(feature_names.begin(), feature_names.end(), feature);
    if (it == feature_names.end()) {
        throw Error(ErrorCode::MissingFeature, "feature '" + std::string(feature) + "' not rated for " + list_name);
    }
    return static_cast<std::size_t>(it - feature_names.begin());
}

Eigen::VectorXd RatedWordSet::column(std::string_view feature) const {
    return rows.col(static_cast<Eigen::Index>(feature_index(feature)));
}

RatedWordSet join(const WordList& list, const RatingTable& table) {
    RatedWordSet set;
    set.list_name = list.name();
    set.feature_names = table.feature_names;
    set.scale = table.scale;
    std::vector<Eigen::Index> picked;
    for (const auto& word : list.words()) {
        if (const auto row = table.find(word)) {
            set.words.push_back(word);
            picked.push_back(static_cast<Eigen::Index>(*row));
        } else {
            set.dropped.push_back(word);
        }
    }
    if (set.words.empty()) {
        throw Error(ErrorCode::NoOverlap, "no word of list " + list.name() + " is in the rating table");
    }
    set.rows.resize(static_cast<Eigen::Index>(picked.size()), table.values.cols());
    for (std::size_t i = 0; i < picked.size(); ++i) {
        set.rows.row(static_cast<Eigen::Index>(i)) = table.values.row(picked[i]);
    }
    return set;
}

Eigen::VectorXd feature_means(const RatedWordSet& set) {
    if (set.rows.rows() == 0) throw Error(ErrorCode::EmptySet, "no rated words in " + set.list_name);
    return set.rows.colwise().mean().transpose();
}

}  // namespace affect::lexicon
