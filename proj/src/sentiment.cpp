#include "affect/sentiment.hpp"

#include "affect/error.hpp"
#include "affect/log.hpp"
#include "affect/text_io.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace affect::sentiment {

namespace {

bool ascii_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

/// Length of the UTF-8 sequence at `pos` and whether it encodes a Latin letter.
std::pair<std::size_t, bool> utf8_letter(std::string_view text, std::size_t pos) {
    const auto lead = static_cast<unsigned char>(text[pos]);
    std::size_t len = 1;
    if ((lead & 0xE0) == 0xC0) len = 2;
    else if ((lead & 0xF0) == 0xE0) len = 3;
    else if ((lead & 0xF8) == 0xF0) len = 4;
    if (pos + len > text.size()) return {1, false};
    char32_t cp = 0;
    if (len == 1) return {1, false};  // stray continuation or invalid byte
    cp = lead & (0x7F >> len);
    for (std::size_t i = 1; i < len; ++i) {
        const auto c = static_cast<unsigned char>(text[pos + i]);
        if ((c & 0xC0) != 0x80) return {1, false};
        cp = (cp << 6) | (c & 0x3F);
    }
    const bool letter = cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7;
    return {len, letter};
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto c = static_cast<unsigned char>(text[pos]);
        if (c < 0x80) {
            if (ascii_alnum(c)) {
                current += static_cast<char>(c >= 'A' && c <= 'Z' ? c + ('a' - 'A') : c);
            } else if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
            ++pos;
            continue;
        }
        const auto [len, letter] = utf8_letter(text, pos);
        if (letter) {
            current.append(text.substr(pos, len));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
        pos += len;
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Article parse_article(std::string_view json_line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::MalformedRecord, "article is not a JSON object");
    Article article;
    try {
        const auto& id = j.at("id");
        article.id = id.is_string() ? id.get<std::string>() : id.dump();
        const auto date_text = j.at("date").get<std::string>();
        const auto date = CalendarDate::parse(date_text);
        if (!date) throw Error(ErrorCode::MalformedRecord, "article " + article.id + ": invalid date '" + date_text + "'");
        article.date = *date;
        if (j.contains("tags")) j.at("tags").get_to(article.tags);
        article.text = j.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("article fields: ") + e.what());
    }
    return article;
}

ArticleScore article_sentiment(std::span<const std::string> tokens, const lexicon::WordList& positive,
                               const lexicon::WordList& negative) {
    if (tokens.empty()) throw Error(ErrorCode::ZeroLength, "article has no tokens");
    ArticleScore score;
    score.total = tokens.size();
    for (const auto& token : tokens) {
        const bool pos = positive.size() > 0 && positive.contains(token);
        const bool neg = negative.size() > 0 && negative.contains(token);
        if (pos && neg) ++score.conflicts;
        else if (pos) ++score.positive;
        else if (neg) ++score.negative;
    }
    score.sentiment = (static_cast<double>(score.positive) - static_cast<double>(score.negative)) /
                      static_cast<double>(score.total);
    return score;
}

std::string_view to_string(Aggregation aggregation) noexcept {
    return aggregation == Aggregation::Mean ? "mean" : "length-weighted";
}

std::string_view to_string(IndexMode mode) noexcept {
    return mode == IndexMode::Balance ? "positive-minus-negative" : "negative-only";
}

void MonthlyAccumulator::add(const YearMonth& month, const ArticleScore& score) {
    auto& cell = cells_[month];
    cell.sentiment_sum.add(score.sentiment);
    cell.net_hits += static_cast<long long>(score.positive) - static_cast<long long>(score.negative);
    cell.tokens += score.total;
    ++cell.articles;
}

void MonthlyAccumulator::merge(const MonthlyAccumulator& other) {
    for (const auto& [month, theirs] : other.cells_) {
        auto& cell = cells_[month];
        cell.sentiment_sum.merge(theirs.sentiment_sum);
        cell.net_hits += theirs.net_hits;
        cell.tokens += theirs.tokens;
        cell.articles += theirs.articles;
    }
}

SentimentSeries MonthlyAccumulator::finish(std::string name) const {
    SentimentSeries series;
    series.name = std::move(name);
    for (const auto& [month, cell] : cells_) {
        series.months.push_back(month);
        series.article_counts.push_back(cell.articles);
        series.values.push_back(aggregation_ == Aggregation::Mean
                                    ? cell.sentiment_sum.value() / static_cast<double>(cell.articles)
                                    : static_cast<double>(cell.net_hits) / static_cast<double>(cell.tokens));
    }
    return series;
}

namespace {

bool passes_filter(const Article& article, const IndexOptions& options) {
    if (options.tags.empty()) return true;
    return std::any_of(article.tags.begin(), article.tags.end(), [&](const std::string& tag) {
        return std::find(options.tags.begin(), options.tags.end(), tag) != options.tags.end();
    });
}

const lexicon::WordList& empty_list() {
    static const lexicon::WordList empty;
    return empty;
}

}  // namespace

std::vector<SentimentSeries> build_monthly_indices(std::istream& corpus, std::span<const IndexDefinition> indices,
                                                   const IndexOptions& options, IndexStats* stats) {
    IndexStats local;
    local.conflicts.assign(indices.size(), 0);
    std::vector<MonthlyAccumulator> accumulators(indices.size(), MonthlyAccumulator(options.aggregation));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(corpus, line)) {
        ++line_no;
        if (io::trim(line).empty()) continue;
        ++local.records;
        Article article;
        try {
            article = parse_article(line);
        } catch (const Error& e) {
            throw Error(e.code(), "corpus line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!passes_filter(article, options)) {
            ++local.filtered_out;
            continue;
        }
        const auto tokens = tokenize(article.text);
        if (tokens.empty()) {
            ++local.zero_length;
            continue;
        }
        ++local.scored;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            const auto& positive = options.mode == IndexMode::NegativeOnly ? empty_list() : indices[i].positive;
            const auto score = article_sentiment(tokens, positive, indices[i].negative);
            local.conflicts[i] += score.conflicts;
            accumulators[i].add(article.date.year_month(), score);
        }
    }
    if (local.zero_length > 0) log::warn("{} articles without tokens skipped", local.zero_length);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (local.conflicts[i] > 0) {
            log::warn("index {}: {} tokens on both lists counted in neither", indices[i].name, local.conflicts[i]);
        }
    }
    if (stats != nullptr) *stats = local;
    if (local.scored == 0) {
        std::string filter;
        for (const auto& tag : options.tags) filter += (filter.empty() ? "" : ",") + tag;
        throw Error(ErrorCode::EmptyCorpus, "no scorable article in corpus (" + std::to_string(local.records) +
                                                " records, tag filter [" + filter + "])");
    }
    std::vector<SentimentSeries> out;
    for (std::size_t i = 0; i < indices.size(); ++i) out.push_back(accumulators[i].finish(indices[i].name));
    return out;
}

SentimentSeries build_monthly_index(std::span<const Article> corpus, const lexicon::WordList& positive,
                                    const lexicon::WordList& negative, std::string name, const IndexOptions& options) {
    MonthlyAccumulator acc(options.aggregation);
    const auto& pos = options.mode == IndexMode::NegativeOnly ? empty_list() : positive;
    for (const auto& article : corpus) {
        if (!passes_filter(article, options)) continue;
        const auto tokens = tokenize(article.text);
        if (tokens.empty()) continue;
        acc.add(article.date.year_month(), article_sentiment(tokens, pos, negative));
    }
    if (acc.empty()) throw Error(ErrorCode::EmptyCorpus, "no scorable article for index " + name);
    return acc.finish(std::move(name));
}

std::string format_series_csv(const SentimentSeries& series) {
    std::string out = "month,value,article_count\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += series.months[i].to_string() + "," + io::format_double(series.values[i]) + "," +
               std::to_string(series.article_counts[i]) + "\n";
    }
    return out;
}

SentimentSeries load_series_csv(const std::filesystem::path& path, std::string name) {
    const auto lines = io::read_lines(path);
    SentimentSeries series;
    series.name = std::move(name);
    for (std::size_t l = 1; l < lines.size(); ++l) {
        if (io::trim(lines[l]).empty()) continue;
        const auto where = path.string() + ":" + std::to_string(l + 1);
        const auto cells = io::split(lines[l], ',');
        if (cells.size() != 3) throw Error(ErrorCode::RaggedRow, where + ": expected month,value,article_count");
        const auto month = YearMonth::parse(cells[0]);
        const auto value = io::parse_double(cells[1]);
        const auto count = io::parse_int(cells[2]);
        if (!month || !value || !count || *count < 1) throw Error(ErrorCode::MalformedRecord, where + ": bad series row");
        if (!series.months.empty() && !(series.months.back() < *month)) {
            throw Error(ErrorCode::MalformedRecord, where + ": months must be strictly increasing");
        }
        series.months.push_back(*month);
        series.values.push_back(*value);
        series.article_counts.push_back(static_cast<std::size_t>(*count));
    }
    if (series.months.empty()) throw Error(ErrorCode::EmptySet, "series file " + path.string() + " has no rows");
    return series;
}

}  // namespace affect::sentiment
