#pragma once

#include "affect/calendar.hpp"
#include "affect/lexicon.hpp"
#include "affect/stats.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace affect::sentiment {

/// Identifier recorded with every index built from tokenize().
inline constexpr std::string_view kTokenizerId = "lower-ascii-alnum+latin-letters/v1";

/// Lowercases ASCII and splits on every character that is not an ASCII
/// letter or digit; UTF-8 Latin letters (U+00C0-U+024F except U+00D7 and
/// U+00F7) stay inside tokens, any other code point separates.
[[nodiscard]] std::vector<std::string> tokenize(std::string_view text);

struct Article {
    std::string id;
    CalendarDate date;
    std::vector<std::string> tags;
    std::string text;
};

/// One JSON object with `id`, `date` (ISO-8601), optional `tags`, `text`.
/// Throws MalformedRecord.
[[nodiscard]] Article parse_article(std::string_view json_line);

struct ArticleScore {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t total = 0;
    std::size_t conflicts = 0;  // tokens on both lists, counted in neither
    double sentiment = 0.0;     // (positive - negative) / total
};

/// Throws ZeroLength for an empty token sequence.
[[nodiscard]] ArticleScore article_sentiment(std::span<const std::string> tokens, const lexicon::WordList& positive,
                                             const lexicon::WordList& negative);

enum class Aggregation { Mean, LengthWeighted };
enum class IndexMode { Balance, NegativeOnly };

[[nodiscard]] std::string_view to_string(Aggregation aggregation) noexcept;
[[nodiscard]] std::string_view to_string(IndexMode mode) noexcept;

struct SentimentSeries {
    std::string name;
    std::vector<YearMonth> months;
    std::vector<double> values;
    std::vector<std::size_t> article_counts;

    [[nodiscard]] std::size_t size() const noexcept { return months.size(); }
};

/// Per-month reduction of article scores. add() and merge() commute, so
/// the finished series is independent of article order and scheduling.
class MonthlyAccumulator {
public:
    explicit MonthlyAccumulator(Aggregation aggregation = Aggregation::Mean) : aggregation_(aggregation) {}

    void add(const YearMonth& month, const ArticleScore& score);
    void merge(const MonthlyAccumulator& other);
    [[nodiscard]] bool empty() const noexcept { return cells_.empty(); }
    [[nodiscard]] SentimentSeries finish(std::string name) const;

private:
    struct Cell {
        stats::ExactSum sentiment_sum;
        long long net_hits = 0;
        std::size_t tokens = 0;
        std::size_t articles = 0;
    };
    Aggregation aggregation_;
    std::map<YearMonth, Cell> cells_;
};

struct IndexDefinition {
    std::string name;
    lexicon::WordList positive;  // ignored in NegativeOnly mode
    lexicon::WordList negative;
};

struct IndexOptions {
    std::vector<std::string> tags;  // keep articles carrying any of these; empty keeps all
    Aggregation aggregation = Aggregation::Mean;
    IndexMode mode = IndexMode::Balance;
};

struct IndexStats {
    std::size_t records = 0;
    std::size_t filtered_out = 0;
    std::size_t zero_length = 0;
    std::size_t scored = 0;
    std::vector<std::size_t> conflicts;  // per index
};

/// Streams JSON-lines articles once and builds every index. Throws
/// EmptyCorpus if no article survives filtering and tokenization.
[[nodiscard]] std::vector<SentimentSeries> build_monthly_indices(std::istream& corpus,
                                                                 std::span<const IndexDefinition> indices,
                                                                 const IndexOptions& options,
                                                                 IndexStats* stats = nullptr);

[[nodiscard]] SentimentSeries build_monthly_index(std::span<const Article> corpus, const lexicon::WordList& positive,
                                                  const lexicon::WordList& negative, std::string name,
                                                  const IndexOptions& options = {});

/// `month,value,article_count`
[[nodiscard]] std::string format_series_csv(const SentimentSeries& series);
[[nodiscard]] SentimentSeries load_series_csv(const std::filesystem::path& path, std::string name);

}  // namespace affect::sentiment
