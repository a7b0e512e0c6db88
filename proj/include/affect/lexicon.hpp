#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>

namespace affect::lexicon {

/// Closed rating interval.
struct Scale {
    double min = 0.0;
    double max = 1.0;

    [[nodiscard]] bool contains(double value) const noexcept { return value >= min && value <= max; }
    [[nodiscard]] double width() const noexcept { return max - min; }
};

inline constexpr Scale kVadScale{0.0, 1.0};
inline constexpr Scale kBinderScale{0.0, 7.0};

/// Named, ordered set of lowercase tokens.
class WordList {
public:
    WordList() = default;

    /// Lowercases, drops duplicates (first occurrence kept) and validates.
    /// Throws InvalidToken for empty or whitespace-bearing tokens and
    /// EmptyList when nothing remains.
    static WordList from_tokens(std::string name, std::span<const std::string> tokens);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<std::string>& words() const noexcept { return words_; }
    [[nodiscard]] std::size_t size() const noexcept { return words_.size(); }
    [[nodiscard]] bool contains(std::string_view word) const;

private:
    std::string name_;
    std::vector<std::string> words_;
    std::unordered_set<std::string> index_;
};

/// One token per line, `#` comments, blank lines ignored. The list name
/// defaults to the file stem.
[[nodiscard]] WordList load_word_list(const std::filesystem::path& path,
                                      std::optional<std::string> name = std::nullopt);

/// Serializes in the same format load_word_list reads.
[[nodiscard]] std::string format_word_list(const WordList& list);

/// Word → ratings table. Rows keep first-occurrence order of their word.
struct RatingTable {
    std::vector<std::string> feature_names;
    Scale scale;
    std::vector<std::string> words;
    Eigen::MatrixXd values;  // words.size() x feature_names.size()
    std::size_t duplicate_rows = 0;

    [[nodiscard]] std::optional<std::size_t> find(std::string_view word) const;
    [[nodiscard]] std::optional<std::size_t> feature_index(std::string_view feature) const;
    [[nodiscard]] std::size_t size() const noexcept { return words.size(); }

    /// Builds the lookup index; called by the constructors below.
    void reindex();

private:
    std::unordered_map<std::string, std::size_t> index_;
};

/// Validates shape and scale of an in-memory table (words are lowercased,
/// later duplicates overwrite earlier ones).
[[nodiscard]] RatingTable make_rating_table(std::vector<std::string> feature_names, Scale scale,
                                            std::span<const std::string> words,
                                            const Eigen::MatrixXd& values);

/// CSV or TSV with header `word,<feature>...`; delimiter detected from the header.
[[nodiscard]] RatingTable load_rating_table(const std::filesystem::path& path, Scale scale);

/// Words of a list joined to their ratings.
struct RatedWordSet {
    std::string list_name;
    std::vector<std::string> feature_names;
    Scale scale;
    std::vector<std::string> words;
    Eigen::MatrixXd rows;  // words.size() x feature_names.size()
    std::vector<std::string> dropped;

    [[nodiscard]] double coverage() const noexcept {
        const auto total = words.size() + dropped.size();
        return total == 0 ? 0.0 : static_cast<double>(words.size()) / static_cast<double>(total);
    }
    [[nodiscard]] std::size_t feature_index(std::string_view feature) const;
    [[nodiscard]] Eigen::VectorXd column(std::string_view feature) const;
};

/// Throws NoOverlap when no list word is in the table.
[[nodiscard]] RatedWordSet join(const WordList& list, const RatingTable& table);

/// Throws EmptySet for a set without rows.
[[nodiscard]] Eigen::VectorXd feature_means(const RatedWordSet& set);

}  // namespace affect::lexicon
