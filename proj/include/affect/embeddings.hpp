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

namespace affect::features {

/// Word vectors of one common dimension, first occurrence of a word kept.
class EmbeddingTable {
public:
    EmbeddingTable() = default;

    /// Throws DimensionMismatch / NonFinite on bad input. Words are lowercased.
    EmbeddingTable(std::span<const std::string> words, const Eigen::MatrixXd& vectors);

    [[nodiscard]] std::size_t dimension() const noexcept { return static_cast<std::size_t>(vectors_.cols()); }
    [[nodiscard]] std::size_t size() const noexcept { return words_.size(); }
    [[nodiscard]] const std::vector<std::string>& words() const noexcept { return words_; }
    [[nodiscard]] const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }
    [[nodiscard]] std::optional<std::size_t> find(std::string_view word) const;
    [[nodiscard]] std::size_t duplicates_skipped() const noexcept { return duplicates_; }

private:
    std::vector<std::string> words_;
    Eigen::MatrixXd vectors_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t duplicates_ = 0;
};

/// Text vectors: `token v1 ... vd` per line, optional `count dimension`
/// header. With `keep`, only those (lowercase) words are retained, but every
/// line is still checked for dimension consistency.
[[nodiscard]] EmbeddingTable load_embeddings(const std::filesystem::path& path,
                                             const std::unordered_set<std::string>* keep = nullptr);

}  // namespace affect::features
