#include "affect/embeddings.hpp"

#include "affect/error.hpp"
#include "affect/text_io.hpp"

#include <cmath>
#include <fstream>

namespace affect::features {

EmbeddingTable::EmbeddingTable(std::span<const std::string> words, const Eigen::MatrixXd& vectors) {
    if (static_cast<std::size_t>(vectors.rows()) != words.size()) {
        throw Error(ErrorCode::DimensionMismatch, "embedding rows do not match word count");
    }
    if (!vectors.allFinite()) throw Error(ErrorCode::NonFinite, "non-finite embedding component");
    std::vector<Eigen::Index> keep;
    for (std::size_t i = 0; i < words.size(); ++i) {
        auto word = io::to_lower_ascii(words[i]);
        if (index_.emplace(word, words_.size()).second) {
            words_.push_back(std::move(word));
            keep.push_back(static_cast<Eigen::Index>(i));
        } else {
            ++duplicates_;
        }
    }
    vectors_.resize(static_cast<Eigen::Index>(keep.size()), vectors.cols());
    for (std::size_t r = 0; r < keep.size(); ++r) vectors_.row(static_cast<Eigen::Index>(r)) = vectors.row(keep[r]);
}

std::optional<std::size_t> EmbeddingTable::find(std::string_view word) const {
    const auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::vector<std::string_view> fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace

EmbeddingTable load_embeddings(const std::filesystem::path& path, const std::unordered_set<std::string>* keep) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());

    std::vector<std::string> words;
    std::vector<double> flat;
    std::optional<std::size_t> dimension;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto parts = fields(line);
        if (parts.empty()) continue;
        const auto where = path.string() + ":" + std::to_string(line_no);
        if (first) {
            first = false;
            if (parts.size() == 2) {
                const auto count = io::parse_int(parts[0]);
                const auto dim = io::parse_int(parts[1]);
                if (count && dim && *count >= 0 && *dim > 0) {
                    dimension = static_cast<std::size_t>(*dim);
                    continue;
                }
            }
        }
        const auto dim = parts.size() - 1;
        if (dim == 0) throw Error(ErrorCode::DimensionMismatch, where + ": token without values");
        if (!dimension) dimension = dim;
        if (dim != *dimension) {
            throw Error(ErrorCode::DimensionMismatch, where + ": expected " + std::to_string(*dimension) +
                                                          " values, found " + std::to_string(dim));
        }
        auto word = io::to_lower_ascii(parts[0]);
        if (keep != nullptr && !keep->contains(word)) continue;
        for (std::size_t c = 1; c < parts.size(); ++c) {
            const auto value = io::parse_double(parts[c]);
            if (!value) throw Error(ErrorCode::NonNumeric, where + ": bad value '" + std::string(parts[c]) + "'");
            if (!std::isfinite(*value)) throw Error(ErrorCode::NonFinite, where + ": non-finite value");
            flat.push_back(*value);
        }
        words.push_back(std::move(word));
    }
    if (!dimension) throw Error(ErrorCode::EmptyList, "no embeddings in " + path.string());
    const auto d = static_cast<Eigen::Index>(*dimension);
    Eigen::MatrixXd vectors(static_cast<Eigen::Index>(words.size()), d);
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
        for (Eigen::Index c = 0; c < d; ++c) vectors(r, c) = flat[static_cast<std::size_t>(r * d + c)];
    }
    return EmbeddingTable(words, vectors);
}

}  // namespace affect::features
