#include "affect/text_io.hpp"

#include "affect/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

#include <fmt/format.h>

namespace affect {

std::string_view code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::MissingBundle: return "MissingBundle";
    case ErrorCode::MissingModel: return "MissingModel";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::InvalidToken: return "InvalidToken";
    case ErrorCode::AmbiguousDelimiter: return "AmbiguousDelimiter";
    case ErrorCode::OutOfScale: return "OutOfScale";
    case ErrorCode::NonNumeric: return "NonNumeric";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::SampleTooSmall: return "SampleTooSmall";
    case ErrorCode::InsufficientMatch: return "InsufficientMatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::MissingFeature: return "MissingFeature";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::LabelTie: return "LabelTie";
    case ErrorCode::ZeroLength: return "ZeroLength";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::ConstantSeries: return "ConstantSeries";
    case ErrorCode::InsufficientObservations: return "InsufficientObservations";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::TrainingDiverged: return "TrainingDiverged";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::DegenerateCovariance: return "DegenerateCovariance";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::CollinearRegressors: return "CollinearRegressors";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NumericOverflow: return "NumericOverflow";
    case ErrorCode::BootstrapFailure: return "BootstrapFailure";
    }
    return "Unknown";
}

}  // namespace affect

namespace affect::io {

std::string_view trim(std::string_view text) noexcept {
    const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    return text;
}

std::string to_lower_ascii(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

std::vector<std::string_view> split(std::string_view text, char delimiter) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(delimiter, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::optional<double> parse_double(std::string_view text) noexcept {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::optional<long long> parse_int(std::string_view text) noexcept {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    return lines;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::MissingFile, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string format_double(double value) { return fmt::format("{}", value); }

char detect_delimiter(std::string_view header, const std::filesystem::path& source) {
    const bool comma = header.find(',') != std::string_view::npos;
    const bool tab = header.find('\t') != std::string_view::npos;
    if (comma && tab) {
        throw Error(ErrorCode::AmbiguousDelimiter,
                    "header of " + source.string() + " contains both commas and tabs");
    }
    if (!comma && !tab) {
        throw Error(ErrorCode::AmbiguousDelimiter,
                    "header of " + source.string() + " has no comma or tab delimiter");
    }
    return comma ? ',' : '\t';
}

}  // namespace affect::io
