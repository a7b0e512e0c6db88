#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace affect::io {

[[nodiscard]] std::string_view trim(std::string_view text) noexcept;
[[nodiscard]] std::string to_lower_ascii(std::string_view text);
[[nodiscard]] std::vector<std::string_view> split(std::string_view text, char delimiter);

/// Full-string parse; nullopt on any trailing garbage.
[[nodiscard]] std::optional<double> parse_double(std::string_view text) noexcept;
[[nodiscard]] std::optional<long long> parse_int(std::string_view text) noexcept;

/// Reads every line, stripping a trailing '\r'. Throws MissingFile.
[[nodiscard]] std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Writes the file, creating parent directories as needed.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Shortest representation that round-trips to the same double.
[[nodiscard]] std::string format_double(double value);

/// Picks ',' or '\t' from a header row; errors on neither or both.
[[nodiscard]] char detect_delimiter(std::string_view header, const std::filesystem::path& source);

}  // namespace affect::io
