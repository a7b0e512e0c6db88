#pragma once

#include "affect/error.hpp"
#include "affect/text_io.hpp"

#include <Eigen/Core>

#include <atomic>
#include <filesystem>
#include <string>
#include <unistd.h>

namespace test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("affect-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        affect::io::write_file(path_ / name, content);
        return path_ / name;
    }

private:
    std::filesystem::path path_;
};

/// Numeric CSV with a header row.
inline Eigen::MatrixXd read_matrix(const std::filesystem::path& path) {
    const auto lines = affect::io::read_lines(path);
    const auto cols = affect::io::split(lines.at(0), ',').size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(lines.size() - 1), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = affect::io::split(lines[r], ',');
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c)) = *affect::io::parse_double(cells.at(c));
        }
    }
    return m;
}

inline std::filesystem::path data_path(const std::string& name) { return std::filesystem::path(AFFECT_TEST_DATA) / name; }

template <typename F>
affect::ErrorCode error_code_of(F&& f) {
    try {
        f();
    } catch (const affect::Error& e) {
        return e.code();
    }
    throw std::logic_error("expected affect::Error");
}

}  // namespace test
