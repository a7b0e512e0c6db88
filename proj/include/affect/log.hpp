#pragma once

#include <atomic>
#include <cstdio>
#include <string_view>
#include <utility>

#include <fmt/format.h>

namespace affect::log {

enum class Level { Quiet = 0, Warn = 1, Info = 2 };

inline std::atomic<Level>& threshold() {
    static std::atomic<Level> level{Level::Warn};
    return level;
}

template <typename... Args>
void warn(fmt::format_string<Args...> format, Args&&... args) {
    if (threshold().load() < Level::Warn) return;
    fmt::print(stderr, "warning: {}\n", fmt::format(format, std::forward<Args>(args)...));
}

template <typename... Args>
void info(fmt::format_string<Args...> format, Args&&... args) {
    if (threshold().load() < Level::Info) return;
    fmt::print(stderr, "{}\n", fmt::format(format, std::forward<Args>(args)...));
}

}  // namespace affect::log
