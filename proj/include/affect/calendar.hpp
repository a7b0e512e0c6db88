#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace affect {

/// Calendar month, ordered chronologically.
struct YearMonth {
    int year = 1970;
    int month = 1;

    auto operator<=>(const YearMonth&) const = default;

    [[nodiscard]] std::string to_string() const;  // YYYY-MM
    [[nodiscard]] YearMonth next() const noexcept {
        return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
    }
    /// Months from `from` to this month.
    [[nodiscard]] int months_since(const YearMonth& from) const noexcept {
        return (year - from.year) * 12 + (month - from.month);
    }

    /// Accepts `YYYY-MM`.
    [[nodiscard]] static std::optional<YearMonth> parse(std::string_view text);
};

struct CalendarDate {
    int year = 1970;
    int month = 1;
    int day = 1;

    [[nodiscard]] YearMonth year_month() const noexcept { return {year, month}; }
    /// Accepts `YYYY-MM-DD`, optionally followed by `T` or a space and a time.
    [[nodiscard]] static std::optional<CalendarDate> parse(std::string_view text);
};

}  // namespace affect
