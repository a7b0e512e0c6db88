#include "affect/calendar.hpp"

#include "affect/text_io.hpp"

#include <fmt/format.h>

namespace affect {

namespace {

bool leap(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

int days_in(int year, int month) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return month == 2 && leap(year) ? 29 : kDays[month - 1];
}

std::optional<int> digits(std::string_view text, std::size_t width) {
    if (text.size() != width) return std::nullopt;
    for (char c : text) {
        if (c < '0' || c > '9') return std::nullopt;
    }
    return static_cast<int>(*io::parse_int(text));
}

}  // namespace

std::string YearMonth::to_string() const { return fmt::format("{:04d}-{:02d}", year, month); }

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
    text = io::trim(text);
    if (text.size() != 7 || text[4] != '-') return std::nullopt;
    const auto y = digits(text.substr(0, 4), 4);
    const auto m = digits(text.substr(5, 2), 2);
    if (!y || !m || *m < 1 || *m > 12) return std::nullopt;
    return YearMonth{*y, *m};
}

std::optional<CalendarDate> CalendarDate::parse(std::string_view text) {
    text = io::trim(text);
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (text.size() > 10 && text[10] != 'T' && text[10] != ' ') return std::nullopt;
    const auto y = digits(text.substr(0, 4), 4);
    const auto m = digits(text.substr(5, 2), 2);
    const auto d = digits(text.substr(8, 2), 2);
    if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1 || *d > days_in(*y, *m)) return std::nullopt;
    return CalendarDate{*y, *m, *d};
}

}  // namespace affect
