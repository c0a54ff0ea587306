#ifndef TRIALSCREEN_DATE_HPP
#define TRIALSCREEN_DATE_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace trialscreen {

/// Calendar date. Comparisons are by calendar day; no time zones.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;

    std::string to_string() const;  // "YYYY-MM-DD"

    /// Current date from the system clock (local civil day).
    static Date today();
};

/// Strict ISO-8601 date parse ("YYYY-MM-DD"). Rejects impossible
/// calendar days, leap years handled.
std::optional<Date> parse_date(std::string_view s);

}  // namespace trialscreen

#endif
