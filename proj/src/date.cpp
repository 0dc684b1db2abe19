// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/date.hpp"

#include <charconv>
#include <cstdio>

namespace tsmatch {

std::string to_iso(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

std::optional<Date> parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        auto sub = text.substr(pos, len);
        auto [p, ec] = std::from_chars(sub.data(), sub.data() + sub.size(), v);
        if (ec != std::errc{} || p != sub.data() + sub.size()) return std::nullopt;
        return v;
    };
    auto y = field(0, 4), m = field(5, 2), d = field(8, 2);
    if (!y || !m || !d) return std::nullopt;
    Date out{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
             std::chrono::day{static_cast<unsigned>(*d)}};
    if (!out.ok()) return std::nullopt;
    return out;
}

Date add_days(const Date& d, int days) {
    return Date{std::chrono::sys_days{d} + std::chrono::days{days}};
}

Date add_years(const Date& d, int years) {
    Date out = d + std::chrono::years{years};
    if (!out.ok()) out = out.year() / out.month() / std::chrono::last;  // 29 Feb
    return out;
}

long days_between(const Date& from, const Date& to) {
    return (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count();
}

}  // namespace tsmatch
