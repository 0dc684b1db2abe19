// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tsmatch {

// Calendar date at day precision.
using Date = std::chrono::year_month_day;

std::string to_iso(const Date& d);

// Strict yyyy-mm-dd; returns nullopt for anything else or an invalid day.
std::optional<Date> parse_iso_date(std::string_view text);

Date add_days(const Date& d, int days);
Date add_years(const Date& d, int years);
long days_between(const Date& from, const Date& to);

}  // namespace tsmatch
