// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsmatch/date.hpp"
#include "tsmatch/fd_baseline.hpp"
#include "tsmatch/optimizer.hpp"
#include "tsmatch/schema.hpp"

namespace tsmatch {

struct SynthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// How a number is written: grouping and decimal characters, fixed decimals,
/// optional prefix such as "€ ".
struct NumberStyle {
    char group = 0;  // 0 = no grouping
    char decimal = '.';
    int decimals = 0;
    std::string prefix;
};

enum class DateStyle {
    DayMonthYear,   // 6-3-2013
    DdMmYy,         // 01-01-08
    DdMmYyyy,       // 01-01-2012
    DayMonYear,     // 1-jan-2016
};

/// Where a column's values come from. The first group draws from the row's
/// lease record, the rest is layout noise.
enum class Source {
    Tenant, Floor, OfficeArea, ArchiveArea, StorageArea, TotalArea, Parking,
    PassingRent, OfficeRent, Commencement, Expiry, Break, NextIndex, Vat,
    PropertyName, UnitId, UseType,
    // noise
    Text,         // pick from `texts`
    Number,       // uniform in [lo, hi]
    RatePerSqm,   // the row's rent rate scaled by `lo`
    RentTimes,    // passing rent scaled by `lo`
    AreaShare,    // total area scaled by a draw in [lo, hi]
    LaterExpiry,  // expiry date, sometimes later
    Blank,        // always the missing marker
};

struct ColumnSpec {
    std::string header;     // as written; duplicates get ".k" suffixes on ingest
    Source source = Source::Blank;
    std::string attribute;  // target attribute, empty for noise
    NumberStyle number;
    DateStyle date = DateStyle::DayMonthYear;
    std::vector<std::string> texts;
    double lo = 0.0, hi = 0.0;
    double missing_rate = 0.0;
    std::string missing = "-";
    double text_rate = 0.0;  // share of cells replaced by a pick from `texts`
    std::string cluster_set;  // FD truth set for noise columns
};

struct LayoutSpec {
    std::string format_id;
    double rate_sigma = 45.0;  // standard deviation of the per-sqm rent rate
    std::vector<ColumnSpec> columns;
};

/// The five reference layouts (JLL, SAVILLS, CBRE, EDIF, PARK15).
std::vector<LayoutSpec> reference_layouts();

/// Target schema the reference layouts are labeled against (17 attributes).
TargetSchema reference_schema();

struct GeneratedDocument {
    std::string format_id;
    std::string document_id;
    std::string csv;
};

/// A numeric or date cell the generator rendered, for round-trip checks.
struct LedgerCell {
    std::size_t document = 0;
    std::size_t row = 0;
    std::size_t column = 0;
    std::string text;
    bool is_date = false;
    double number = 0.0;
    int decimals = 0;
    Date date{};
};

struct Dataset {
    std::vector<GeneratedDocument> documents;
    GroundTruth ground_truth;
    ClusterTruth cluster_truth;
    std::vector<LedgerCell> ledger;
    std::vector<double> rent_rates;  // per generated row, in generation order
};

Dataset generate_dataset(const std::vector<LayoutSpec>& layouts, std::size_t docs_per_layout,
                         std::size_t rows_per_doc, std::uint64_t seed);

std::string format_styled_number(double value, const NumberStyle& style);
std::string format_styled_date(const Date& d, DateStyle style);

/// Writes documents/<id>.csv, manifest.yaml, ground_truth.csv,
/// cluster_truth.csv and schema.yaml under `dir`.
void write_dataset(const Dataset& dataset, const TargetSchema& schema, const std::string& dir);

}  // namespace tsmatch
