// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include <yaml-cpp/yaml.h>

#include "tsmatch/csv.hpp"
#include "tsmatch/ingest.hpp"

namespace tsmatch {

namespace {

// std distributions are implementation defined, so draws are done by hand.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    long integer(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(engine_() % span);
    }
    bool chance(double p) { return uniform() < p; }
    double normal(double mean, double sd) {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(integer(0, static_cast<long>(v.size()) - 1))];
    }

   private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

const NumberStyle kPlain{};
const NumberStyle kDotGroup{'.', ',', 0, ""};
const NumberStyle kCommaGroup{',', '.', 0, ""};
const NumberStyle kEuroCommaGroup{',', '.', 0, "€ "};
const NumberStyle kEuroDotGroup{'.', ',', 0, "€ "};
const NumberStyle kEuroDot2{0, '.', 2, "€ "};
const NumberStyle kComma2{0, ',', 2, ""};
const NumberStyle kOneDecimal{0, '.', 1, ""};

ColumnSpec col(std::string header, Source source, std::string attribute = {}) {
    ColumnSpec c;
    c.header = std::move(header);
    c.source = source;
    c.attribute = std::move(attribute);
    return c;
}

ColumnSpec num(ColumnSpec c, NumberStyle style) {
    c.number = std::move(style);
    return c;
}

ColumnSpec dated(ColumnSpec c, DateStyle style) {
    c.date = style;
    return c;
}

ColumnSpec texts(ColumnSpec c, std::vector<std::string> t) {
    c.texts = std::move(t);
    return c;
}

ColumnSpec range(ColumnSpec c, double lo, double hi) {
    c.lo = lo;
    c.hi = hi;
    return c;
}

ColumnSpec gaps(ColumnSpec c, double rate, std::string marker = "-") {
    c.missing_rate = rate;
    c.missing = std::move(marker);
    return c;
}

ColumnSpec wordy(ColumnSpec c, std::vector<std::string> words, double rate) {
    c.texts = std::move(words);
    c.text_rate = rate;
    return c;
}

ColumnSpec set(ColumnSpec c, std::string name) {
    c.cluster_set = std::move(name);
    return c;
}

const std::vector<std::string> kComments = {"", "", "", "rent free period ended", "indexation capped",
                                            "under negotiation", "see side letter", "1-5"};
const std::vector<std::string> kNoticeMonths = {"3 months", "6 months", "12 months"};
const std::vector<std::string> kOptions = {"99*5", "1*5", "2*5", "n*5"};

LayoutSpec jll() {
    const auto d = DateStyle::DayMonthYear;
    LayoutSpec l{"JLL", 40.0, {}};
    l.columns = {
        col("Tenant", Source::Tenant, "tenant_name"),
        texts(num(col("Floor", Source::Floor, "floor"), kPlain), {"GF"}),
        num(col("Total", Source::TotalArea, "total_area"), kDotGroup),
        num(col("Office/Business space", Source::OfficeArea, "office_area"), kDotGroup),
        gaps(num(col("Archive", Source::ArchiveArea, "archive_area"), kDotGroup), 0.1),
        gaps(range(num(col("Restaurant", Source::Number), kDotGroup), 20, 400), 0.9),
        num(col("pp", Source::Parking, "parking_units"), kPlain),
        num(col("Total", Source::PassingRent, "passing_rent_pa"), kEuroCommaGroup),
        gaps(range(num(col("Office+Restaurant", Source::RentTimes), kEuroCommaGroup), 1.05, 0), 0.3),
        num(col("Office", Source::OfficeRent, "office_rent_pa"), kEuroCommaGroup),
        gaps(range(num(col("Archive", Source::Number), kEuroCommaGroup), 2000, 60000), 0.1),
        range(num(col("unnamed.1", Source::RatePerSqm), kEuroCommaGroup), 0.8, 0),
        gaps(range(num(col("Restaurant*", Source::Number), kEuroCommaGroup), 10000, 90000), 0.7),
        range(num(col("unnamed.2", Source::RatePerSqm), kEuroDot2), 1.0 / 12.0, 0),
        gaps(range(num(col("Parking", Source::Number), kEuroDotGroup), 1000, 40000), 0.2),
        range(num(col("unnamed.3", Source::Number), kEuroCommaGroup), 100, 600),
        dated(col("Commencement", Source::Commencement, "commencement_date"), d),
        dated(col("Expiry", Source::Expiry, "expiry_date"), d),
        dated(col("Break", Source::Break, "break_date"), d),
        set(texts(col("Tenant option(s)", Source::Text), kOptions), "options"),
        set(texts(col("Notice Period", Source::Text), kNoticeMonths), "notice_period"),
        texts(col("Notice given", Source::Text), {"No", "No", "No", "Yes"}),
        range(num(col("WAULT", Source::Number), kOneDecimal), 0.5, 15),
        range(num(col("WAULB", Source::Number), kOneDecimal), 0.5, 15),
        dated(col("first index", Source::NextIndex, "next_index_date"), d),
        texts(col("Yes/No", Source::Vat, "vat_liable"), {"Yes", "No"}),
        col("% comp", Source::Blank),
        set(texts(col("Guarantee", Source::Text), {"n.a.", "bank guarantee", "parent guarantee", "n.a."}),
            "security"),
        set(texts(col("Comments", Source::Text), kComments), "comments"),
    };
    return l;
}

LayoutSpec savills() {
    const auto d = DateStyle::DayMonthYear;
    LayoutSpec l{"SAVILLS", 42.5, {}};
    l.columns = {
        texts(col("Property code", Source::Text), {"WEB001", "WEB002", "WEB003", "ODP014"}),
        texts(col("Property / Address", Source::PropertyName, "property_name"),
              {"Prinsengracht 110-112 te Amsterdam", "Weena 70 te Rotterdam", "Stationsplein 4 te Utrecht",
               "Lange Voorhout 9 te Den Haag"}),
        num(col("Floor", Source::Floor, "floor"), kPlain),
        range(texts(col("Unit number Savills", Source::UnitId, "unit_id"), {""}), 4, 0),
        col("Tenant", Source::Tenant, "tenant_name"),
        texts(col("Leased space", Source::UseType, "use_type"), {"Office", "Office", "Office", "Storage", "Retail"}),
        num(col("Office space sq m", Source::OfficeArea, "office_area"), kPlain),
        gaps(num(col("Storage space sq m", Source::StorageArea, "storage_area"), kPlain), 0.15, ""),
        num(col("Total Area sq m", Source::TotalArea, "total_area"), kPlain),
        num(col("Total rent office space/y", Source::OfficeRent, "office_rent_pa"), kComma2),
        num(col("Total annual rent", Source::PassingRent, "passing_rent_pa"), kComma2),
        texts(col("Payment period (m/q)", Source::Text), {"Q", "Q", "M"}),
        texts(col("VAT liable (y/n)", Source::Vat, "vat_liable"), {"Y", "N"}),
        gaps(col("VAT comp (€)", Source::Blank), 1.0, ""),
        dated(col("Start date lease", Source::Commencement, "commencement_date"), d),
        set(texts(col("Notice period", Source::Text), {"3", "6", "12"}), "notice_period"),
        gaps(dated(col("Break option date", Source::Break, "break_date"), d), 0.0, ""),
        gaps(col("Notice period Break option", Source::Blank), 1.0, ""),
        dated(col("Expiry date", Source::Expiry, "expiry_date"), d),
        dated(col("Next index date", Source::NextIndex, "next_index_date"), d),
        set(texts(col("Option period", Source::Text), {"nx5", "1x5", "2x5"}), "options"),
        set(texts(col("Type of Security", Source::Text), {"Bank Guarantee", "Deposit", "None"}), "security"),
        texts(col("Security Amount", Source::Text), {"0,00", "0,00"}),
        texts(col("CPI Indices (2000=100, 2006=100, 2015=100)", Source::Text), {"2015=100", "2006=100"}),
        set(gaps(texts(col("Comments", Source::Text), kComments), 0.0, ""), "comments"),
    };
    return l;
}

LayoutSpec cbre() {
    const auto d = DateStyle::DdMmYy;
    LayoutSpec l{"CBRE", 45.0, {}};
    l.columns = {
        col("Tenant", Source::Tenant, "tenant_name"),
        num(col("Floor(s)", Source::Floor, "floor"), kPlain),
        num(col("Office (sq m)", Source::OfficeArea, "office_area"), kCommaGroup),
        gaps(num(col("Archive (sq m)", Source::ArchiveArea, "archive_area"), kCommaGroup), 0.4, ""),
        num(col("PP", Source::Parking, "parking_units"), kPlain),
        range(num(col("Rent office (€/sqm)", Source::RatePerSqm), kPlain), 1.0, 0),
        gaps(range(num(col("Rent Archive (€/sqm)", Source::RatePerSqm), kPlain), 0.4, 0), 0.4, ""),
        range(num(col("Rent PP (€/PP)", Source::Number), kCommaGroup), 1200, 3000),
        range(num(col("Annual rent (excl. VAT)", Source::RentTimes), kCommaGroup), 1.0, 0),
        gaps(col("VAT compensation", Source::Blank), 1.0, ""),
        num(col("Total annual rent (excl. VAT)", Source::PassingRent, "passing_rent_pa"), kCommaGroup),
        texts(col("VAT", Source::Vat, "vat_liable"), {"Y", "N"}),
        dated(col("Start date", Source::Commencement, "commencement_date"), d),
        dated(col("Next index", Source::NextIndex, "next_index_date"), d),
        dated(col("Termination date", Source::Expiry, "expiry_date"), d),
        range(num(col("Remaining lease term", Source::Number), kOneDecimal), 0.5, 15),
        set(texts(col("Notice period", Source::Text), kNoticeMonths), "notice_period"),
        set(texts(col("Options/Extensions", Source::Text), {"N * 5 years", "1 * 5 years", "none"}), "options"),
    };
    return l;
}

LayoutSpec edif() {
    const auto d = DateStyle::DayMonYear;
    LayoutSpec l{"EDIF", 47.5, {}};
    l.columns = {
        texts(col("EDIF ID", Source::Text), {"0192", "0193", "0207"}),
        texts(col("Property ID No.", Source::Text), {"P006", "P007", "P011"}),
        texts(col("Property Name", Source::PropertyName, "property_name"),
              {"Apeldoorn", "Eindhoven", "Zwolle", "Amersfoort"}),
        texts(col("Country", Source::Text), {"Netherlands"}),
        range(texts(col("Demise ID No.", Source::UnitId, "unit_id"), {"D"}), 3, 0),
        num(col("Floor", Source::Floor, "floor"), kPlain),
        texts(col("Tenant ID No.", Source::Text), {"T0054", "T0061", "T0102", "T0117"}),
        col("Tenant Name", Source::Tenant, "tenant_name"),
        texts(col("Use", Source::UseType, "use_type"), {"Office", "Office", "Archive", "Retail"}),
        num(col("NLA (Sqm)", Source::TotalArea, "total_area"), kDotGroup),
        gaps(num(col("Parking Spaces", Source::Parking, "parking_units"), kPlain), 0.3),
        dated(col("Lease Start Date", Source::Commencement, "commencement_date"), d),
        dated(col("Break Date", Source::Break, "break_date"), d),
        dated(col("Expiry Date", Source::Expiry, "expiry_date"), d),
        wordy(range(dated(col("Earliest Expiry Date", Source::LaterExpiry), d), 0, 3), {"n.v.t.", "rolling"}, 0.35),
        range(num(col("Contracted Rent at Reporting Date (€ psqm pm)", Source::RatePerSqm), kComma2), 1.0 / 12.0,
              0),
        gaps(col("Contracted Rent at Reporting Date (€ per unit pm)", Source::Blank), 1.0, ""),
        num(col("Contracted Annual Rent (€ pa)", Source::PassingRent, "passing_rent_pa"), kDotGroup),
        range(num(col("TOTAL", Source::RentTimes), kDotGroup), 1.03, 0),
        range(num(col("14,50%", Source::RentTimes), kDotGroup), 1.03 * 1.145, 0),
    };
    return l;
}

LayoutSpec park15() {
    const auto d = DateStyle::DdMmYyyy;
    LayoutSpec l{"PARK15", 50.0, {}};
    l.columns = {
        range(num(col("ID", Source::Number), kPlain), 1, 400),
        texts(col("Address", Source::PropertyName, "property_name"),
              {"Parkweg 2", "Parkweg 14", "Havenstraat 31", "Industrieweg 8"}),
        col("Tenant", Source::Tenant, "tenant_name"),
        texts(col("Brand", Source::Text), {"IKEA", "Gamma", "Praxis", "Jumbo", "Action", "Kruidvat"}),
        num(col("Contractual size (sqm)", Source::TotalArea, "total_area"), kPlain),
        gaps(texts(col("LFA/GFA", Source::Text), {"LFA", "GFA"}), 0.6),
        range(num(col("Total size (sqm LFA NEN2580)", Source::AreaShare), kPlain), 0.15, 0.35),
        dated(col("Start date", Source::Commencement, "commencement_date"), d),
        dated(col("Expiry date", Source::Expiry, "expiry_date"), d),
        dated(col("Break date", Source::Break, "break_date"), d),
        range(num(col("WALL (to break)", Source::Number), kOneDecimal), 0.5, 12),
        range(num(col("WALL (to expiry)", Source::Number), kOneDecimal), 0.5, 15),
        set(texts(col("Option periods", Source::Text), kOptions), "options"),
        texts(col("Extension periods", Source::Text), {"n*5", "1*5", "-"}),
        set(texts(col("Notice periods (months)", Source::Text), {"6", "12"}), "notice_period"),
        num(col("Total gross annual rent", Source::PassingRent, "passing_rent_pa"), kEuroCommaGroup),
        dated(col("Next index date", Source::NextIndex, "next_index_date"), d),
        texts(col("VAT liable", Source::Vat, "vat_liable"), {"Yes", "No"}),
        set(texts(col("Type", Source::Text), {"Deposit", "Bank guarantee", "-"}), "security"),
        range(num(col("Amount", Source::Number), kEuroCommaGroup), 5000, 120000),
        texts(col("Terminated lease", Source::Text), {"No", "No", "No", "Yes"}),
        set(texts(col("Comments", Source::Text), {"-", "-", "turnover rent", "stepped rent"}), "comments"),
    };
    return l;
}

AttributeSpec text_attr(std::string name, std::vector<std::string> synonyms) {
    AttributeSpec a;
    a.name = std::move(name);
    a.data_type = DataType::String;
    a.synonyms = std::move(synonyms);
    return a;
}

AttributeSpec decimal_attr(std::string name, std::vector<std::string> synonyms, double lo, double hi,
                           std::optional<double> q1 = {}, std::optional<double> mean = {},
                           std::optional<double> q3 = {}) {
    AttributeSpec a = text_attr(std::move(name), std::move(synonyms));
    a.data_type = DataType::Decimal;
    NumericProfile p;
    p.min = lo;
    p.max = hi;
    p.q1 = q1;
    p.mean = mean;
    p.q3 = q3;
    a.numeric_profile = p;
    return derive_stats(std::move(a));
}

AttributeSpec date_attr(std::string name, std::vector<std::string> synonyms, Date lo, Date hi) {
    AttributeSpec a = text_attr(std::move(name), std::move(synonyms));
    a.data_type = DataType::Date;
    a.date_profile = DateProfile{lo, hi};
    return a;
}

Date ymd(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

// One lease record; every layout renders a subset of it.
struct Lease {
    std::string tenant;
    long floor = 0;
    double office = 0, archive = 0, storage = 0, total = 0, parking = 0;
    double rate = 0, office_rent = 0, passing_rent = 0;
    Date commencement{}, expiry{};
    std::optional<Date> break_date;
    Date next_index{};
    bool vat = true;
};

const std::vector<std::string> kTenantHeads = {"NeuroLogic", "Stonebridge", "Nuvion", "Enovix",  "Brightwell",
                                               "Kestrel",    "Altamira",    "Quantix", "Vireo",  "Harbourline",
                                               "Meridian",   "Solvera",     "Trelleborg", "Duinwater", "Noordkaap"};
const std::vector<std::string> kTenantTails = {"Partners", "Consulting", "Utilities", "Holding", "Logistics",
                                               "Capital",  "Systems",    "Labs",      "21",      "Group"};
const std::vector<std::string> kSuffixes = {"B.V.", "N.V.", "GmbH", "Ltd."};

Lease draw_lease(Rng& rng, double sigma) {
    Lease l;
    l.tenant = rng.pick(kTenantHeads) + " " + rng.pick(kTenantTails) + " " + rng.pick(kSuffixes);
    l.floor = rng.integer(-1, 12);
    l.office = static_cast<double>(rng.integer(200, 5000));
    l.archive = static_cast<double>(rng.integer(10, 200));
    l.storage = static_cast<double>(rng.integer(10, 500));
    l.total = l.office + l.archive + l.storage;
    l.parking = static_cast<double>(rng.integer(0, 100));
    l.rate = rng.normal(250.0, sigma);
    l.office_rent = l.office * l.rate;
    l.passing_rent = l.total * l.rate;
    const int start = static_cast<int>(rng.integer(0, days_between(ymd(2005, 1, 1), ymd(2022, 12, 31))));
    l.commencement = add_days(ymd(2005, 1, 1), start);
    const int term = static_cast<int>(rng.integer(3, 15));
    l.expiry = add_days(add_years(l.commencement, term), -1);
    const bool has_break = rng.chance(0.6);
    const int break_year = static_cast<int>(rng.integer(1, term - 1));
    if (has_break) l.break_date = add_days(add_years(l.commencement, break_year), -1);
    l.next_index = add_years(l.commencement, 2025 - static_cast<int>(l.commencement.year()));
    l.vat = rng.chance(0.8);
    return l;
}

const char* kMonths[] = {"jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"};

double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return static_cast<double>(std::llround(v * scale)) / scale;
}


}  // namespace

std::string format_styled_number(double value, const NumberStyle& style) {
    const double scale = std::pow(10.0, style.decimals);
    long long scaled = std::llround(value * scale);
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    const auto unit = static_cast<long long>(scale);
    std::string whole = std::to_string(scaled / unit);
    if (style.group) {
        std::string grouped;
        for (std::size_t i = 0; i < whole.size(); ++i) {
            if (i > 0 && (whole.size() - i) % 3 == 0) grouped += style.group;
            grouped += whole[i];
        }
        whole = grouped;
    }
    std::string out = style.prefix + (negative ? "-" : "") + whole;
    if (style.decimals > 0) {
        std::string frac = std::to_string(scaled % unit);
        frac.insert(0, static_cast<std::size_t>(style.decimals) - frac.size(), '0');
        out += style.decimal;
        out += frac;
    }
    return out;
}

std::string format_styled_date(const Date& d, DateStyle style) {
    const int y = static_cast<int>(d.year());
    const unsigned m = static_cast<unsigned>(d.month());
    const unsigned day = static_cast<unsigned>(d.day());
    char buf[32];
    switch (style) {
        case DateStyle::DayMonthYear: std::snprintf(buf, sizeof buf, "%u-%u-%d", day, m, y); break;
        case DateStyle::DdMmYy: std::snprintf(buf, sizeof buf, "%02u-%02u-%02d", day, m, y % 100); break;
        case DateStyle::DdMmYyyy: std::snprintf(buf, sizeof buf, "%02u-%02u-%d", day, m, y); break;
        case DateStyle::DayMonYear: std::snprintf(buf, sizeof buf, "%u-%s-%d", day, kMonths[m - 1], y); break;
    }
    return buf;
}

std::vector<LayoutSpec> reference_layouts() { return {jll(), savills(), cbre(), edif(), park15()}; }

TargetSchema reference_schema() {
    TargetSchema s;
    s.version = "1.0";
    s.attributes = {
        text_attr("property_name", {"Property", "Property Name", "Building", "Asset Name"}),
        text_attr("unit_id", {"Unit", "Unit ID", "Unit Number", "Lease Unit"}),
        text_attr("tenant_name", {"Tenant", "Tenant Name", "Lessee", "Occupier"}),
        text_attr("use_type", {"Use", "Usage", "Use Type", "Property Type"}),
        text_attr("vat_liable", {"VAT", "VAT Liable", "VAT Liability", "Subject to VAT"}),
        decimal_attr("floor", {"Floor", "Floor Level", "Level", "Storey"}, -2, 20, 1, 4, 8),
        decimal_attr("office_area", {"Office", "Office Area", "Office Space", "Lettable Office Area"}, 200, 5000, 1400, 2600,
                     3800),
        decimal_attr("archive_area", {"Archive", "Archive Area", "Archive Space"}, 10, 200),
        decimal_attr("storage_area", {"Storage Area", "Storage Space"}, 10, 500),
        decimal_attr("total_area", {"Total", "Total Area", "Total Leased Area", "Lettable Area", "Leased Area"}, 200, 6000, 1800,
                     2960, 4100),
        decimal_attr("parking_units", {"Parking", "Parking Spaces", "Parking Units", "Car Parks"}, 0, 100),
        decimal_attr("passing_rent_pa", {"Total", "Passing Rent", "Annual Rent", "Total Rent", "Contracted Rent"}, 40000,
                     2500000, 430000, 740000, 1020000),
        decimal_attr("office_rent_pa", {"Office", "Office Rent", "Annual Office Rent"}, 40000, 2000000, 340000,
                     650000, 930000),
        date_attr("commencement_date", {"Commencement", "Commencement Date", "Start Date", "Lease Start"},
                  ymd(2000, 1, 1), ymd(2025, 12, 31)),
        date_attr("expiry_date", {"Expiry", "Expiry Date", "Lease End", "End Date"}, ymd(2005, 1, 1),
                  ymd(2045, 12, 31)),
        date_attr("break_date", {"Break", "Break Date", "Break Option", "Early Termination"}, ymd(2005, 1, 1), ymd(2045, 12, 31)),
        date_attr("next_index_date", {"Next Index", "Index Date", "Indexation Date", "Review Date"},
                  ymd(2020, 1, 1), ymd(2030, 12, 31)),
    };
    return s;
}

Dataset generate_dataset(const std::vector<LayoutSpec>& layouts, std::size_t docs_per_layout,
                         std::size_t rows_per_doc, std::uint64_t seed) {
    if (rows_per_doc == 0) throw SynthError("rows_per_doc must be at least 1");
    if (docs_per_layout == 0) throw SynthError("docs_per_layout must be at least 1");
    if (layouts.empty()) throw SynthError("no layouts given");

    Dataset out;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> set_members;
    std::vector<std::string> set_order;

    for (std::size_t li = 0; li < layouts.size(); ++li) {
        const auto& layout = layouts[li];
        std::vector<std::string> dedup_headers;
        for (std::size_t di = 0; di < docs_per_layout; ++di) {
            Rng rng(splitmix(seed ^ splitmix((li + 1) * 0x10001ull + di)));
            const std::size_t doc_index = out.documents.size();
            const auto property_pick = static_cast<std::size_t>(rng.integer(0, 1 << 20));

            std::vector<csv::Row> rows;
            csv::Row header;
            for (const auto& c : layout.columns) header.push_back(c.header);
            rows.push_back(header);

            for (std::size_t r = 0; r < rows_per_doc; ++r) {
                const Lease lease = draw_lease(rng, layout.rate_sigma);
                out.rent_rates.push_back(lease.rate);
                csv::Row row;
                for (std::size_t ci = 0; ci < layout.columns.size(); ++ci) {
                    const auto& c = layout.columns[ci];
                    const bool gap = rng.chance(c.missing_rate);
                    const bool wordy = rng.chance(c.text_rate);
                    const double noise = rng.uniform(c.lo, c.hi);
                    const std::string& text_pick = c.texts.empty() ? c.missing : rng.pick(c.texts);

                    std::optional<double> number;
                    std::optional<Date> date;
                    std::string text;
                    switch (c.source) {
                        case Source::Tenant: text = lease.tenant; break;
                        case Source::Floor:
                            if (lease.floor == 0 && !c.texts.empty()) text = c.texts.front();
                            else number = static_cast<double>(lease.floor);
                            break;
                        case Source::OfficeArea: number = lease.office; break;
                        case Source::ArchiveArea: number = lease.archive; break;
                        case Source::StorageArea: number = lease.storage; break;
                        case Source::TotalArea: number = lease.total; break;
                        case Source::Parking: number = lease.parking; break;
                        case Source::PassingRent: number = lease.passing_rent; break;
                        case Source::OfficeRent: number = lease.office_rent; break;
                        case Source::Commencement: date = lease.commencement; break;
                        case Source::Expiry: date = lease.expiry; break;
                        case Source::Break:
                            if (lease.break_date) date = *lease.break_date;
                            else text = c.missing;
                            break;
                        case Source::NextIndex: date = lease.next_index; break;
                        case Source::Vat: text = c.texts.at(lease.vat ? 0 : 1); break;
                        case Source::PropertyName: text = c.texts.at(property_pick % c.texts.size()); break;
                        case Source::UnitId: {
                            char buf[32];
                            std::snprintf(buf, sizeof buf, "%0*zu", static_cast<int>(c.lo), (r + 1) * 10);
                            text = (c.texts.empty() ? std::string() : c.texts.front()) + buf;
                            break;
                        }
                        case Source::UseType: text = text_pick; break;
                        case Source::Text: text = text_pick; break;
                        case Source::Number: number = noise; break;
                        case Source::RatePerSqm: number = lease.rate * c.lo; break;
                        case Source::RentTimes: number = lease.passing_rent * c.lo; break;
                        case Source::AreaShare: number = std::round(lease.total * noise); break;
                        case Source::LaterExpiry:
                            date = add_years(lease.expiry, static_cast<int>(std::floor(noise)) % 3);
                            break;
                        case Source::Blank: text = c.missing; break;
                    }
                    if (gap) {
                        row.push_back(c.missing);
                        continue;
                    }
                    if (wordy) {
                        row.push_back(text_pick);
                        continue;
                    }
                    if (number) {
                        text = format_styled_number(*number, c.number);
                        LedgerCell cell;
                        cell.document = doc_index;
                        cell.row = r;
                        cell.column = ci;
                        cell.text = text;
                        cell.number = round_to(*number, c.number.decimals);
                        cell.decimals = c.number.decimals;
                        out.ledger.push_back(cell);
                    } else if (date) {
                        text = format_styled_date(*date, c.date);
                        LedgerCell cell;
                        cell.document = doc_index;
                        cell.row = r;
                        cell.column = ci;
                        cell.text = text;
                        cell.is_date = true;
                        cell.date = *date;
                        out.ledger.push_back(cell);
                    }
                    row.push_back(text);
                }
                rows.push_back(std::move(row));
            }

            GeneratedDocument doc;
            doc.format_id = layout.format_id;
            char id[64];
            std::snprintf(id, sizeof id, "%s_%02zu", layout.format_id.c_str(), di + 1);
            doc.document_id = id;
            for (auto& ch : doc.document_id) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            doc.csv = csv::format(rows);
            if (di == 0) dedup_headers = load_table(doc.csv, layout.format_id).headers;
            out.documents.push_back(std::move(doc));
        }

        for (std::size_t ci = 0; ci < layout.columns.size(); ++ci) {
            const auto& c = layout.columns[ci];
            if (!c.attribute.empty())
                out.ground_truth.entries.push_back({layout.format_id, dedup_headers[ci], c.attribute});
            const std::string set_name = c.attribute.empty() ? c.cluster_set : c.attribute;
            if (set_name.empty()) continue;
            auto& members = set_members[set_name];
            if (members.empty()) set_order.push_back(set_name);
            for (const auto& m : members)
                if (m.first == layout.format_id)
                    throw SynthError("layout " + layout.format_id + " has two columns in set " + set_name);
            members.emplace_back(layout.format_id, dedup_headers[ci]);
        }
    }

    for (const auto& l : layouts) out.cluster_truth.formats.push_back(l.format_id);
    for (const auto& name : set_order) {
        const auto& members = set_members[name];
        if (members.size() < 2) continue;
        out.cluster_truth.sets.push_back({name, members});
    }
    return out;
}

void write_dataset(const Dataset& dataset, const TargetSchema& schema, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(dir) / "documents", ec);
    if (ec) throw SynthError("cannot create '" + dir + "': " + ec.message());
    auto write = [](const fs::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw SynthError("cannot write '" + path.string() + "'");
        out << text;
        if (!out) throw SynthError("cannot write '" + path.string() + "'");
    };

    YAML::Emitter manifest;
    manifest << YAML::BeginMap << YAML::Key << "documents" << YAML::Value << YAML::BeginSeq;
    for (const auto& doc : dataset.documents) {
        const std::string rel = "documents/" + doc.document_id + ".csv";
        write(fs::path(dir) / rel, doc.csv);
        manifest << YAML::BeginMap << YAML::Key << "path" << YAML::Value << rel << YAML::Key << "format_id"
                 << YAML::Value << doc.format_id << YAML::Key << "document_id" << YAML::Value << doc.document_id
                 << YAML::EndMap;
    }
    manifest << YAML::EndSeq << YAML::EndMap;
    write(fs::path(dir) / "manifest.yaml", std::string(manifest.c_str()) + "\n");
    write(fs::path(dir) / "ground_truth.csv", ground_truth_to_csv(dataset.ground_truth));
    write(fs::path(dir) / "cluster_truth.csv", cluster_truth_to_csv(dataset.cluster_truth));
    write(fs::path(dir) / "schema.yaml",
          "# Reconstructed 17-attribute template for the synthetic corpus. Profiles are\n"
          "# plausible ranges chosen for generation, not an authoritative data model.\n" +
              dump_schema(schema));
}

}  // namespace tsmatch
