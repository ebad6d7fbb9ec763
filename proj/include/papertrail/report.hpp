#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "papertrail/corpus.hpp"
#include "papertrail/funding.hpp"
#include "papertrail/identity.hpp"
#include "papertrail/screening.hpp"
#include "papertrail/temporal.hpp"

namespace papertrail::report {

/// Real value shown with a fixed number of decimals.
struct Fixed {
    double value = 0.0;
    int places = 3;

    bool operator==(const Fixed&) const = default;
};

using Cell = std::variant<std::monostate, std::string, std::int64_t, Fixed>;

enum class RowKind { Data, Subtotal, GrandTotal };

std::string_view to_string(RowKind k) noexcept;

struct Row {
    RowKind kind = RowKind::Data;
    std::vector<Cell> cells;
};

struct ReportTable {
    std::string title;
    std::vector<std::string> columns;
    std::vector<Row> rows;
    std::vector<std::string> notes;

    /// Every integer column: each subtotal equals the data rows since the
    /// previous subtotal, and the grand total equals all data rows. Throws
    /// InvalidInput on a mismatch or a row of the wrong width.
    void check_totals() const;
};

std::string format_cell(const Cell& cell);

/// Rows per (publisher, source title) in alphabetical order, a subtotal per
/// publisher and a grand total. "Publications" counts articles only; book
/// chapters are pooled into one "Book Chapters" row per publisher and show up
/// under "Documents".
ReportTable publisher_rollup(const std::vector<PublicationRecord>& records);

inline constexpr std::string_view kBookChapters = "Book Chapters";

/// One row per cluster in label order: centroid proportions (3 decimals),
/// size and integer percentage.
ReportTable cluster_report(const temporal::ClusterSolution& solution);

/// Profiles per country, most frequent first. A profile listing several
/// countries counts once in each and is tallied under "Multi-country".
ReportTable country_counts(const std::vector<identity::ResearcherProfile>& profiles);

ReportTable per_year_table(const std::vector<PublicationRecord>& records);

/// Table-3 style listing; the note states the totals with each grant counted once.
ReportTable new_grantee_table(const funding::FundingSummary& summary,
                              const std::vector<funding::NewGrantee>& grantees);

ReportTable screening_funnel(const screening::ScreeningReport& report);

enum class Format { Csv, Json, Markdown, Svg };

/// "csv", "json", "md" or "svg". Throws UnsupportedFormat.
Format parse_format(std::string_view name);
std::string_view extension(Format f) noexcept;

/// Checks totals first. The SVG is a bar chart of the first numeric column
/// over the data rows, labelled by the first text cell.
std::string render(const ReportTable& table, Format format);

}  // namespace papertrail::report
