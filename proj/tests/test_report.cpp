#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "expect.hpp"
#include "papertrail/network.hpp"
#include "papertrail/report.hpp"
#include "papertrail/screening.hpp"
#include "support.hpp"

using namespace papertrail;
using namespace papertrail::report;
using testsupport::code_of;
using testsupport::data_path;

namespace {

// Compares against tests/golden/<name>; PAPERTRAIL_UPDATE_GOLDEN=1 rewrites it.
void check_golden(const std::string& name, const std::string& actual) {
    const auto path = testsupport::golden_path(name);
    if (std::getenv("PAPERTRAIL_UPDATE_GOLDEN") != nullptr) {
        std::ofstream(path, std::ios::binary) << actual;
        return;
    }
    CAPTURE(name);
    CHECK(testsupport::read_file(path) == actual);
}

const Row* find_row(const ReportTable& t, const std::string& first) {
    for (const auto& r : t.rows)
        if (!r.cells.empty() && format_cell(r.cells[0]) == first) return &r;
    return nullptr;
}

std::vector<PublicationRecord> included() {
    return screening::screen(load_corpus(data_path("synth/corpus.csv")).records, {}).included;
}

}  // namespace

TEST_CASE("format_cell") {
    CHECK(format_cell(Cell{}) == "");
    CHECK(format_cell(Cell{std::string("x")}) == "x");
    CHECK(format_cell(Cell{std::int64_t{-3}}) == "-3");
    CHECK(format_cell(Cell{Fixed{0.2176, 3}}) == "0.218");
    CHECK(format_cell(Cell{Fixed{0.0, 3}}) == "0.000");
    CHECK(format_cell(Cell{Fixed{2.5, 0}}) == "2");
}

TEST_CASE("formats") {
    CHECK(parse_format("csv") == Format::Csv);
    CHECK(parse_format("md") == Format::Markdown);
    CHECK(parse_format("json") == Format::Json);
    CHECK(parse_format("svg") == Format::Svg);
    CHECK(extension(Format::Markdown) == "md");
    CHECK(code_of([] { parse_format("xlsx"); }) == ErrorCode::UnsupportedFormat);
}

TEST_CASE("an empty table renders its header") {
    ReportTable t;
    t.title = "Empty";
    t.columns = {"A", "B"};
    CHECK(render(t, Format::Csv) == "A,B\r\n");
    CHECK(render(t, Format::Markdown).find("| A | B |") != std::string::npos);
    CHECK_NOTHROW(render(t, Format::Svg));
    CHECK_NOTHROW(render(t, Format::Json));
}

TEST_CASE("check_totals catches inconsistent tables") {
    ReportTable t;
    t.columns = {"Name", "N"};
    t.rows = {{RowKind::Data, {std::string("a"), std::int64_t{2}}},
              {RowKind::Data, {std::string("b"), std::int64_t{3}}},
              {RowKind::GrandTotal, {std::string("Total"), std::int64_t{5}}}};
    CHECK_NOTHROW(t.check_totals());
    t.rows.back().cells[1] = std::int64_t{6};
    CHECK(code_of([&] { t.check_totals(); }) == ErrorCode::InvalidInput);
    CHECK(code_of([&] { render(t, Format::Csv); }) == ErrorCode::InvalidInput);
    t.rows.back().cells = {std::string("Total")};
    CHECK(code_of([&] { t.check_totals(); }) == ErrorCode::InvalidInput);
}

TEST_CASE("publisher rollup on the bundled fixture") {
    const auto records = included();
    const auto t = publisher_rollup(records);
    CHECK(t.columns == std::vector<std::string>{"Publisher", "Source title", "Publications", "Documents", "Times cited"});
    CHECK_NOTHROW(t.check_totals());

    const auto* bentham = find_row(t, "Bentham Science Publishers Total");
    REQUIRE(bentham != nullptr);
    CHECK(bentham->kind == RowKind::Subtotal);
    CHECK(std::get<std::int64_t>(bentham->cells[2]) == 25);
    CHECK(std::get<std::int64_t>(bentham->cells[4]) == 733);

    const auto& grand = t.rows.back();
    CHECK(grand.kind == RowKind::GrandTotal);
    CHECK(std::get<std::int64_t>(grand.cells[3]) == static_cast<std::int64_t>(records.size()));
    CHECK(std::get<std::int64_t>(grand.cells[4]) == network::citation_stats(records).total);

    std::size_t chapters = 0;
    for (const auto& r : t.rows)
        if (r.cells.size() > 1 && format_cell(r.cells[1]) == kBookChapters) {
            ++chapters;
            CHECK(std::get<std::int64_t>(r.cells[2]) == 0);
        }
    CHECK(chapters == 1);

    check_golden("publishers.csv", render(t, Format::Csv));
    check_golden("publishers.md", render(t, Format::Markdown));
}

TEST_CASE("publisher rollup grand total equals citation total on the citation fixture") {
    const auto records = load_corpus(data_path("citations_138.csv")).records;
    const auto t = publisher_rollup(records);
    CHECK(std::get<std::int64_t>(t.rows.back().cells[4]) == 7042);
    CHECK(std::get<std::int64_t>(t.rows.back().cells[3]) == 138);
}

TEST_CASE("screening funnel and per-year tables") {
    const auto t = screening_funnel({140, 2, 12, 4, 2, 120});
    check_golden("screening.md", render(t, Format::Markdown));
    const auto years = per_year_table(included());
    CHECK_NOTHROW(years.check_totals());
    check_golden("per_year.csv", render(years, Format::Csv));
}

TEST_CASE("cluster report keeps exact zeros") {
    std::vector<std::string> ids;
    std::vector<temporal::PeriodCounts> counts;
    const std::vector<temporal::PeriodCounts> shapes{{0, 4, 0}, {0, 6, 0}, {0, 5, 0}, {3, 3, 0}, {4, 4, 0}, {0, 2, 2}};
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        ids.push_back("p" + std::to_string(i));
        counts.push_back(shapes[i]);
    }
    temporal::ClusterConfig cfg;
    cfg.gap_iterations = 10;
    cfg.k_max = 3;
    const auto sol = temporal::cluster_period_counts(ids, counts, {}, cfg);
    const auto t = cluster_report(sol);
    CHECK(t.rows.size() == sol.k);
    const auto md = render(t, Format::Markdown);
    CHECK(md.find("0.000") != std::string::npos);
    CHECK(md.find("1.000") != std::string::npos);
    check_golden("clusters_small.csv", render(t, Format::Csv));
}
