#include "papertrail/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "papertrail/csv.hpp"
#include "papertrail/error.hpp"
#include "papertrail/text.hpp"

namespace papertrail::report {

std::string_view to_string(RowKind k) noexcept {
    switch (k) {
        case RowKind::Data: return "data";
        case RowKind::Subtotal: return "subtotal";
        case RowKind::GrandTotal: return "grand_total";
    }
    return "data";
}

namespace {

std::string fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    std::string s(buf);
    // "-0.000" reads as a sign error in tables
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string md_escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

std::string render_csv(const ReportTable& t) {
    std::ostringstream os;
    csv::write_row(os, t.columns);
    for (const auto& r : t.rows) {
        std::vector<std::string> fields;
        fields.reserve(r.cells.size());
        for (const auto& c : r.cells) fields.push_back(format_cell(c));
        csv::write_row(os, fields);
    }
    return os.str();
}

std::string render_json(const ReportTable& t) {
    nlohmann::ordered_json j;
    j["title"] = t.title;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        row["kind"] = to_string(r.kind);
        auto cells = nlohmann::ordered_json::array();
        for (const auto& c : r.cells) {
            if (const auto* s = std::get_if<std::string>(&c)) {
                cells.push_back(*s);
            } else if (const auto* i = std::get_if<std::int64_t>(&c)) {
                cells.push_back(*i);
            } else if (const auto* f = std::get_if<Fixed>(&c)) {
                cells.push_back(f->value);
            } else {
                cells.push_back(nullptr);
            }
        }
        row["cells"] = std::move(cells);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["notes"] = t.notes;
    return j.dump(2) + "\n";
}

std::string render_md(const ReportTable& t) {
    std::ostringstream os;
    if (!t.title.empty()) os << "### " << md_escape(t.title) << "\n\n";
    os << '|';
    for (const auto& c : t.columns) os << ' ' << md_escape(c) << " |";
    os << "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << " --- |";
    os << '\n';
    for (const auto& r : t.rows) {
        os << '|';
        for (const auto& c : r.cells) {
            const auto s = md_escape(format_cell(c));
            if (r.kind == RowKind::Data || s.empty()) {
                os << ' ' << s << " |";
            } else {
                os << " **" << s << "** |";
            }
        }
        os << '\n';
    }
    if (!t.notes.empty()) {
        os << '\n';
        for (const auto& n : t.notes) os << md_escape(n) << "\n";
    }
    return os.str();
}

std::string render_svg(const ReportTable& t) {
    std::optional<std::size_t> value_col;
    std::optional<std::size_t> label_col;
    for (const auto& r : t.rows) {
        if (r.kind != RowKind::Data) continue;
        for (std::size_t i = 0; i < r.cells.size(); ++i) {
            const bool numeric =
                std::holds_alternative<std::int64_t>(r.cells[i]) || std::holds_alternative<Fixed>(r.cells[i]);
            if (numeric && !value_col) value_col = i;
            if (std::holds_alternative<std::string>(r.cells[i]) && !label_col) label_col = i;
        }
        if (value_col) break;
    }
    struct Bar {
        std::string label;
        double value;
        std::string text;
    };
    std::vector<Bar> bars;
    if (value_col) {
        for (const auto& r : t.rows) {
            if (r.kind != RowKind::Data || *value_col >= r.cells.size()) continue;
            const auto& c = r.cells[*value_col];
            double v = 0.0;
            if (const auto* i = std::get_if<std::int64_t>(&c)) v = static_cast<double>(*i);
            if (const auto* f = std::get_if<Fixed>(&c)) v = f->value;
            std::string label = label_col && *label_col < r.cells.size() ? format_cell(r.cells[*label_col]) : "";
            bars.push_back({std::move(label), v, format_cell(c)});
        }
    }

    const int bar_w = 24;
    const int gap = 8;
    const int left = 48;
    const int top = 40;
    const int plot_h = 200;
    const int label_h = 120;
    const int width = std::max(320, left + static_cast<int>(bars.size()) * (bar_w + gap) + 16);
    const int height = top + plot_h + label_h;
    double max_v = 0.0;
    for (const auto& b : bars) max_v = std::max(max_v, b.value);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<title>" << xml_escape(t.title) << "</title>\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(t.title)
       << "</text>\n";
    if (value_col) {
        os << "<text x=\"" << left << "\" y=\"" << top - 4 << "\" font-family=\"sans-serif\" font-size=\"10\">"
           << xml_escape(t.columns.at(*value_col)) << "</text>\n";
    }
    os << "<line x1=\"" << left - 4 << "\" y1=\"" << top + plot_h << "\" x2=\"" << width - 8 << "\" y2=\""
       << top + plot_h << "\" stroke=\"#333333\"/>\n";
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& b = bars[i];
        const double h = max_v > 0.0 ? std::max(0.0, b.value) / max_v * plot_h : 0.0;
        const int x = left + static_cast<int>(i) * (bar_w + gap);
        const double y = top + plot_h - h;
        os << "<rect x=\"" << x << "\" y=\"" << fixed(y, 2) << "\" width=\"" << bar_w << "\" height=\""
           << fixed(h, 2) << "\" fill=\"#4a78a8\"><title>" << xml_escape(b.label) << ": " << xml_escape(b.text)
           << "</title></rect>\n";
        os << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << fixed(y - 3, 2)
           << "\" font-family=\"sans-serif\" font-size=\"9\" text-anchor=\"middle\">" << xml_escape(b.text)
           << "</text>\n";
        const int lx = x + bar_w / 2;
        const int ly = top + plot_h + 10;
        os << "<text x=\"" << lx << "\" y=\"" << ly << "\" font-family=\"sans-serif\" font-size=\"9\" "
           << "text-anchor=\"end\" transform=\"rotate(-60 " << lx << ' ' << ly << ")\">" << xml_escape(b.label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string format_cell(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* f = std::get_if<Fixed>(&cell)) return fixed(f->value, f->places);
    return "";
}

void ReportTable::check_totals() const {
    const std::size_t width = columns.size();
    std::vector<std::int64_t> group(width, 0);
    std::vector<std::int64_t> all(width, 0);
    const auto check = [&](const Row& r, const std::vector<std::int64_t>& expected, std::size_t row_no) {
        for (std::size_t c = 0; c < width; ++c) {
            const auto* v = std::get_if<std::int64_t>(&r.cells[c]);
            if (v && *v != expected[c]) {
                throw Error(ErrorCode::InvalidInput, title + ": " + std::string(to_string(r.kind)) + " row " +
                                                         std::to_string(row_no) + " column '" + columns[c] +
                                                         "' is " + std::to_string(*v) + ", rows sum to " +
                                                         std::to_string(expected[c]));
            }
        }
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.cells.size() != width) {
            throw Error(ErrorCode::InvalidInput, title + ": row " + std::to_string(i + 1) + " has " +
                                                     std::to_string(r.cells.size()) + " cells, expected " +
                                                     std::to_string(width));
        }
        switch (r.kind) {
            case RowKind::Data:
                for (std::size_t c = 0; c < width; ++c) {
                    if (const auto* v = std::get_if<std::int64_t>(&r.cells[c])) {
                        group[c] += *v;
                        all[c] += *v;
                    }
                }
                break;
            case RowKind::Subtotal:
                check(r, group, i + 1);
                std::fill(group.begin(), group.end(), 0);
                break;
            case RowKind::GrandTotal:
                check(r, all, i + 1);
                break;
        }
    }
}

ReportTable publisher_rollup(const std::vector<PublicationRecord>& records) {
    struct Sums {
        std::int64_t articles = 0;
        std::int64_t documents = 0;
        std::int64_t cited = 0;
    };
    std::map<std::string, std::map<std::string, Sums>> groups;
    for (const auto& r : records) {
        const bool chapter = r.document_type == DocumentType::ResearchChapter;
        auto& s = groups[r.publisher][chapter ? std::string(kBookChapters) : r.source_title];
        if (!chapter) ++s.articles;
        ++s.documents;
        s.cited += r.times_cited;
    }
    ReportTable t;
    t.title = "Publications and citations by publisher and source title";
    t.columns = {"Publisher", "Source title", "Publications", "Documents", "Times cited"};
    Sums grand;
    std::size_t journals = 0;
    for (const auto& [publisher, sources] : groups) {
        Sums sub;
        bool first = true;
        for (const auto& [source, s] : sources) {
            t.rows.push_back({RowKind::Data, {first ? publisher : std::string(), source, s.articles, s.documents, s.cited}});
            first = false;
            sub.articles += s.articles;
            sub.documents += s.documents;
            sub.cited += s.cited;
            if (source != kBookChapters) ++journals;
        }
        t.rows.push_back({RowKind::Subtotal, {publisher + " Total", std::string(), sub.articles, sub.documents, sub.cited}});
        grand.articles += sub.articles;
        grand.documents += sub.documents;
        grand.cited += sub.cited;
    }
    t.rows.push_back({RowKind::GrandTotal, {std::string("Grand Total"), std::string(), grand.articles, grand.documents, grand.cited}});
    t.notes.push_back(std::to_string(grand.articles) + " articles in " + std::to_string(journals) + " journals from " +
                      std::to_string(groups.size()) + " publishers; " +
                      std::to_string(grand.documents - grand.articles) + " book chapters; " +
                      std::to_string(grand.documents) + " documents in total.");
    t.check_totals();
    return t;
}

ReportTable cluster_report(const temporal::ClusterSolution& solution) {
    const auto& w = solution.windows;
    const auto range = [](const temporal::YearRange& r) {
        return std::to_string(r.first) + "-" + std::to_string(r.last);
    };
    ReportTable t;
    t.title = "Temporal publication clusters (k=" + std::to_string(solution.k) + ", " +
              std::string(temporal::to_string(solution.config.linkage)) + " linkage)";
    t.columns = {"Cluster", "Before (" + range(w.before) + ")", "During (" + range(w.during) + ")",
                 "After (" + range(w.after) + ")", "Authors", "Percentage"};
    std::int64_t total = 0;
    for (const auto& c : solution.centroids) {
        Row r{RowKind::Data, {"Cluster " + std::to_string(c.label + 1)}};
        for (const double p : c.centroid.parts) r.cells.emplace_back(Fixed{p, 3});
        r.cells.emplace_back(static_cast<std::int64_t>(c.size));
        r.cells.emplace_back(static_cast<std::int64_t>(std::llround(c.percentage)));
        total += static_cast<std::int64_t>(c.size);
        t.rows.push_back(std::move(r));
    }
    t.notes.push_back(std::to_string(total) + " authors clustered; " +
                      std::to_string(solution.excluded_profile_ids.size()) +
                      " excluded for having no publications in any window.");
    t.notes.push_back(std::string("Gap statistic ") + (solution.selection.agreement ? "agrees" : "disagrees") +
                      " (gap criterion k=" + std::to_string(solution.selection.gap_k) + ").");
    return t;
}

ReportTable country_counts(const std::vector<identity::ResearcherProfile>& profiles) {
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts;  // country -> (authors, multi)
    std::size_t without = 0;
    for (const auto& p : profiles) {
        if (p.countries.empty()) ++without;
        const bool multi = p.countries.size() > 1;
        for (const auto& c : p.countries) {
            auto& e = counts[c];
            ++e.first;
            if (multi) ++e.second;
        }
    }
    std::vector<std::pair<std::string, std::pair<std::int64_t, std::int64_t>>> rows(counts.begin(), counts.end());
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.second.first > b.second.first; });
    ReportTable t;
    t.title = "Author countries";
    t.columns = {"Country", "Authors", "Multi-country"};
    for (const auto& [country, n] : rows) t.rows.push_back({RowKind::Data, {country, n.first, n.second}});
    if (!profiles.empty()) {
        t.notes.push_back(std::to_string(profiles.size()) + " authors in " + std::to_string(counts.size()) +
                          " countries; " + std::to_string(without) + " without a country.");
    }
    return t;
}

ReportTable per_year_table(const std::vector<PublicationRecord>& records) {
    ReportTable t;
    t.title = "Publications per year";
    t.columns = {"Year", "Publications"};
    std::int64_t total = 0;
    for (const auto& [year, n] : per_year_counts(records)) {
        t.rows.push_back({RowKind::Data, {std::to_string(year), static_cast<std::int64_t>(n)}});
        total += static_cast<std::int64_t>(n);
    }
    if (!t.rows.empty()) t.rows.push_back({RowKind::GrandTotal, {std::string("Total"), total}});
    t.check_totals();
    return t;
}

ReportTable new_grantee_table(const funding::FundingSummary& summary,
                              const std::vector<funding::NewGrantee>& grantees) {
    ReportTable t;
    t.title = "Researchers first funded during or after network participation";
    t.columns = {"Researcher", "Funding agencies", "Countries", "Grants", "USD equivalent"};
    std::map<std::string, Money> usd_by_grant;
    for (const auto& g : summary.grants) usd_by_grant[g.grant_id] = g.usd_equivalent.value_or(Money{});
    std::set<std::string> agencies;
    std::set<std::string> countries;
    std::set<std::string> grants;
    for (const auto& n : grantees) {
        t.rows.push_back({RowKind::Data,
                          {n.canonical_name,
                           text::join(std::vector<std::string>(n.agencies.begin(), n.agencies.end()), "; "),
                           text::join(std::vector<std::string>(n.countries.begin(), n.countries.end()), "; "),
                           static_cast<std::int64_t>(n.grant_ids.size()), Fixed{n.usd_total.to_double(), 2}}});
        agencies.insert(n.agencies.begin(), n.agencies.end());
        countries.insert(n.countries.begin(), n.countries.end());
        grants.insert(n.grant_ids.begin(), n.grant_ids.end());
    }
    Money total;
    for (const auto& g : grants) total += usd_by_grant[g];
    t.notes.push_back(std::to_string(grantees.size()) + " researchers, " + std::to_string(agencies.size()) +
                      " agencies, " + std::to_string(countries.size()) + " countries, " +
                      std::to_string(grants.size()) + " grants totalling USD " + total.to_string() +
                      " (each grant counted once).");
    return t;
}

ReportTable screening_funnel(const screening::ScreeningReport& report) {
    ReportTable t;
    t.title = "Screening";
    t.columns = {"Stage", "Records"};
    const auto n = [](std::size_t v) { return static_cast<std::int64_t>(v); };
    t.rows = {
        {RowKind::Data, {std::string("Records retrieved"), n(report.input_count)}},
        {RowKind::Data, {std::string("Excluded: retraction notices"), n(report.retraction_notice_count)}},
        {RowKind::Data, {std::string("Excluded: document type"), n(report.doc_type_excluded_count)}},
        {RowKind::Data, {std::string("Excluded: reviewer-only"), n(report.reviewer_only_count)}},
        {RowKind::Data, {std::string("Excluded: too many authors"), n(report.too_many_authors_count)}},
        {RowKind::Data, {std::string("Included"), n(report.included_count)}},
    };
    return t;
}

Format parse_format(std::string_view name) {
    const auto n = text::to_lower(text::trim(name));
    if (n == "csv") return Format::Csv;
    if (n == "json") return Format::Json;
    if (n == "md" || n == "markdown") return Format::Markdown;
    if (n == "svg") return Format::Svg;
    throw Error(ErrorCode::UnsupportedFormat, "unsupported report format '" + std::string(name) + "'");
}

std::string_view extension(Format f) noexcept {
    switch (f) {
        case Format::Csv: return "csv";
        case Format::Json: return "json";
        case Format::Markdown: return "md";
        case Format::Svg: return "svg";
    }
    return "csv";
}

std::string render(const ReportTable& table, Format format) {
    table.check_totals();
    switch (format) {
        case Format::Csv: return render_csv(table);
        case Format::Json: return render_json(table);
        case Format::Markdown: return render_md(table);
        case Format::Svg: return render_svg(table);
    }
    throw Error(ErrorCode::UnsupportedFormat, "unsupported report format");
}

}  // namespace papertrail::report
