#include "papertrail/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "papertrail/csv.hpp"
#include "papertrail/error.hpp"
#include "papertrail/text.hpp"

namespace papertrail {

using nlohmann::json;

std::string_view to_string(DocumentType t) noexcept {
    switch (t) {
        case DocumentType::ResearchArticle: return "Research Article";
        case DocumentType::ReviewArticle: return "Review Article";
        case DocumentType::Editorial: return "Editorial";
        case DocumentType::ResearchChapter: return "Research Chapter";
        case DocumentType::RetractionNotice: return "Retraction Notice";
        case DocumentType::Other: return "Other";
    }
    return "Other";
}

namespace {

std::string squash(std::string_view label) {
    std::string out;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return out;
}

}  // namespace

DocumentType parse_document_type(std::string_view label) {
    const std::string k = squash(label);
    if (k == "researcharticle" || k == "article") return DocumentType::ResearchArticle;
    if (k == "reviewarticle" || k == "review") return DocumentType::ReviewArticle;
    if (k == "editorial") return DocumentType::Editorial;
    if (k == "researchchapter" || k == "chapter") return DocumentType::ResearchChapter;
    if (k == "retractionnotice" || k == "retraction") return DocumentType::RetractionNotice;
    return DocumentType::Other;
}

std::string_view to_string(OrgType t) noexcept {
    switch (t) {
        case OrgType::ResearchInstitution: return "ResearchInstitution";
        case OrgType::TeachingInstitution: return "TeachingInstitution";
        case OrgType::Company: return "Company";
        case OrgType::NonAcademic: return "NonAcademic";
        case OrgType::Unregistered: return "Unregistered";
    }
    return "Unregistered";
}

std::optional<OrgType> parse_org_type(std::string_view label) {
    const std::string k = squash(label);
    if (k == "researchinstitution") return OrgType::ResearchInstitution;
    if (k == "teachinginstitution") return OrgType::TeachingInstitution;
    if (k == "company") return OrgType::Company;
    if (k == "nonacademic") return OrgType::NonAcademic;
    if (k == "unregistered") return OrgType::Unregistered;
    return std::nullopt;
}

std::string_view to_string(IssueKind k) noexcept {
    switch (k) {
        case IssueKind::MissingPublicationId: return "MissingPublicationId";
        case IssueKind::DuplicatePublicationId: return "DuplicatePublicationId";
        case IssueKind::YearOutOfRange: return "YearOutOfRange";
        case IssueKind::OnlineYearOutOfRange: return "OnlineYearOutOfRange";
        case IssueKind::NoAuthors: return "NoAuthors";
        case IssueKind::EmptyAuthorName: return "EmptyAuthorName";
        case IssueKind::InvalidCountryCode: return "InvalidCountryCode";
        case IssueKind::NegativeCitations: return "NegativeCitations";
    }
    return "Unknown";
}

std::vector<ValidationIssue> validate_record(const PublicationRecord& r) {
    std::vector<ValidationIssue> issues;
    if (r.publication_id.empty()) issues.push_back({IssueKind::MissingPublicationId, ""});
    if (r.pub_year < kMinYear || r.pub_year > kMaxYear) {
        issues.push_back({IssueKind::YearOutOfRange, std::to_string(r.pub_year)});
    }
    if (r.online_year && (*r.online_year < kMinYear || *r.online_year > kMaxYear)) {
        issues.push_back({IssueKind::OnlineYearOutOfRange, std::to_string(*r.online_year)});
    }
    if (r.authors.empty() && r.document_type != DocumentType::RetractionNotice) {
        issues.push_back({IssueKind::NoAuthors, ""});
    }
    for (std::size_t i = 0; i < r.authors.size(); ++i) {
        const auto& a = r.authors[i];
        if (text::trim(a.raw_name).empty()) {
            issues.push_back({IssueKind::EmptyAuthorName, "author " + std::to_string(i)});
        }
        for (const auto& c : a.countries) {
            if (!text::is_country_code(c)) issues.push_back({IssueKind::InvalidCountryCode, c});
        }
    }
    for (const auto& f : r.funders) {
        if (f.country && !text::is_country_code(*f.country)) {
            issues.push_back({IssueKind::InvalidCountryCode, *f.country});
        }
    }
    if (r.times_cited < 0) issues.push_back({IssueKind::NegativeCitations, std::to_string(r.times_cited)});
    return issues;
}

std::vector<ValidationIssue> validate_corpus(const std::vector<PublicationRecord>& records) {
    std::vector<ValidationIssue> issues;
    std::set<std::string> seen;
    for (const auto& r : records) {
        for (auto& i : validate_record(r)) {
            i.detail = r.publication_id + (i.detail.empty() ? "" : ": " + i.detail);
            issues.push_back(std::move(i));
        }
        if (!r.publication_id.empty() && !seen.insert(r.publication_id).second) {
            issues.push_back({IssueKind::DuplicatePublicationId, r.publication_id});
        }
    }
    return issues;
}

CorpusFormat corpus_format_from_path(std::string_view path) {
    const std::string lower = text::to_lower(path);
    if (lower.ends_with(".jsonl") || lower.ends_with(".ndjson")) return CorpusFormat::Jsonl;
    return CorpusFormat::Csv;
}

const std::vector<std::string>& corpus_columns() {
    static const std::vector<std::string> cols = {
        "publication_id", "doi", "pmid", "pmcid", "title", "abstract", "acknowledgements",
        "funding_statement", "publisher", "source_title", "issn", "pub_year", "online_year",
        "document_type", "authors", "author_researcher_ids", "author_orcids", "author_emails",
        "author_affiliations", "author_org_ids", "author_countries", "corresponding_author_ids",
        "funders", "funder_registry_ids", "funder_countries", "grant_ids", "times_cited",
        "fields_of_research", "reviewer_affiliations",
    };
    return cols;
}

const std::vector<std::string>& required_corpus_columns() {
    static const std::vector<std::string> cols = {
        "publication_id", "title", "publisher", "source_title", "pub_year", "document_type", "authors",
        "times_cited",
    };
    return cols;
}

namespace {

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
    s = text::trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<std::string> opt_text(std::string_view s) {
    if (s.empty()) return std::nullopt;
    return std::string(s);
}

struct RowError {
    std::string reason;
};

class CsvRowView {
public:
    CsvRowView(const csv::Table& table, const csv::Row& row) : table_(table), row_(row) {}

    [[nodiscard]] std::string_view get(std::string_view column) const {
        const auto idx = table_.column(column);
        if (!idx || *idx >= row_.fields.size()) return {};
        return row_.fields[*idx];
    }

private:
    const csv::Table& table_;
    const csv::Row& row_;
};

// Per-author slots must either be absent or align with the author list.
std::vector<std::string> aligned_slots(const CsvRowView& row, std::string_view column, std::size_t n) {
    auto slots = text::split_list(row.get(column), ';');
    if (slots.empty()) return std::vector<std::string>(n);
    if (slots.size() != n) {
        throw RowError{std::string(column) + " has " + std::to_string(slots.size()) + " entries, expected " +
                       std::to_string(n)};
    }
    return slots;
}

PublicationRecord record_from_csv(const CsvRowView& row) {
    PublicationRecord r;
    r.publication_id = std::string(text::trim(row.get("publication_id")));
    if (r.publication_id.empty()) throw RowError{"missing publication_id"};
    r.doi = opt_text(row.get("doi"));
    r.pmid = opt_text(row.get("pmid"));
    r.pmcid = opt_text(row.get("pmcid"));
    r.title = std::string(row.get("title"));
    r.abstract_text = opt_text(row.get("abstract"));
    r.acknowledgements = opt_text(row.get("acknowledgements"));
    r.funding_statement = opt_text(row.get("funding_statement"));
    r.publisher = std::string(row.get("publisher"));
    r.source_title = std::string(row.get("source_title"));
    r.issn = opt_text(row.get("issn"));

    auto year = parse_int<int>(row.get("pub_year"));
    if (!year) throw RowError{"pub_year is not an integer"};
    r.pub_year = *year;
    if (auto online = row.get("online_year"); !text::trim(online).empty()) {
        auto y = parse_int<int>(online);
        if (!y) throw RowError{"online_year is not an integer"};
        r.online_year = *y;
    }
    r.document_type = parse_document_type(row.get("document_type"));

    const auto names = text::split_list(row.get("authors"), ';');
    const std::size_t n = names.size();
    const auto ids = aligned_slots(row, "author_researcher_ids", n);
    const auto orcids = aligned_slots(row, "author_orcids", n);
    const auto emails = aligned_slots(row, "author_emails", n);
    const auto affs = aligned_slots(row, "author_affiliations", n);
    const auto orgs = aligned_slots(row, "author_org_ids", n);
    const auto countries = aligned_slots(row, "author_countries", n);
    for (std::size_t i = 0; i < n; ++i) {
        AuthorMention a;
        a.raw_name = names[i];
        a.source_researcher_id = opt_text(ids[i]);
        a.orcid = opt_text(orcids[i]);
        a.emails = text::split_list(emails[i], '|');
        a.affiliation_texts = text::split_list(affs[i], '|');
        a.org_registry_ids = text::split_list(orgs[i], '|');
        a.countries = text::split_list(countries[i], '|');
        r.authors.push_back(std::move(a));
    }
    r.corresponding_author_ids = text::split_list(row.get("corresponding_author_ids"), ';');

    const auto funder_names = text::split_list(row.get("funders"), ';');
    const auto funder_ids = aligned_slots(row, "funder_registry_ids", funder_names.size());
    const auto funder_countries = aligned_slots(row, "funder_countries", funder_names.size());
    for (std::size_t i = 0; i < funder_names.size(); ++i) {
        r.funders.push_back({funder_names[i], opt_text(funder_ids[i]), opt_text(funder_countries[i])});
    }
    r.grant_ids = text::split_list(row.get("grant_ids"), ';');

    auto cited = parse_int<std::int64_t>(row.get("times_cited"));
    if (!cited) throw RowError{"times_cited is not an integer"};
    r.times_cited = *cited;
    r.fields_of_research = text::split_list(row.get("fields_of_research"), ';');
    r.reviewer_affiliations = opt_text(row.get("reviewer_affiliations"));
    return r;
}

std::vector<std::string> record_to_csv(const PublicationRecord& r) {
    auto per_author = [&](auto&& project) {
        std::vector<std::string> slots;
        bool any = false;
        for (const auto& a : r.authors) {
            slots.push_back(project(a));
            any = any || !slots.back().empty();
        }
        return any ? text::join_list(slots, ';') : std::string();
    };
    auto per_funder = [&](auto&& project) {
        std::vector<std::string> slots;
        bool any = false;
        for (const auto& f : r.funders) {
            slots.push_back(project(f));
            any = any || !slots.back().empty();
        }
        return any ? text::join_list(slots, ';') : std::string();
    };
    std::vector<std::string> names;
    for (const auto& a : r.authors) names.push_back(a.raw_name);
    std::vector<std::string> funder_names;
    for (const auto& f : r.funders) funder_names.push_back(f.name);

    return {
        r.publication_id,
        r.doi.value_or(""),
        r.pmid.value_or(""),
        r.pmcid.value_or(""),
        r.title,
        r.abstract_text.value_or(""),
        r.acknowledgements.value_or(""),
        r.funding_statement.value_or(""),
        r.publisher,
        r.source_title,
        r.issn.value_or(""),
        std::to_string(r.pub_year),
        r.online_year ? std::to_string(*r.online_year) : "",
        std::string(to_string(r.document_type)),
        text::join_list(names, ';'),
        per_author([](const AuthorMention& a) { return a.source_researcher_id.value_or(""); }),
        per_author([](const AuthorMention& a) { return a.orcid.value_or(""); }),
        per_author([](const AuthorMention& a) { return text::join_list(a.emails, '|'); }),
        per_author([](const AuthorMention& a) { return text::join_list(a.affiliation_texts, '|'); }),
        per_author([](const AuthorMention& a) { return text::join_list(a.org_registry_ids, '|'); }),
        per_author([](const AuthorMention& a) { return text::join_list(a.countries, '|'); }),
        text::join_list(r.corresponding_author_ids, ';'),
        text::join_list(funder_names, ';'),
        per_funder([](const FunderMention& f) { return f.registry_id.value_or(""); }),
        per_funder([](const FunderMention& f) { return f.country.value_or(""); }),
        text::join_list(r.grant_ids, ';'),
        std::to_string(r.times_cited),
        text::join_list(r.fields_of_research, ';'),
        r.reviewer_affiliations.value_or(""),
    };
}

// JSON-lines form: same keys as the CSV header, with nested author and funder objects.

std::optional<std::string> json_opt(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw RowError{std::string(key) + " must be a string"};
    auto s = it->get<std::string>();
    if (s.empty()) return std::nullopt;
    return s;
}

std::string json_str(const json& j, const char* key) { return json_opt(j, key).value_or(""); }

std::vector<std::string> json_list(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    if (!it->is_array()) throw RowError{std::string(key) + " must be an array"};
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string()) throw RowError{std::string(key) + " must contain strings"};
        out.push_back(v.get<std::string>());
    }
    return out;
}

template <typename Int>
std::optional<Int> json_int(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number_integer()) throw RowError{std::string(key) + " must be an integer"};
    return it->get<Int>();
}

void put_opt(json& j, const char* key, const std::optional<std::string>& v) {
    if (v) j[key] = *v;
}

PublicationRecord record_from_json(const json& j) {
    if (!j.is_object()) throw RowError{"line is not a JSON object"};
    PublicationRecord r;
    r.publication_id = json_str(j, "publication_id");
    if (r.publication_id.empty()) throw RowError{"missing publication_id"};
    r.doi = json_opt(j, "doi");
    r.pmid = json_opt(j, "pmid");
    r.pmcid = json_opt(j, "pmcid");
    r.title = json_str(j, "title");
    r.abstract_text = json_opt(j, "abstract");
    r.acknowledgements = json_opt(j, "acknowledgements");
    r.funding_statement = json_opt(j, "funding_statement");
    r.publisher = json_str(j, "publisher");
    r.source_title = json_str(j, "source_title");
    r.issn = json_opt(j, "issn");
    auto year = json_int<int>(j, "pub_year");
    if (!year) throw RowError{"missing pub_year"};
    r.pub_year = *year;
    r.online_year = json_int<int>(j, "online_year");
    r.document_type = parse_document_type(json_str(j, "document_type"));
    if (auto it = j.find("authors"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw RowError{"authors must be an array"};
        for (const auto& aj : *it) {
            if (!aj.is_object()) throw RowError{"author entries must be objects"};
            AuthorMention a;
            a.raw_name = json_str(aj, "raw_name");
            a.source_researcher_id = json_opt(aj, "source_researcher_id");
            a.orcid = json_opt(aj, "orcid");
            a.emails = json_list(aj, "emails");
            a.affiliation_texts = json_list(aj, "affiliations");
            a.org_registry_ids = json_list(aj, "org_registry_ids");
            a.countries = json_list(aj, "countries");
            r.authors.push_back(std::move(a));
        }
    }
    r.corresponding_author_ids = json_list(j, "corresponding_author_ids");
    if (auto it = j.find("funders"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw RowError{"funders must be an array"};
        for (const auto& fj : *it) {
            if (!fj.is_object()) throw RowError{"funder entries must be objects"};
            r.funders.push_back({json_str(fj, "name"), json_opt(fj, "registry_id"), json_opt(fj, "country")});
        }
    }
    r.grant_ids = json_list(j, "grant_ids");
    auto cited = json_int<std::int64_t>(j, "times_cited");
    if (!cited) throw RowError{"missing times_cited"};
    r.times_cited = *cited;
    r.fields_of_research = json_list(j, "fields_of_research");
    r.reviewer_affiliations = json_opt(j, "reviewer_affiliations");
    return r;
}

json record_to_json(const PublicationRecord& r) {
    json j;
    j["publication_id"] = r.publication_id;
    put_opt(j, "doi", r.doi);
    put_opt(j, "pmid", r.pmid);
    put_opt(j, "pmcid", r.pmcid);
    j["title"] = r.title;
    put_opt(j, "abstract", r.abstract_text);
    put_opt(j, "acknowledgements", r.acknowledgements);
    put_opt(j, "funding_statement", r.funding_statement);
    j["publisher"] = r.publisher;
    j["source_title"] = r.source_title;
    put_opt(j, "issn", r.issn);
    j["pub_year"] = r.pub_year;
    if (r.online_year) j["online_year"] = *r.online_year;
    j["document_type"] = std::string(to_string(r.document_type));
    j["authors"] = json::array();
    for (const auto& a : r.authors) {
        json aj;
        aj["raw_name"] = a.raw_name;
        put_opt(aj, "source_researcher_id", a.source_researcher_id);
        put_opt(aj, "orcid", a.orcid);
        aj["emails"] = a.emails;
        aj["affiliations"] = a.affiliation_texts;
        aj["org_registry_ids"] = a.org_registry_ids;
        aj["countries"] = a.countries;
        j["authors"].push_back(std::move(aj));
    }
    j["corresponding_author_ids"] = r.corresponding_author_ids;
    j["funders"] = json::array();
    for (const auto& f : r.funders) {
        json fj;
        fj["name"] = f.name;
        put_opt(fj, "registry_id", f.registry_id);
        put_opt(fj, "country", f.country);
        j["funders"].push_back(std::move(fj));
    }
    j["grant_ids"] = r.grant_ids;
    j["times_cited"] = r.times_cited;
    j["fields_of_research"] = r.fields_of_research;
    put_opt(j, "reviewer_affiliations", r.reviewer_affiliations);
    return j;
}

void check_rejection(const ParsedCorpus& out, std::size_t total_rows) {
    if (total_rows > 0 && out.malformed_rows.size() * 10 > total_rows) {
        throw Error(ErrorCode::CorpusRejected, std::to_string(out.malformed_rows.size()) + " of " +
                                                   std::to_string(total_rows) + " rows malformed");
    }
}

}  // namespace

ParsedCorpus parse_corpus(std::istream& in, CorpusFormat format) {
    ParsedCorpus out;
    std::set<std::string> seen;
    std::size_t total = 0;

    auto accept = [&](std::size_t line, PublicationRecord&& r) {
        if (!seen.insert(r.publication_id).second) {
            out.malformed_rows.push_back({line, "duplicate publication_id " + r.publication_id});
            return;
        }
        out.records.push_back(std::move(r));
    };

    if (format == CorpusFormat::Csv) {
        const csv::Table table = csv::read_table(in);
        for (const auto& req : required_corpus_columns()) {
            if (!table.column(req)) throw Error(ErrorCode::MissingRequiredColumn, req);
        }
        const auto& known = corpus_columns();
        for (const auto& h : table.header) {
            if (std::find(known.begin(), known.end(), h) == known.end()) {
                out.warnings.push_back("unknown column '" + h + "' ignored");
            }
        }
        for (const auto& row : table.rows) {
            ++total;
            if (row.error) {
                out.malformed_rows.push_back({row.line, *row.error});
                continue;
            }
            if (row.fields.size() != table.header.size()) {
                out.malformed_rows.push_back({row.line, "expected " + std::to_string(table.header.size()) +
                                                            " fields, found " + std::to_string(row.fields.size())});
                continue;
            }
            try {
                accept(row.line, record_from_csv(CsvRowView(table, row)));
            } catch (const RowError& e) {
                out.malformed_rows.push_back({row.line, e.reason});
            }
        }
    } else {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (text::trim(line).empty()) continue;
            ++total;
            try {
                json j = json::parse(line);
                accept(lineno, record_from_json(j));
            } catch (const RowError& e) {
                out.malformed_rows.push_back({lineno, e.reason});
            } catch (const json::exception& e) {
                out.malformed_rows.push_back({lineno, e.what()});
            }
        }
    }
    check_rejection(out, total);
    return out;
}

void write_corpus(std::ostream& out, const std::vector<PublicationRecord>& records, CorpusFormat format) {
    if (format == CorpusFormat::Csv) {
        csv::write_row(out, corpus_columns());
        for (const auto& r : records) csv::write_row(out, record_to_csv(r));
    } else {
        for (const auto& r : records) out << record_to_json(r).dump() << '\n';
    }
}

ParsedCorpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return parse_corpus(in, corpus_format_from_path(path));
}

void save_corpus(const std::string& path, const std::vector<PublicationRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    write_corpus(out, records, corpus_format_from_path(path));
}

ParsedGrants parse_grants(std::istream& in) {
    const csv::Table table = csv::read_table(in);
    for (const char* req : {"grant_id", "funder_name", "funder_country", "start_year", "amount", "currency",
                            "researcher_ids"}) {
        if (!table.column(req)) throw Error(ErrorCode::MissingRequiredColumn, req);
    }
    ParsedGrants out;
    std::size_t total = 0;
    for (const auto& row : table.rows) {
        ++total;
        if (row.error || row.fields.size() != table.header.size()) {
            out.malformed_rows.push_back({row.line, row.error.value_or("field count mismatch")});
            continue;
        }
        CsvRowView v(table, row);
        GrantRecord g;
        g.grant_id = std::string(text::trim(v.get("grant_id")));
        g.funder_name = std::string(text::trim(v.get("funder_name")));
        g.funder_country = std::string(text::trim(v.get("funder_country")));
        for (char ch : text::trim(v.get("currency"))) {
            g.currency += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        }
        auto year = parse_int<int>(v.get("start_year"));
        const auto amount_text = text::trim(v.get("amount"));
        if (g.grant_id.empty()) {
            out.malformed_rows.push_back({row.line, "missing grant_id"});
            continue;
        }
        if (!year) {
            out.malformed_rows.push_back({row.line, "start_year is not an integer"});
            continue;
        }
        g.start_year = *year;
        if (!amount_text.empty()) {
            g.amount = Money::parse(amount_text);
            if (!g.amount || g.amount->cents() < 0) {
                out.malformed_rows.push_back({row.line, "amount must be a non-negative decimal"});
                continue;
            }
        }
        g.researcher_ids = text::split_list(v.get("researcher_ids"), ';');
        out.grants.push_back(std::move(g));
    }
    if (total > 0 && out.malformed_rows.size() * 10 > total) {
        throw Error(ErrorCode::CorpusRejected, "grants file: too many malformed rows");
    }
    return out;
}

void write_grants(std::ostream& out, const std::vector<GrantRecord>& grants) {
    csv::write_row(out, {"grant_id", "funder_name", "funder_country", "start_year", "amount", "currency",
                         "researcher_ids"});
    for (const auto& g : grants) {
        csv::write_row(out, {g.grant_id, g.funder_name, g.funder_country, std::to_string(g.start_year),
                             g.amount ? g.amount->to_string() : "", g.currency,
                             text::join_list(g.researcher_ids, ';')});
    }
}

std::map<int, std::size_t> per_year_counts(const std::vector<PublicationRecord>& records) {
    std::map<int, std::size_t> counts;
    for (const auto& r : records) ++counts[r.pub_year];
    return counts;
}

}  // namespace papertrail
