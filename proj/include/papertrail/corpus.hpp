#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "papertrail/money.hpp"

namespace papertrail {

enum class DocumentType { ResearchArticle, ReviewArticle, Editorial, ResearchChapter, RetractionNotice, Other };

std::string_view to_string(DocumentType t) noexcept;
/// Case-, space- and punctuation-insensitive; unrecognised labels map to Other.
DocumentType parse_document_type(std::string_view label);

struct AuthorMention {
    std::string raw_name;
    std::optional<std::string> source_researcher_id;
    std::optional<std::string> orcid;
    std::vector<std::string> emails;
    std::vector<std::string> affiliation_texts;
    std::vector<std::string> org_registry_ids;
    std::vector<std::string> countries;

    bool operator==(const AuthorMention&) const = default;
};

struct FunderMention {
    std::string name;
    std::optional<std::string> registry_id;
    std::optional<std::string> country;

    bool operator==(const FunderMention&) const = default;
};

struct PublicationRecord {
    std::string publication_id;
    std::optional<std::string> doi;
    std::optional<std::string> pmid;
    std::optional<std::string> pmcid;
    std::string title;
    std::optional<std::string> abstract_text;
    std::optional<std::string> acknowledgements;
    std::optional<std::string> funding_statement;
    std::string publisher;
    std::string source_title;
    std::optional<std::string> issn;
    int pub_year = 0;
    std::optional<int> online_year;
    DocumentType document_type = DocumentType::ResearchArticle;
    std::vector<AuthorMention> authors;
    std::vector<std::string> corresponding_author_ids;
    std::vector<FunderMention> funders;
    std::vector<std::string> grant_ids;
    std::int64_t times_cited = 0;
    std::vector<std::string> fields_of_research;
    /// Absent means unknown; never treated as "no reviewers".
    std::optional<std::string> reviewer_affiliations;

    bool operator==(const PublicationRecord&) const = default;
};

enum class OrgType { ResearchInstitution, TeachingInstitution, Company, NonAcademic, Unregistered };

std::string_view to_string(OrgType t) noexcept;
std::optional<OrgType> parse_org_type(std::string_view label);

struct Organization {
    std::optional<std::string> registry_id;
    std::string name;
    OrgType org_type = OrgType::Unregistered;
    std::optional<std::string> country;
};

struct GrantRecord {
    std::string grant_id;
    std::string funder_name;
    std::string funder_country;
    int start_year = 0;
    /// Missing amounts still mark the researcher as funded but add nothing to totals.
    std::optional<Money> amount;
    std::string currency;
    std::vector<std::string> researcher_ids;

    bool operator==(const GrantRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Validation

enum class IssueKind {
    MissingPublicationId,
    DuplicatePublicationId,
    YearOutOfRange,
    OnlineYearOutOfRange,
    NoAuthors,
    EmptyAuthorName,
    InvalidCountryCode,
    NegativeCitations,
};

std::string_view to_string(IssueKind k) noexcept;

struct ValidationIssue {
    IssueKind kind;
    std::string detail;

    bool operator==(const ValidationIssue&) const = default;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

std::vector<ValidationIssue> validate_record(const PublicationRecord& record);

/// Per-record issues plus DuplicatePublicationId across the list.
std::vector<ValidationIssue> validate_corpus(const std::vector<PublicationRecord>& records);

// ---------------------------------------------------------------------------
// Parsing

enum class CorpusFormat { Csv, Jsonl };

CorpusFormat corpus_format_from_path(std::string_view path);

struct ParseIssue {
    std::size_t line = 0;  // 0 for file-level warnings
    std::string reason;
};

struct ParsedCorpus {
    std::vector<PublicationRecord> records;
    std::vector<ParseIssue> malformed_rows;
    std::vector<std::string> warnings;
};

/// Column names of the CSV export, in write order.
const std::vector<std::string>& corpus_columns();
const std::vector<std::string>& required_corpus_columns();

/// Malformed rows are collected; more than 10% malformed raises CorpusRejected.
/// A missing required column raises MissingRequiredColumn.
ParsedCorpus parse_corpus(std::istream& in, CorpusFormat format);

void write_corpus(std::ostream& out, const std::vector<PublicationRecord>& records, CorpusFormat format);

ParsedCorpus load_corpus(const std::string& path);
void save_corpus(const std::string& path, const std::vector<PublicationRecord>& records);

struct ParsedGrants {
    std::vector<GrantRecord> grants;
    std::vector<ParseIssue> malformed_rows;
};

ParsedGrants parse_grants(std::istream& in);
void write_grants(std::ostream& out, const std::vector<GrantRecord>& grants);

// ---------------------------------------------------------------------------

/// Publication count per pub_year; years with no records are absent.
std::map<int, std::size_t> per_year_counts(const std::vector<PublicationRecord>& records);

}  // namespace papertrail
