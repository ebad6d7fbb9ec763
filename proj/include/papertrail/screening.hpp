#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "papertrail/corpus.hpp"

namespace papertrail::screening {

struct ScreeningCriteria {
    std::string phrase = "Pharmakon Neuroscience";
    std::set<DocumentType> allowed_document_types = {DocumentType::ResearchArticle, DocumentType::ReviewArticle,
                                                     DocumentType::Editorial, DocumentType::ResearchChapter};
    int max_authors = 25;
    bool exclude_reviewer_only = true;

    /// Throws InvalidInput when phrase is empty or max_authors < 1.
    void validate() const;
};

enum class Classification { Included, RetractionNotice, DocTypeExcluded, ReviewerOnly, TooManyAuthors };

std::string_view to_string(Classification c) noexcept;

struct ScreeningReport {
    std::size_t input_count = 0;
    std::size_t retraction_notice_count = 0;
    std::size_t doc_type_excluded_count = 0;
    std::size_t reviewer_only_count = 0;
    std::size_t too_many_authors_count = 0;
    std::size_t included_count = 0;

    bool operator==(const ScreeningReport&) const = default;
};

/// True when the phrase occurs (case-insensitively) in the funding statement,
/// acknowledgements or any author affiliation.
bool mentions_phrase(const PublicationRecord& record, std::string_view phrase);

/// Rules apply in order: retraction notice, document type, reviewer-only,
/// author count. The first matching rule decides.
Classification classify_record(const PublicationRecord& record, const ScreeningCriteria& criteria);

struct ScreeningResult {
    std::vector<PublicationRecord> included;
    std::vector<Classification> classes;  // one per input record
    ScreeningReport report;
};

ScreeningResult screen(const std::vector<PublicationRecord>& records, const ScreeningCriteria& criteria);

}  // namespace papertrail::screening
