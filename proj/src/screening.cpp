#include "papertrail/screening.hpp"

#include "papertrail/error.hpp"
#include "papertrail/text.hpp"

namespace papertrail::screening {

void ScreeningCriteria::validate() const {
    if (text::trim(phrase).empty()) throw Error(ErrorCode::InvalidInput, "screening phrase is empty");
    if (max_authors < 1) throw Error(ErrorCode::InvalidInput, "max_authors must be >= 1");
}

std::string_view to_string(Classification c) noexcept {
    switch (c) {
        case Classification::Included: return "Included";
        case Classification::RetractionNotice: return "RetractionNotice";
        case Classification::DocTypeExcluded: return "DocTypeExcluded";
        case Classification::ReviewerOnly: return "ReviewerOnly";
        case Classification::TooManyAuthors: return "TooManyAuthors";
    }
    return "Included";
}

bool mentions_phrase(const PublicationRecord& r, std::string_view phrase) {
    if (r.funding_statement && text::icontains(*r.funding_statement, phrase)) return true;
    if (r.acknowledgements && text::icontains(*r.acknowledgements, phrase)) return true;
    for (const auto& a : r.authors) {
        for (const auto& aff : a.affiliation_texts) {
            if (text::icontains(aff, phrase)) return true;
        }
    }
    return false;
}

Classification classify_record(const PublicationRecord& r, const ScreeningCriteria& c) {
    if (r.document_type == DocumentType::RetractionNotice) return Classification::RetractionNotice;
    if (!c.allowed_document_types.contains(r.document_type)) return Classification::DocTypeExcluded;
    if (c.exclude_reviewer_only && r.reviewer_affiliations && text::icontains(*r.reviewer_affiliations, c.phrase) &&
        !mentions_phrase(r, c.phrase)) {
        return Classification::ReviewerOnly;
    }
    if (r.authors.size() > static_cast<std::size_t>(c.max_authors)) return Classification::TooManyAuthors;
    return Classification::Included;
}

ScreeningResult screen(const std::vector<PublicationRecord>& records, const ScreeningCriteria& criteria) {
    criteria.validate();
    ScreeningResult out;
    out.report.input_count = records.size();
    out.classes.reserve(records.size());
    for (const auto& r : records) {
        const Classification c = classify_record(r, criteria);
        out.classes.push_back(c);
        switch (c) {
            case Classification::Included:
                ++out.report.included_count;
                out.included.push_back(r);
                break;
            case Classification::RetractionNotice: ++out.report.retraction_notice_count; break;
            case Classification::DocTypeExcluded: ++out.report.doc_type_excluded_count; break;
            case Classification::ReviewerOnly: ++out.report.reviewer_only_count; break;
            case Classification::TooManyAuthors: ++out.report.too_many_authors_count; break;
        }
    }
    return out;
}

}  // namespace papertrail::screening
