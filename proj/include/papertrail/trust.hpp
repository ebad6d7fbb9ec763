#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "papertrail/corpus.hpp"
#include "papertrail/identity.hpp"

// Transparency trust markers: funders missing from an institutional registry,
// near-duplicate email addresses and authors without persistent identifiers.
namespace papertrail::trust {

struct RegistryEntry {
    std::string registry_id;
    std::string canonical_name;
    std::vector<std::string> aliases;
    std::string country;
    OrgType org_type = OrgType::ResearchInstitution;

    bool operator==(const RegistryEntry&) const = default;
};

/// Lowercase, diacritics folded, punctuation replaced by spaces, whitespace
/// collapsed, leading "the" removed.
std::string fold_name(std::string_view name);

/// Read-only registry snapshot (registry.csv: registry_id, canonical_name,
/// aliases pipe-separated, country, org_type).
class Registry {
public:
    Registry() = default;
    /// Throws InvalidInput on duplicate registry IDs or empty names.
    explicit Registry(std::vector<RegistryEntry> entries);

    [[nodiscard]] const RegistryEntry* match(std::string_view name) const;
    [[nodiscard]] const std::vector<RegistryEntry>& entries() const { return entries_; }

private:
    std::vector<RegistryEntry> entries_;
    std::unordered_map<std::string, std::size_t> by_folded_name_;
};

std::vector<RegistryEntry> parse_registry(std::istream& in);
void write_registry(std::ostream& out, const std::vector<RegistryEntry>& entries);

const std::vector<std::string>& default_cue_phrases();

struct FunderCandidate {
    std::string name;
    std::optional<std::string> location;

    bool operator==(const FunderCandidate&) const = default;
};

/// Capitalized phrases that follow a cue phrase ("supported by", "funded by",
/// ...). A trailing ", City, Country" clause becomes the location; "and the"
/// separates consecutive funders.
std::vector<FunderCandidate> extract_funder_mentions(std::string_view funding_text,
                                                     const std::vector<std::string>& cues = default_cue_phrases());

struct FunderVerification {
    std::vector<std::pair<std::string, std::string>> matched;  // (name, registry_id)
    std::vector<std::string> unmatched;
};

FunderVerification verify_funders(const std::vector<std::string>& candidates, const Registry& registry);

enum class Severity { None, Low, High };

std::string_view to_string(Severity s) noexcept;

struct EmailAnomaly {
    std::string profile_id;
    std::vector<std::string> variant_keys;
    std::vector<std::string> emails;

    bool operator==(const EmailAnomaly&) const = default;
};

struct TrustMarkerReport {
    std::string publication_id;
    std::vector<std::string> candidates;
    std::vector<std::string> unmatched_funders;
    std::vector<std::pair<std::string, std::string>> matched_funders;
    std::vector<EmailAnomaly> email_anomalies;
    std::vector<std::string> missing_identifier_profiles;
    Severity severity = Severity::None;
};

/// Funder candidates are the structured funder names plus names extracted from
/// the funding statement, deduplicated by folded form.
std::vector<std::string> funder_candidates(const PublicationRecord& record,
                                           const std::vector<std::string>& cues = default_cue_phrases());

/// High: an unmatched funder, or an author with two raw emails sharing one
/// variant key. Low: only authors without persistent identifiers. Else None.
TrustMarkerReport publication_trust_report(const PublicationRecord& record, const Registry& registry,
                                           const identity::ProfileIndex& profiles);

struct TrustSummary {
    std::size_t publication_count = 0;
    std::size_t missing_identifier_author_count = 0;
    std::map<std::string, std::size_t> unmatched_funder_names;  // publications naming each
    std::size_t high_severity_publication_count = 0;
    std::size_t low_severity_publication_count = 0;
    std::vector<TrustMarkerReport> reports;
};

TrustSummary corpus_trust_summary(const std::vector<PublicationRecord>& records,
                                  const std::vector<identity::ResearcherProfile>& profiles, const Registry& registry);

}  // namespace papertrail::trust
