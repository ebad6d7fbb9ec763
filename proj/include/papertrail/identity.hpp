#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "papertrail/corpus.hpp"

// Author entity resolution: source researcher IDs and name variants are
// consolidated into ResearcherProfiles, the unit of every downstream analysis.
namespace papertrail::identity {

/// Lowercases the address and collapses runs of '.', '-' and '_' in the local
/// part to a single '.', so "pre-post@x.com" and "pre_post@x.com" collide.
/// Throws NotAnEmail unless the address has exactly one '@' with text on both sides.
std::string email_variant_key(std::string_view email);

/// Diacritic- and case-folded "surname first-initial" key. Accepts both
/// "First Last" and "Last, First" orderings; "J. Smith" and "John Smith" agree.
std::string name_key(std::string_view raw_name);

inline constexpr std::string_view kSyntheticPrefix = "anon:";

/// Stable ID for a mention that carries no source researcher ID, built from
/// the normalized name and first affiliation.
std::string synthetic_researcher_id(const AuthorMention& mention);
std::string mention_source_id(const AuthorMention& mention);
bool is_synthetic_id(std::string_view id);

struct ResearcherProfile {
    std::string profile_id;
    std::vector<std::string> merged_source_ids;  // sorted, non-empty
    std::string canonical_name;
    bool has_persistent_identifier = false;
    std::set<std::string> emails;
    std::set<std::string> countries;
    std::set<std::string> org_registry_ids;
    std::vector<std::string> publication_ids;  // corpus publications, deduplicated, corpus order
    std::size_t corpus_mentions = 0;
    std::map<int, long long> pubs_by_year;  // corpus publications plus career history

    bool operator==(const ResearcherProfile&) const = default;
};

enum class MergeProvenance { Curated, Proposed };

struct MergeEntry {
    std::vector<std::string> source_ids;
    std::string profile_key;
    std::string canonical_name;

    bool operator==(const MergeEntry&) const = default;
};

struct MergeMap {
    std::vector<MergeEntry> entries;
    MergeProvenance provenance = MergeProvenance::Curated;

    /// Throws ConflictingMerge when a source ID is assigned to two profile keys.
    void validate() const;
};

/// merges.csv: source_id, profile_key, canonical_name. Rows sharing a
/// profile_key form one entry.
MergeMap parse_merges(std::istream& in);
void write_merges(std::ostream& out, const MergeMap& map);

struct CareerEntry {
    std::string profile_id;
    int year = 0;
    long long count = 0;
};

/// careers.csv: profile_id, year, count.
std::vector<CareerEntry> parse_careers(std::istream& in);
void write_careers(std::ostream& out, const std::vector<CareerEntry>& entries);

std::vector<AuthorMention> collect_mentions(const std::vector<PublicationRecord>& records);

/// Proposes merges between source IDs sharing an email variant key, or sharing
/// a name key plus an organization registry ID. Groups that would combine two
/// different ORCIDs are never joined. Proposals are for human curation only.
std::vector<MergeEntry> propose_merges(const std::vector<AuthorMention>& mentions);

struct Resolution {
    std::vector<ResearcherProfile> profiles;  // sorted by profile_id
    std::vector<std::string> warnings;
};

/// Every mention maps to exactly one profile. Curated entries decide which
/// IDs share a profile; unmerged IDs become their own profile keyed by the ID.
Resolution resolve(const std::vector<PublicationRecord>& records, const MergeMap& curated,
                   const std::vector<CareerEntry>& careers = {});

/// Lookup from any merged source ID, or a profile key, to its profile.
class ProfileIndex {
public:
    explicit ProfileIndex(const std::vector<ResearcherProfile>& profiles);

    [[nodiscard]] std::optional<std::size_t> find(std::string_view source_id) const;
    [[nodiscard]] std::optional<std::size_t> find(const AuthorMention& mention) const;
    [[nodiscard]] const ResearcherProfile& at(std::size_t i) const { return profiles_[i]; }
    [[nodiscard]] std::size_t size() const { return profiles_.size(); }

private:
    const std::vector<ResearcherProfile>& profiles_;
    std::unordered_map<std::string, std::size_t> by_source_id_;
};

}  // namespace papertrail::identity
