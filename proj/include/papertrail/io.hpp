#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "papertrail/corpus.hpp"
#include "papertrail/funding.hpp"
#include "papertrail/identity.hpp"
#include "papertrail/network.hpp"
#include "papertrail/screening.hpp"
#include "papertrail/temporal.hpp"
#include "papertrail/trust.hpp"

// JSON documents exchanged between CLI stages. Keys keep insertion order so
// output is byte-stable; money is written as decimal strings.
namespace papertrail::io {

using Json = nlohmann::ordered_json;

/// Throws Io when the file cannot be read or is not valid JSON.
Json read_json_file(const std::string& path);
/// Two-space indent plus trailing newline.
void write_json_file(const std::string& path, const Json& doc);
void write_text_file(const std::string& path, const std::string& contents);

Json profiles_to_json(const identity::Resolution& resolution);
/// Throws InvalidInput on a malformed document.
std::vector<identity::ResearcherProfile> profiles_from_json(const Json& doc);

Json proposals_to_json(const std::vector<identity::MergeEntry>& proposals);

Json screening_to_json(const std::vector<PublicationRecord>& input, const screening::ScreeningResult& result,
                       const screening::ScreeningCriteria& criteria);
screening::ScreeningReport screening_report_from_json(const Json& doc);

Json trust_to_json(const trust::TrustSummary& summary);

Json solution_to_json(const temporal::ClusterSolution& solution);
/// Everything written by solution_to_json round-trips, dendrogram included.
temporal::ClusterSolution solution_from_json(const Json& doc);

struct NetworkDocument {
    network::CoauthorGraph graph;
    network::CitationStats citations;
    network::AuthorCountReport author_counts;
};

Json network_to_json(const NetworkDocument& doc);

Json funding_to_json(const funding::FundingSummary& summary, const std::vector<funding::NewGrantee>& grantees,
                     const std::map<std::string, std::size_t>& per_grant);
funding::FundingSummary funding_from_json(const Json& doc);
std::vector<funding::NewGrantee> new_grantees_from_json(const Json& doc);

}  // namespace papertrail::io
