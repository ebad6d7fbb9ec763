#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "papertrail/compositional.hpp"
#include "papertrail/corpus.hpp"
#include "papertrail/identity.hpp"
#include "papertrail/money.hpp"

namespace papertrail::funding {

/// Exchange-rate snapshot: units of each currency per one USD.
struct RatesTable {
    std::map<std::string, double> units_per_usd;  // upper-case ISO 4217 codes
    std::string as_of;

    /// Throws InvalidInput on a non-positive rate or a USD rate other than 1.
    void validate() const;
    /// Throws MissingRate.
    [[nodiscard]] double rate(std::string_view currency) const;
    [[nodiscard]] Money to_usd(Money amount, std::string_view currency) const;
};

/// rates.csv: currency, units_per_usd, as_of. USD is added at 1 when absent.
RatesTable parse_rates(std::istream& in);
void write_rates(std::ostream& out, const RatesTable& rates);

temporal::Period classify_grant_period(const GrantRecord& grant, const temporal::PeriodWindows& windows);

struct GrantSummary {
    std::string grant_id;
    std::string funder_name;
    std::string funder_country;
    int start_year = 0;
    temporal::Period period = temporal::Period::Before;
    std::optional<Money> amount;
    std::string currency;
    std::optional<Money> usd_equivalent;
    std::vector<std::string> profile_ids;  // distinct, sorted
};

struct ResearcherFunding {
    std::string profile_id;
    std::string canonical_name;
    std::vector<std::string> before_grants;
    std::vector<std::string> during_or_after_grants;
    std::map<std::string, Money> totals_by_currency;
    Money usd_total;
    std::set<std::string> agencies;
    std::set<std::string> funder_countries;
};

struct FundingSummary {
    temporal::PeriodWindows windows;
    std::string rates_as_of;
    std::vector<GrantSummary> grants;  // linked grants, input order
    std::vector<ResearcherFunding> researchers;  // funded profiles, sorted by profile_id
    std::map<std::string, Money> totals_by_currency;
    Money usd_total;  // each grant counted once
    std::set<std::string> funder_countries;
    std::set<std::string> researcher_countries;
    std::size_t grants_without_amount = 0;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t funded_researcher_count() const { return researchers.size(); }
};

/// Grants whose researcher IDs match no profile are dropped with a warning.
/// Throws MissingRate when a grant with an amount uses a currency absent from
/// the rates table.
FundingSummary aggregate_funding(const std::vector<GrantRecord>& grants,
                                 const std::vector<identity::ResearcherProfile>& profiles, const RatesTable& rates,
                                 const temporal::PeriodWindows& windows = {});

struct NewGrantee {
    std::string profile_id;
    std::string canonical_name;
    std::vector<std::string> grant_ids;
    std::set<std::string> agencies;
    std::set<std::string> countries;
    Money usd_total;
};

/// Funded researchers with no Before grant.
std::vector<NewGrantee> new_grantees(const FundingSummary& summary);

/// Number of distinct network profiles named on each grant.
std::map<std::string, std::size_t> researchers_per_grant(const std::vector<GrantRecord>& grants,
                                                         const std::vector<identity::ResearcherProfile>& network);

}  // namespace papertrail::funding
