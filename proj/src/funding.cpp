#include "papertrail/funding.hpp"

#include <algorithm>
#include <sstream>

#include "papertrail/csv.hpp"
#include "papertrail/error.hpp"
#include "papertrail/text.hpp"

namespace papertrail::funding {

namespace {

std::string upper(std::string_view s) {
    std::string out(text::trim(s));
    for (auto& c : out) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return out;
}

std::string format_rate(double r) {
    std::ostringstream os;
    os.precision(10);
    os << r;
    return os.str();
}

}  // namespace

void RatesTable::validate() const {
    for (const auto& [code, r] : units_per_usd) {
        if (!(r > 0.0)) throw Error(ErrorCode::InvalidInput, "rate for " + code + " must be positive");
    }
    const auto usd = units_per_usd.find("USD");
    if (usd != units_per_usd.end() && usd->second != 1.0) {
        throw Error(ErrorCode::InvalidInput, "USD rate must be 1");
    }
}

double RatesTable::rate(std::string_view currency) const {
    const auto it = units_per_usd.find(upper(currency));
    if (it == units_per_usd.end()) {
        throw Error(ErrorCode::MissingRate, "no exchange rate for currency '" + std::string(currency) + "'");
    }
    return it->second;
}

Money RatesTable::to_usd(Money amount, std::string_view currency) const { return amount.convert(rate(currency)); }

RatesTable parse_rates(std::istream& in) {
    const auto table = csv::read_table(in);
    const auto cur = table.column("currency");
    const auto rate = table.column("units_per_usd");
    const auto as_of = table.column("as_of");
    if (!cur || !rate) throw Error(ErrorCode::MissingRequiredColumn, "rates file needs currency and units_per_usd");
    RatesTable out;
    for (const auto& row : table.rows) {
        if (row.error || row.fields.size() != table.header.size()) {
            throw Error(ErrorCode::InvalidInput, "rates file line " + std::to_string(row.line) + " is malformed");
        }
        const auto code = upper(row.fields[*cur]);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(row.fields[*rate], &used);
            if (used != row.fields[*rate].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput, "rates file line " + std::to_string(row.line) + " has a bad rate");
        }
        if (code.empty() || !out.units_per_usd.emplace(code, value).second) {
            throw Error(ErrorCode::InvalidInput, "rates file line " + std::to_string(row.line) + " repeats or omits a currency");
        }
        if (as_of && out.as_of.empty()) out.as_of = row.fields[*as_of];
    }
    out.units_per_usd.emplace("USD", 1.0);
    out.validate();
    return out;
}

void write_rates(std::ostream& out, const RatesTable& rates) {
    csv::write_row(out, {"currency", "units_per_usd", "as_of"});
    for (const auto& [code, r] : rates.units_per_usd) csv::write_row(out, {code, format_rate(r), rates.as_of});
}

temporal::Period classify_grant_period(const GrantRecord& grant, const temporal::PeriodWindows& windows) {
    return windows.classify(grant.start_year);
}

FundingSummary aggregate_funding(const std::vector<GrantRecord>& grants,
                                 const std::vector<identity::ResearcherProfile>& profiles, const RatesTable& rates,
                                 const temporal::PeriodWindows& windows) {
    windows.validate();
    const identity::ProfileIndex index(profiles);
    FundingSummary s;
    s.windows = windows;
    s.rates_as_of = rates.as_of;
    std::map<std::size_t, ResearcherFunding> by_profile;

    for (const auto& g : grants) {
        GrantSummary gs;
        gs.grant_id = g.grant_id;
        gs.funder_name = g.funder_name;
        gs.funder_country = g.funder_country;
        gs.start_year = g.start_year;
        gs.period = classify_grant_period(g, windows);
        gs.amount = g.amount;
        gs.currency = upper(g.currency);
        std::set<std::size_t> linked;
        for (const auto& id : g.researcher_ids) {
            if (const auto p = index.find(id)) {
                linked.insert(*p);
            } else {
                s.warnings.push_back("grant " + g.grant_id + " names unknown researcher " + id);
            }
        }
        if (linked.empty()) {
            s.warnings.push_back("grant " + g.grant_id + " is not linked to any profile and was excluded");
            continue;
        }
        if (g.amount) gs.usd_equivalent = rates.to_usd(*g.amount, gs.currency);
        for (const auto p : linked) gs.profile_ids.push_back(profiles[p].profile_id);
        std::sort(gs.profile_ids.begin(), gs.profile_ids.end());

        if (gs.amount) {
            s.totals_by_currency[gs.currency] += *gs.amount;
            s.usd_total += *gs.usd_equivalent;
        } else {
            ++s.grants_without_amount;
        }
        s.funder_countries.insert(gs.funder_country);
        for (const auto p : linked) {
            auto& r = by_profile[p];
            r.profile_id = profiles[p].profile_id;
            r.canonical_name = profiles[p].canonical_name;
            auto& list = gs.period == temporal::Period::Before ? r.before_grants : r.during_or_after_grants;
            list.push_back(gs.grant_id);
            if (gs.amount) {
                r.totals_by_currency[gs.currency] += *gs.amount;
                r.usd_total += *gs.usd_equivalent;
            }
            r.agencies.insert(gs.funder_name);
            r.funder_countries.insert(gs.funder_country);
            s.researcher_countries.insert(profiles[p].countries.begin(), profiles[p].countries.end());
        }
        s.grants.push_back(std::move(gs));
    }
    if (s.grants_without_amount > 0) {
        s.warnings.push_back(std::to_string(s.grants_without_amount) + " of " + std::to_string(s.grants.size()) +
                             " linked grants have no amount; totals are a lower bound");
    }
    for (auto& [p, r] : by_profile) s.researchers.push_back(std::move(r));
    std::sort(s.researchers.begin(), s.researchers.end(),
              [](const ResearcherFunding& a, const ResearcherFunding& b) { return a.profile_id < b.profile_id; });
    return s;
}

std::vector<NewGrantee> new_grantees(const FundingSummary& summary) {
    std::vector<NewGrantee> out;
    for (const auto& r : summary.researchers) {
        if (!r.before_grants.empty() || r.during_or_after_grants.empty()) continue;
        NewGrantee n;
        n.profile_id = r.profile_id;
        n.canonical_name = r.canonical_name;
        n.grant_ids = r.during_or_after_grants;
        n.agencies = r.agencies;
        n.countries = r.funder_countries;
        n.usd_total = r.usd_total;
        out.push_back(std::move(n));
    }
    return out;
}

std::map<std::string, std::size_t> researchers_per_grant(const std::vector<GrantRecord>& grants,
                                                         const std::vector<identity::ResearcherProfile>& network) {
    const identity::ProfileIndex index(network);
    std::map<std::string, std::size_t> out;
    for (const auto& g : grants) {
        std::set<std::size_t> members;
        for (const auto& id : g.researcher_ids) {
            if (const auto p = index.find(id)) members.insert(*p);
        }
        out[g.grant_id] = members.size();
    }
    return out;
}

}  // namespace papertrail::funding
