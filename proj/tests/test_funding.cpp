#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "expect.hpp"
#include "papertrail/funding.hpp"
#include "papertrail/screening.hpp"
#include "support.hpp"

using namespace papertrail;
using namespace papertrail::funding;
using temporal::Period;
using testsupport::code_of;
using testsupport::data_path;

namespace {

GrantRecord grant(const std::string& id, const std::string& funder, const std::string& country, int year,
                  std::optional<std::string> amount, const std::string& currency, std::vector<std::string> who) {
    GrantRecord g;
    g.grant_id = id;
    g.funder_name = funder;
    g.funder_country = country;
    g.start_year = year;
    if (amount) g.amount = Money::parse(*amount);
    g.currency = currency;
    g.researcher_ids = std::move(who);
    return g;
}

RatesTable rates() {
    RatesTable r;
    r.units_per_usd = {{"USD", 1.0}, {"EUR", 0.92}, {"AUD", 1.5}, {"XAU", 4.0}};
    r.as_of = "2025-12-31";
    return r;
}

std::vector<identity::ResearcherProfile> small_profiles() {
    return identity::resolve({testsupport::paper_with("p1", {"a", "b", "c", "d"})}, {}).profiles;
}

struct Fixture {
    std::vector<identity::ResearcherProfile> profiles;
    std::vector<GrantRecord> grants;
    RatesTable rates;
};

Fixture bundled() {
    const auto records = load_corpus(data_path("synth/corpus.csv")).records;
    const auto included = screening::screen(records, {}).included;
    std::ifstream min(data_path("synth/merges.csv"));
    std::ifstream cin(data_path("synth/careers.csv"));
    std::ifstream gin(data_path("synth/grants.csv"));
    std::ifstream rin(data_path("synth/rates.csv"));
    Fixture f;
    f.profiles = identity::resolve(included, identity::parse_merges(min), identity::parse_careers(cin)).profiles;
    const auto parsed = parse_grants(gin);
    REQUIRE(parsed.malformed_rows.empty());
    f.grants = parsed.grants;
    f.rates = parse_rates(rin);
    return f;
}

}  // namespace

TEST_CASE("period boundaries") {
    const temporal::PeriodWindows w;
    auto g = grant("g", "F", "US", 2018, "1", "USD", {"a"});
    CHECK(classify_grant_period(g, w) == Period::Before);
    g.start_year = 2019;
    CHECK(classify_grant_period(g, w) == Period::During);
    g.start_year = 2022;
    CHECK(classify_grant_period(g, w) == Period::During);
    g.start_year = 2023;
    CHECK(classify_grant_period(g, w) == Period::After);
}

TEST_CASE("rates") {
    const auto r = rates();
    CHECK(r.to_usd(*Money::parse("100"), "XAU") == Money::from_cents(2500));
    CHECK(r.to_usd(*Money::parse("0.92"), "EUR") == Money::from_cents(100));
    CHECK(r.rate("usd") == 1.0);
    CHECK(code_of([&] { (void)r.rate("JPY"); }) == ErrorCode::MissingRate);

    RatesTable bad = r;
    bad.units_per_usd["EUR"] = 0.0;
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidInput);
    bad = r;
    bad.units_per_usd["USD"] = 2.0;
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidInput);

    std::ostringstream out;
    write_rates(out, r);
    std::istringstream in(out.str());
    const auto back = parse_rates(in);
    CHECK(back.units_per_usd == r.units_per_usd);
    CHECK(back.as_of == r.as_of);

    std::istringstream no_usd("currency,units_per_usd,as_of\nEUR,0.9,2024-01-01\n");
    CHECK(parse_rates(no_usd).rate("USD") == 1.0);
}

TEST_CASE("aggregate_funding on a small case") {
    const auto profiles = small_profiles();
    const std::vector<GrantRecord> grants{
        grant("g1", "Agency One", "FR", 2017, "920.00", "EUR", {"a"}),
        grant("g2", "Agency Two", "AU", 2020, "150.00", "AUD", {"b", "c"}),
        grant("g3", "Agency Two", "AU", 2024, std::nullopt, "AUD", {"c"}),
        grant("g4", "Lost Agency", "US", 2020, "5.00", "USD", {"zz"}),
    };
    const auto s = aggregate_funding(grants, profiles, rates());
    CHECK(s.grants.size() == 3);
    CHECK(s.funded_researcher_count() == 3);
    CHECK(s.usd_total == Money::from_cents(110000));
    CHECK(s.grants_without_amount == 1);
    REQUIRE(s.warnings.size() >= 1);
    CHECK(s.warnings[0].find("g4") != std::string::npos);
    CHECK(s.funder_countries == std::set<std::string>{"AU", "FR"});
    CHECK(s.totals_by_currency.at("EUR") == Money::from_cents(92000));

    // the shared grant counts once in the corpus total but in full for each researcher
    const auto& b = s.researchers[1];
    CHECK(b.profile_id == "b");
    CHECK(b.usd_total == Money::from_cents(10000));

    const auto fresh = new_grantees(s);
    REQUIRE(fresh.size() == 2);
    CHECK(fresh[0].profile_id == "b");
    CHECK(fresh[1].profile_id == "c");
    CHECK(fresh[1].grant_ids == std::vector<std::string>{"g2", "g3"});

    auto missing = grants;
    missing.push_back(grant("g5", "Agency Three", "JP", 2021, "1000", "JPY", {"d"}));
    CHECK(code_of([&] { aggregate_funding(missing, profiles, rates()); }) == ErrorCode::MissingRate);
    // a grant without an amount needs no rate
    missing.back().amount.reset();
    CHECK(aggregate_funding(missing, profiles, rates()).funded_researcher_count() == 4);
}

TEST_CASE("researchers_per_grant") {
    const auto profiles = small_profiles();
    const std::vector<GrantRecord> grants{grant("shared", "A", "US", 2020, "1", "USD", {"a", "b", "c", "d", "zz"}),
                                          grant("solo", "A", "US", 2020, "1", "USD", {"a", "a"})};
    const auto n = researchers_per_grant(grants, profiles);
    CHECK(n.at("shared") == 4);
    CHECK(n.at("solo") == 1);
}

TEST_CASE("totals are invariant to grant order") {
    const auto f = bundled();
    const auto base = aggregate_funding(f.grants, f.profiles, f.rates);
    auto shuffled = f.grants;
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto s = aggregate_funding(shuffled, f.profiles, f.rates);
        CHECK(s.usd_total == base.usd_total);
        CHECK(s.totals_by_currency == base.totals_by_currency);
        CHECK(s.funded_researcher_count() == base.funded_researcher_count());
        std::size_t i = 0;
        for (const auto& r : s.researchers) CHECK(r.usd_total == base.researchers[i++].usd_total);
    }
}

TEST_CASE("bundled grants reproduce the new-grantee table") {
    const auto f = bundled();
    const auto s = aggregate_funding(f.grants, f.profiles, f.rates);
    CHECK(s.funded_researcher_count() == 30);
    CHECK(s.grants_without_amount == 1);
    REQUIRE(s.warnings.size() == 3);
    CHECK(s.warnings[0].find("G-NIH-9001") != std::string::npos);
    CHECK(s.warnings[1].find("not linked") != std::string::npos);
    CHECK(s.warnings[2].find("1 of 35") == 0);

    const auto fresh = new_grantees(s);
    CHECK(fresh.size() == 9);
    std::set<std::string> agencies;
    std::set<std::string> countries;
    Money total;
    std::set<std::string> counted;
    for (const auto& g : fresh) {
        agencies.insert(g.agencies.begin(), g.agencies.end());
        countries.insert(g.countries.begin(), g.countries.end());
        for (const auto& id : g.grant_ids) counted.insert(id);
    }
    for (const auto& g : s.grants)
        if (counted.contains(g.grant_id) && g.usd_equivalent) total += *g.usd_equivalent;
    CHECK(agencies.size() == 7);
    CHECK(countries.size() == 7);
    CHECK(total > Money::from_cents(310000000));
}
