// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "papertrail/funding.hpp"
#include "papertrail/network.hpp"
#include "papertrail/report.hpp"
#include "papertrail/screening.hpp"
#include "papertrail/synth.hpp"
#include "papertrail/temporal.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace papertrail;

namespace {

struct Outcome {
    enum class State { Pass, Fail, Skip } state = State::Pass;
    std::string detail;
};

// Collects failed expectations; the criterion passes when none failed.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    void note(const std::string& s) { notes_.push_back(s); }

    [[nodiscard]] Outcome outcome() const {
        Outcome o;
        o.state = failed_ == 0 ? Outcome::State::Pass : Outcome::State::Fail;
        const auto& parts = failed_ == 0 ? notes_ : failures_;
        for (const auto& p : parts) o.detail += (o.detail.empty() ? "" : "; ") + p;
        if (failed_ > failures_.size()) o.detail += "; +" + std::to_string(failed_ - failures_.size()) + " more";
        return o;
    }

private:
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
    std::size_t failed_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int places = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

using Points = std::vector<std::vector<double>>;

Points gaussian_points(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Points p(n, std::vector<double>(d));
    for (auto& row : p)
        for (auto& v : row) v = g(rng);
    return p;
}

Points blobs(std::mt19937_64& rng, const Points& centres, std::size_t per, double sd) {
    std::normal_distribution<double> g(0.0, sd);
    Points out;
    for (const auto& c : centres) {
        for (std::size_t i = 0; i < per; ++i) {
            auto p = c;
            for (auto& v : p) v += g(rng);
            out.push_back(p);
        }
    }
    return out;
}

std::vector<double> random_composition(std::mt19937_64& rng, std::size_t d) {
    std::uniform_real_distribution<double> u(0.001, 1.0);
    std::vector<double> x(d);
    for (auto& v : x) v = u(rng);
    const double s = std::accumulate(x.begin(), x.end(), 0.0);
    for (auto& v : x) v /= s;
    return x;
}

struct Fixture {
    std::vector<PublicationRecord> records;
    std::vector<PublicationRecord> included;
    identity::MergeMap merges;
    std::vector<identity::CareerEntry> careers;
    std::vector<identity::ResearcherProfile> profiles;
};

Fixture bundled_fixture() {
    using testsupport::data_path;
    Fixture f;
    f.records = load_corpus(data_path("synth/corpus.csv")).records;
    f.included = screening::screen(f.records, {}).included;
    std::ifstream min(data_path("synth/merges.csv"));
    f.merges = identity::parse_merges(min);
    std::ifstream cin(data_path("synth/careers.csv"));
    f.careers = identity::parse_careers(cin);
    f.profiles = identity::resolve(f.included, f.merges, f.careers).profiles;
    return f;
}

// ---------------------------------------------------------------------------

Outcome screening_funnel() {
    Checks c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto records = load_corpus(testsupport::data_path("synth/corpus.csv")).records;
    const auto r = screening::screen(records, {}).report;
    const double elapsed = seconds_since(t0);
    c.expect(r.input_count == 140, "input " + std::to_string(r.input_count));
    c.expect(r.retraction_notice_count == 2, "retraction " + std::to_string(r.retraction_notice_count));
    c.expect(r.doc_type_excluded_count == 12, "doc type " + std::to_string(r.doc_type_excluded_count));
    c.expect(r.reviewer_only_count == 4, "reviewer-only " + std::to_string(r.reviewer_only_count));
    c.expect(r.too_many_authors_count == 2, "too many authors " + std::to_string(r.too_many_authors_count));
    c.expect(r.included_count == 120, "included " + std::to_string(r.included_count));
    c.expect(elapsed < 1.0, "runtime " + fmt(elapsed) + " s");
    c.note("140 -> 2/12/4/2 -> 120");
    return c.outcome();
}

Outcome entity_resolution() {
    Checks c;
    const auto records = load_corpus(testsupport::data_path("synth/corpus.csv")).records;
    const auto included = screening::screen(records, {}).included;
    std::ifstream min(testsupport::data_path("synth/merges.csv"));
    const auto merges = identity::parse_merges(min);
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = identity::resolve(included, merges);
    const double elapsed = seconds_since(t0);

    std::set<std::string> observed;
    std::size_t mentions = 0;
    for (const auto& r : included) {
        for (const auto& m : r.authors) observed.insert(identity::mention_source_id(m));
        mentions += r.authors.size();
    }
    std::set<std::string> covered;
    std::size_t listed = 0;
    std::size_t profile_mentions = 0;
    for (const auto& p : res.profiles) {
        covered.insert(p.merged_source_ids.begin(), p.merged_source_ids.end());
        listed += p.merged_source_ids.size();
        profile_mentions += p.corpus_mentions;
    }
    c.expect(observed.size() == 319, "source IDs " + std::to_string(observed.size()));
    c.expect(res.profiles.size() == 312, "profiles " + std::to_string(res.profiles.size()));
    c.expect(covered == observed && listed == covered.size(), "source IDs do not partition into profiles");
    c.expect(profile_mentions == mentions, "mention count not preserved");
    c.expect(elapsed < 1.0, "runtime " + fmt(elapsed) + " s");
    c.note("319 source IDs -> 312 profiles");
    return c.outcome();
}

Outcome clr_properties() {
    using namespace temporal;
    Checks c;
    std::mt19937_64 rng(3001);
    std::uniform_int_distribution<long long> count(0, 400);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto z = clr(Composition{random_composition(rng, 3)}).coords;
        worst = std::max(worst, std::fabs(z[0] + z[1] + z[2]));

        // raw proportions on any counts; the CLR on zero-free counts, since the
        // replacement value for a zero is half a publication of the actual total
        std::vector<long long> n{count(rng), count(rng), count(rng)};
        if (n[0] + n[1] + n[2] == 0) n[0] = 1;
        auto scaled = n;
        for (auto& x : scaled) x *= 13;
        c.expect(raw_proportions(n) == raw_proportions(scaled), "scaling changed the composition");
        for (auto& x : n) x += 1;
        scaled = n;
        for (auto& x : scaled) x *= 13;
        c.expect(clr(to_composition(n)).coords == clr(to_composition(scaled)).coords, "scaling changed the CLR");
    }
    c.expect(worst < 1e-9, "max |sum| " + sci(worst));
    const auto uniform = clr(Composition{{1.0 / 3, 1.0 / 3, 1.0 / 3}}).coords;
    for (const double v : uniform) c.expect(std::fabs(v) < 1e-15, "uniform composition is not the zero vector");
    c.note("max |sum| " + sci(worst));
    return c.outcome();
}

Outcome aitchison_equivalence() {
    using namespace temporal;
    Checks c;
    std::mt19937_64 rng(3002);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t d = 3 + static_cast<std::size_t>(t % 4);
        const auto x = random_composition(rng, d);
        const auto y = random_composition(rng, d);
        const double lib = euclidean_distance(clr(Composition{x}).coords, clr(Composition{y}).coords);
        worst = std::max(worst, std::fabs(lib - oracle::aitchison_distance(x, y)));
    }
    c.expect(worst < 1e-9, "max deviation " + sci(worst));
    c.note("max deviation " + sci(worst));
    return c.outcome();
}

Outcome clustering_oracle() {
    using namespace temporal;
    Checks c;
    std::mt19937_64 rng(3003);
    std::uniform_int_distribution<std::size_t> n_of(8, 12);
    const std::pair<Linkage, oracle::Link> links[] = {
        {Linkage::Ward, oracle::Link::Ward}, {Linkage::Complete, oracle::Link::Complete},
        {Linkage::Average, oracle::Link::Average}};
    for (const auto& [lib, orc] : links) {
        for (int t = 0; t < 50; ++t) {
            const auto pts = gaussian_points(rng, n_of(rng), 3);
            const auto tree = agglomerate(DistanceMatrix::euclidean(pts), lib);
            const auto want = oracle::agglomerate(pts, orc);
            std::vector<std::set<std::size_t>> members(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) members[i] = {i};
            bool same = tree.merges.size() == want.size();
            for (std::size_t s = 0; same && s < want.size(); ++s) {
                const auto& m = tree.merges[s];
                same = members[m.left] == want[s].left && members[m.right] == want[s].right &&
                       std::fabs(m.height - want[s].height) < 1e-9;
                auto u = members[m.left];
                u.insert(members[m.right].begin(), members[m.right].end());
                members.push_back(u);
            }
            c.expect(same, std::string(to_string(lib)) + " instance " + std::to_string(t) + " differs");
            if (lib == Linkage::Ward) {
                for (std::size_t s = 1; s < tree.merges.size(); ++s)
                    c.expect(tree.merges[s].height >= tree.merges[s - 1].height, "ward heights decrease");
            }
        }
    }
    c.note("150 merge sequences match");
    return c.outcome();
}

Outcome silhouette_checks() {
    using namespace temporal;
    Checks c;
    std::mt19937_64 rng(3004);
    for (int t = 0; t < 200; ++t) {
        const auto pts = gaussian_points(rng, 20, 3);
        const auto labels = cut_tree(agglomerate(DistanceMatrix::euclidean(pts), Linkage::Ward), 2 + t % 8);
        const auto s = silhouette(labels, DistanceMatrix::euclidean(pts));
        const auto want = oracle::silhouette(pts, labels);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            c.expect(s.values[i] >= -1.0 && s.values[i] <= 1.0, "value outside [-1, 1]");
            c.expect(std::fabs(s.values[i] - want[i]) < 1e-12, "differs from the definition");
        }
    }
    const Points line{{0}, {1}, {2}, {10}, {11}, {20}};
    const auto s = silhouette({0, 0, 0, 1, 1, 2}, DistanceMatrix::euclidean(line));
    const std::vector<double> hand{6.0 / 7, 17.0 / 19, 14.0 / 17, 8.0 / 9, 8.0 / 9, 0.0};
    for (std::size_t i = 0; i < hand.size(); ++i)
        c.expect(std::fabs(s.values[i] - hand[i]) < 1e-12, "hand fixture point " + std::to_string(i));
    c.expect(s.values[5] == 0.0, "singleton is not 0");
    c.note("200 fuzzed solutions, 6-point fixture within 1e-12");
    return c.outcome();
}

Outcome gap_statistic_checks() {
    using namespace temporal;
    Checks c;
    std::mt19937_64 rng(3005);
    const auto four = blobs(rng, {{0, 0}, {10, 0}, {0, 10}, {10, 10}}, 25, 0.6);
    GapOptions opt;
    opt.k_min = 1;
    opt.k_max = 8;
    opt.iterations = 50;
    const auto a = gap_statistic(four, opt);
    const auto b = gap_statistic(four, opt);
    bool identical = a.size() == b.size();
    for (std::size_t i = 0; identical && i < a.size(); ++i)
        identical = std::memcmp(&a[i].gap, &b[i].gap, sizeof(double)) == 0 &&
                    std::memcmp(&a[i].standard_error, &b[i].standard_error, sizeof(double)) == 0;
    c.expect(identical, "same seed gave different curves");
    c.expect(gap_criterion(a) == 4, "4-blob gap criterion " + std::to_string(gap_criterion(a)));

    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Points big(300, std::vector<double>(3));
    for (auto& p : big)
        for (auto& v : p) v = u(rng);
    GapOptions heavy;
    heavy.iterations = 100;
    const auto t0 = std::chrono::steady_clock::now();
    gap_statistic(big, heavy);
    const double elapsed = seconds_since(t0);
    c.expect(elapsed < 10.0, "B=100, n=300 took " + fmt(elapsed) + " s");
    c.note("4-blob k=4; B=100, n=300 in " + fmt(elapsed, 2) + " s");
    return c.outcome();
}

Outcome archetype_recovery() {
    using namespace temporal;
    Checks c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = synth::default_spec();
    const auto out = synth::generate_corpus(spec);
    const auto included = screening::screen(out.records, {}).included;
    const auto profiles = identity::resolve(included, out.merges, out.careers).profiles;
    const auto sol = run_pipeline(profiles, {}, {});
    const double elapsed = seconds_since(t0);

    std::map<std::string, int> truth;
    for (const auto& t : out.truth) truth[t.profile_id] = t.archetype;
    std::vector<int> planted;
    for (const auto& id : sol.profile_ids) planted.push_back(truth.count(id) ? truth.at(id) : -1);

    c.expect(sol.k == 4, "k = " + std::to_string(sol.k));
    const double ari = adjusted_rand_index(sol.labels, planted);
    c.expect(ari >= 0.9, "ARI " + fmt(ari));

    // match each recovered cluster to its majority archetype
    double worst = 0.0;
    std::string sizes;
    for (const auto& centroid : sol.centroids) {
        std::map<int, std::size_t> votes;
        for (std::size_t i = 0; i < sol.labels.size(); ++i)
            if (sol.labels[i] == centroid.label) ++votes[planted[i]];
        const int arch = std::max_element(votes.begin(), votes.end(),
                                          [](const auto& x, const auto& y) { return x.second < y.second; })
                             ->first;
        if (arch < 1) {
            c.expect(false, "cluster without planted members");
            continue;
        }
        const auto& want = spec.archetypes[static_cast<std::size_t>(arch - 1)];
        for (std::size_t d = 0; d < 3; ++d) {
            worst = std::max(worst, std::fabs(centroid.centroid.parts[d] - want.centroid[d]));
            if (want.centroid[d] == 0.0)
                c.expect(centroid.centroid.parts[d] == 0.0, "planted zero is not exact in " + want.name);
        }
        sizes += (sizes.empty() ? "" : "/") + std::to_string(centroid.size);
    }
    c.expect(worst <= 0.02, "centroid deviation " + fmt(worst));

    const auto table = report::render(report::cluster_report(sol), report::Format::Markdown);
    std::size_t zero_cells = 0;
    for (auto pos = table.find("| 0.000 |"); pos != std::string::npos; pos = table.find("| 0.000 |", pos + 1))
        ++zero_cells;
    std::size_t planted_zeros = 0;
    for (const auto& a : spec.archetypes)
        for (const double v : a.centroid) planted_zeros += v == 0.0 ? 1 : 0;
    c.expect(zero_cells == planted_zeros, "report shows " + std::to_string(zero_cells) + " zero cells");
    c.expect(elapsed < 5.0, "runtime " + fmt(elapsed) + " s");
    c.note("k=4, sizes " + sizes + ", ARI " + fmt(ari) + ", max centroid deviation " + fmt(worst) + ", " +
           fmt(elapsed, 2) + " s");
    return c.outcome();
}

Outcome network_oracle() {
    Checks c;
    std::mt19937_64 rng(3009);
    std::uniform_int_distribution<std::size_t> who(0, 11);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    for (int t = 0; t < 200; ++t) {
        std::vector<PublicationRecord> recs;
        for (int p = 0; p < 8; ++p) {
            std::vector<std::string> ids;
            const auto n = size(rng);
            for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(who(rng)));
            recs.push_back(testsupport::paper_with("p" + std::to_string(p), ids));
        }
        const auto g = network::build_coauthor_graph(recs, identity::resolve(recs, {}).profiles);
        const auto pairs = oracle::coauthor_pairs(recs);
        c.expect(g.edge_count() == pairs.size(), "edge count differs from pair enumeration");
        for (std::size_t i = 0; i < g.node_count(); ++i)
            c.expect(std::fabs(network::local_clustering_coefficient(g, i) -
                               oracle::clustering_coefficient(pairs, g.nodes()[i])) < 1e-12,
                     "clustering coefficient differs");
    }

    const auto f = bundled_fixture();
    auto keyed = f.included;
    std::map<std::string, std::string> key;
    for (const auto& e : f.merges.entries)
        for (const auto& id : e.source_ids) key[id] = e.profile_key;
    for (auto& r : keyed) {
        for (auto& m : r.authors) {
            auto id = identity::mention_source_id(m);
            m.source_researcher_id = key.count(id) ? key.at(id) : id;
        }
    }
    const auto g = network::build_coauthor_graph(f.included, f.profiles);
    const auto pairs = oracle::coauthor_pairs(keyed);
    c.expect(g.edge_count() == pairs.size(), "fixture edges " + std::to_string(g.edge_count()) + " vs " +
                                                  std::to_string(pairs.size()));

    const auto flags = network::author_count_anomalies(f.records, 25);
    std::multiset<std::size_t> flagged_sizes;
    for (const auto& id : flags.flagged)
        for (const auto& r : f.records)
            if (r.publication_id == id) flagged_sizes.insert(r.authors.size());
    c.expect(flagged_sizes == std::multiset<std::size_t>{63, 161}, "flags are not exactly the 161 and 63 decoys");
    c.note("fixture " + std::to_string(g.edge_count()) + " edges; flags at 161 and 63 authors");
    return c.outcome();
}

Outcome citation_statistics() {
    Checks c;
    const auto records = load_corpus(testsupport::data_path("citations_138.csv")).records;
    const auto s = network::citation_stats(records);
    c.expect(s.total == 7042, "total " + std::to_string(s.total));
    c.expect(std::lround(s.mean) == 51, "mean " + fmt(s.mean));
    c.expect(s.median == 41.0, "median " + fmt(s.median));
    c.expect(s.uncited_count == 5, "uncited " + std::to_string(s.uncited_count));
    c.expect(s.low_cited_count == 17, "below 10 " + std::to_string(s.low_cited_count));

    const auto rollup = report::publisher_rollup(records);
    c.expect(std::get<std::int64_t>(rollup.rows.back().cells[4]) == s.total, "rollup total differs");
    const auto f = bundled_fixture();
    const auto fixture_rollup = report::publisher_rollup(f.included);
    c.expect(std::get<std::int64_t>(fixture_rollup.rows.back().cells[4]) == network::citation_stats(f.included).total,
             "fixture rollup total differs");
    c.note("total 7042, mean " + fmt(s.mean, 2) + ", median 41, 5 uncited, 17 below 10");
    return c.outcome();
}

Outcome funding_checks() {
    Checks c;
    const auto f = bundled_fixture();
    std::ifstream gin(testsupport::data_path("synth/grants.csv"));
    std::ifstream rin(testsupport::data_path("synth/rates.csv"));
    const auto grants = parse_grants(gin).grants;
    const auto rates = funding::parse_rates(rin);
    const auto s = funding::aggregate_funding(grants, f.profiles, rates);
    const auto fresh = funding::new_grantees(s);

    std::set<std::string> agencies;
    std::set<std::string> countries;
    std::set<std::string> grant_ids;
    for (const auto& g : fresh) {
        agencies.insert(g.agencies.begin(), g.agencies.end());
        countries.insert(g.countries.begin(), g.countries.end());
        grant_ids.insert(g.grant_ids.begin(), g.grant_ids.end());
    }
    Money total;
    for (const auto& g : s.grants)
        if (grant_ids.count(g.grant_id) && g.usd_equivalent) total += *g.usd_equivalent;
    c.expect(fresh.size() == 9, "new grantees " + std::to_string(fresh.size()));
    c.expect(agencies.size() == 7, "agencies " + std::to_string(agencies.size()));
    c.expect(countries.size() == 7, "countries " + std::to_string(countries.size()));
    c.expect(total > Money::from_cents(310000000), "total " + total.to_string());

    const temporal::PeriodWindows w;
    GrantRecord g;
    for (const auto& [year, period] : std::vector<std::pair<int, temporal::Period>>{
             {2018, temporal::Period::Before}, {2022, temporal::Period::During}, {2023, temporal::Period::After}}) {
        g.start_year = year;
        c.expect(funding::classify_grant_period(g, w) == period, "period of " + std::to_string(year));
    }

    std::mt19937_64 rng(3011);
    auto shuffled = grants;
    for (int t = 0; t < 50; ++t) {
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto again = funding::aggregate_funding(shuffled, f.profiles, rates);
        c.expect(again.usd_total == s.usd_total && again.totals_by_currency == s.totals_by_currency,
                 "totals depend on order");
    }
    c.note("9 new grantees, 7 agencies, 7 countries, USD " + total.to_string());
    return c.outcome();
}

int run(const std::string& command) {
    const int rc = std::system((command + " >/dev/null 2>&1").c_str());
    return rc;
}

bool same_tree(const fs::path& a, const fs::path& b, std::string& why) {
    std::set<fs::path> rel_a;
    std::set<fs::path> rel_b;
    for (const auto& e : fs::recursive_directory_iterator(a))
        if (e.is_regular_file()) rel_a.insert(fs::relative(e.path(), a));
    for (const auto& e : fs::recursive_directory_iterator(b))
        if (e.is_regular_file()) rel_b.insert(fs::relative(e.path(), b));
    if (rel_a != rel_b) {
        why = "file lists differ";
        return false;
    }
    for (const auto& r : rel_a) {
        if (testsupport::read_file((a / r).string()) != testsupport::read_file((b / r).string())) {
            why = r.string() + " differs";
            return false;
        }
    }
    return !rel_a.empty();
}

bool pipeline(const fs::path& work, std::string& why) {
    fs::remove_all(work);
    fs::create_directories(work);
    const std::string cli = PAPERTRAIL_CLI;
    const auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
    const auto data = work / "data";
    const std::vector<std::string> steps = {
        cli + " synth --seed 42 --out " + q(data),
        cli + " screen --corpus " + q(data / "corpus.csv") + " --out " + q(work / "included.csv") + " --report " +
            q(work / "screening.json"),
        cli + " resolve --corpus " + q(work / "included.csv") + " --merges " + q(data / "merges.csv") +
            " --careers " + q(data / "careers.csv") + " --out " + q(work / "profiles.json") + " --proposals " +
            q(work / "proposals.json"),
        cli + " trust --corpus " + q(work / "included.csv") + " --registry " + q(data / "registry.csv") +
            " --profiles " + q(work / "profiles.json") + " --out " + q(work / "trust.json"),
        cli + " cluster --profiles " + q(work / "profiles.json") + " --seed 42 --out " + q(work / "solution.json"),
        cli + " network --corpus " + q(work / "included.csv") + " --profiles " + q(work / "profiles.json") +
            " --count-corpus " + q(data / "corpus.csv") + " --out " + q(work / "network.json") + " --edges " +
            q(work / "edges.csv"),
        cli + " funding --grants " + q(data / "grants.csv") + " --rates " + q(data / "rates.csv") + " --profiles " +
            q(work / "profiles.json") + " --out " + q(work / "funding.json"),
        cli + " report --corpus " + q(work / "included.csv") + " --screening " + q(work / "screening.json") +
            " --profiles " + q(work / "profiles.json") + " --solution " + q(work / "solution.json") + " --network " +
            q(work / "network.json") + " --funding " + q(work / "funding.json") + " --out " + q(work / "report"),
    };
    for (const auto& s : steps) {
        if (run(s) != 0) {
            why = "step failed: " + s.substr(cli.size() + 1, s.find(' ', cli.size() + 1) - cli.size() - 1);
            return false;
        }
    }
    return true;
}

Outcome end_to_end_determinism() {
    Checks c;
    const auto root = fs::temp_directory_path() / "papertrail_acceptance_e2e";
    std::string why;
    const bool first = pipeline(root / "run1", why);
    c.expect(first, why);
    const bool second = first && pipeline(root / "run2", why);
    c.expect(!first || second, why);
    if (first && second) {
        c.expect(same_tree(root / "run1" / "report", root / "run2" / "report", why), "report: " + why);
        c.expect(same_tree(root / "run1", root / "run2", why), "outputs: " + why);
        std::size_t n = 0;
        for (const auto& e : fs::directory_iterator(root / "run1" / "report")) n += e.is_regular_file() ? 1 : 0;
        c.note(std::to_string(n) + " report files identical across runs");
    }
    fs::remove_all(root);
    return c.outcome();
}

Outcome paper_dataset() {
    const char* env = std::getenv("PAPERTRAIL_PAPER_DATASET");
    if (env == nullptr || *env == '\0') return {Outcome::State::Skip, "PAPERTRAIL_PAPER_DATASET not set"};
    Checks c;
    const fs::path dir(env);
    const auto corpus_path = fs::exists(dir / "corpus.jsonl") ? dir / "corpus.jsonl" : dir / "corpus.csv";
    const auto records = load_corpus(corpus_path.string()).records;
    const auto included = screening::screen(records, {}).included;
    identity::MergeMap merges;
    if (fs::exists(dir / "merges.csv")) {
        std::ifstream in(dir / "merges.csv");
        merges = identity::parse_merges(in);
    }
    std::vector<identity::CareerEntry> careers;
    if (fs::exists(dir / "careers.csv")) {
        std::ifstream in(dir / "careers.csv");
        careers = identity::parse_careers(in);
    }
    const auto profiles = identity::resolve(included, merges, careers).profiles;
    const auto g = network::build_coauthor_graph(included, profiles);
    const auto cites = network::citation_stats(included);
    const auto sol = temporal::run_pipeline(profiles, {}, {});
    c.expect(profiles.size() == 312, "authors " + std::to_string(profiles.size()));
    c.expect(g.edge_count() == 2836, "links " + std::to_string(g.edge_count()));
    c.expect(cites.total == 7042, "citations " + std::to_string(cites.total));
    c.expect(sol.k == 4, "k = " + std::to_string(sol.k));
    const std::size_t want[] = {202, 68, 24, 18};
    std::string sizes;
    for (std::size_t i = 0; i < sol.centroids.size(); ++i) {
        if (i < 4) {
            const auto diff = static_cast<long long>(sol.centroids[i].size) - static_cast<long long>(want[i]);
            c.expect(std::llabs(diff) <= 5, "cluster " + std::to_string(i + 1) + " size " +
                                                std::to_string(sol.centroids[i].size));
        }
        sizes += (sizes.empty() ? "" : "/") + std::to_string(sol.centroids[i].size);
    }
    c.note(std::to_string(profiles.size()) + " authors, " + std::to_string(g.edge_count()) + " links, sizes " + sizes);
    return c.outcome();
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"screening funnel", screening_funnel},
        {"entity resolution", entity_resolution},
        {"CLR properties", clr_properties},
        {"Aitchison equivalence", aitchison_equivalence},
        {"clustering oracle", clustering_oracle},
        {"silhouette", silhouette_checks},
        {"gap statistic", gap_statistic_checks},
        {"archetype recovery", archetype_recovery},
        {"network oracle", network_oracle},
        {"citation statistics", citation_statistics},
        {"funding", funding_checks},
        {"end-to-end determinism", end_to_end_determinism},
        {"reference dataset", paper_dataset},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {Outcome::State::Fail, std::string("exception: ") + e.what()};
        }
        const double elapsed = seconds_since(t0);
        const char* tag = o.state == Outcome::State::Pass ? "PASS" : o.state == Outcome::State::Fail ? "FAIL" : "SKIP";
        if (o.state == Outcome::State::Fail) ++failed;
        std::printf("%s %2zu %-24s %7.3f s  %s\n", tag, i + 1, criteria[i].first.c_str(), elapsed, o.detail.c_str());
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
