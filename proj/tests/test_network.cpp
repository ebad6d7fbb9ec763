#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "expect.hpp"
#include "oracles.hpp"
#include "papertrail/network.hpp"
#include "papertrail/screening.hpp"
#include "support.hpp"

using namespace papertrail;
using namespace papertrail::network;
using testsupport::code_of;
using testsupport::paper_with;

namespace {

CoauthorGraph graph_of(const std::vector<PublicationRecord>& records) {
    return build_coauthor_graph(records, identity::resolve(records, {}).profiles);
}

std::set<std::pair<std::string, std::string>> named_edges(const CoauthorGraph& g) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [e, w] : g.edges()) out.insert({g.nodes()[e.first], g.nodes()[e.second]});
    return out;
}

// Every anonymous mention gets its synthetic ID and every merged ID its profile key,
// so the oracle can enumerate pairs straight from the records.
std::vector<PublicationRecord> with_profile_ids(std::vector<PublicationRecord> records,
                                                const identity::MergeMap& merges) {
    std::map<std::string, std::string> key;
    for (const auto& e : merges.entries)
        for (const auto& id : e.source_ids) key[id] = e.profile_key;
    for (auto& r : records) {
        for (auto& m : r.authors) {
            std::string id = identity::mention_source_id(m);
            if (key.contains(id)) id = key.at(id);
            m.source_researcher_id = id;
        }
    }
    return records;
}

std::vector<PublicationRecord> random_papers(std::mt19937_64& rng, std::size_t people, std::size_t papers) {
    std::uniform_int_distribution<std::size_t> who(0, people - 1);
    std::uniform_int_distribution<std::size_t> size(1, 4);
    std::vector<PublicationRecord> out;
    for (std::size_t p = 0; p < papers; ++p) {
        std::vector<std::string> ids;
        const auto n = size(rng);
        for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(who(rng)));
        out.push_back(paper_with("p" + std::to_string(p), ids));
    }
    return out;
}

}  // namespace

TEST_CASE("triangle") {
    const auto g = graph_of({paper_with("p1", {"a", "b", "c"})});
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 3);
    for (const auto* id : {"a", "b", "c"}) CHECK(local_clustering_coefficient(g, id) == 1.0);
    CHECK(average_clustering_coefficient(g) == 1.0);
    CHECK(degree_histogram(g) == std::map<std::size_t, std::size_t>{{2, 3}});
}

TEST_CASE("star") {
    std::vector<PublicationRecord> recs;
    for (int i = 0; i < 5; ++i) recs.push_back(paper_with("p" + std::to_string(i), {"hub", "leaf" + std::to_string(i)}));
    const auto g = graph_of(recs);
    CHECK(g.edge_count() == 5);
    CHECK(local_clustering_coefficient(g, "hub") == 0.0);
    CHECK(local_clustering_coefficient(g, "leaf0") == 0.0);
    CHECK(g.degree(g.index_of("hub")) == 5);
    CHECK(code_of([&] { local_clustering_coefficient(g, "nobody"); }) == ErrorCode::NodeNotFound);
}

TEST_CASE("edge weights count shared papers and duplicate listings count once") {
    identity::MergeMap m;
    m.entries.push_back({{"a", "a2"}, "a", "A"});
    const std::vector<PublicationRecord> recs{paper_with("p1", {"a", "b"}), paper_with("p2", {"a2", "b", "a"})};
    const auto g = build_coauthor_graph(recs, identity::resolve(recs, m).profiles);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.weight(g.index_of("a"), g.index_of("b")) == 2);

    std::ostringstream out;
    write_edges(out, g);
    CHECK(out.str() == "profile_a,profile_b,weight\r\na,b,2\r\n");
}

TEST_CASE("random graphs agree with brute-force enumeration") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const auto recs = random_papers(rng, 12, 10);
        const auto g = graph_of(recs);
        const auto pairs = oracle::coauthor_pairs(recs);
        CHECK(named_edges(g) == pairs);
        double sum = 0.0;
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            const double want = oracle::clustering_coefficient(pairs, g.nodes()[i]);
            CHECK(std::fabs(local_clustering_coefficient(g, i) - want) < 1e-12);
            sum += want;
        }
        CHECK(std::fabs(average_clustering_coefficient(g) - sum / static_cast<double>(g.node_count())) < 1e-12);
    }
    CHECK(average_clustering_coefficient(CoauthorGraph{}) == 0.0);
}

TEST_CASE("bundled fixture network matches pair enumeration") {
    const auto records = load_corpus(testsupport::data_path("synth/corpus.csv")).records;
    const auto included = screening::screen(records, {}).included;
    std::ifstream min(testsupport::data_path("synth/merges.csv"));
    const auto merges = identity::parse_merges(min);
    const auto profiles = identity::resolve(included, merges).profiles;
    const auto g = build_coauthor_graph(included, profiles);
    const auto pairs = oracle::coauthor_pairs(with_profile_ids(included, merges));
    CHECK(g.node_count() == 312);
    CHECK(g.edge_count() == pairs.size());
    CHECK(named_edges(g) == pairs);
}

TEST_CASE("author-count flags on the bundled fixture") {
    const auto records = load_corpus(testsupport::data_path("synth/corpus.csv")).records;
    const auto rep = author_count_anomalies(records, 25, 5.0);
    REQUIRE(rep.flagged.size() == 2);
    std::vector<std::size_t> sizes;
    for (const auto& id : rep.flagged) {
        const auto it = std::find_if(records.begin(), records.end(), [&](const auto& r) { return r.publication_id == id; });
        sizes.push_back(it->authors.size());
    }
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{63, 161});
    REQUIRE(rep.norm_ratio.has_value());
    CHECK(*rep.norm_ratio == doctest::Approx(rep.mean_authors / 5.0));
    std::size_t total = 0;
    for (const auto& [n, c] : rep.histogram) total += c;
    CHECK(total == records.size());
    CHECK(code_of([&] { author_count_anomalies(records, 0); }) == ErrorCode::InvalidInput);
}

TEST_CASE("citation stats") {
    std::vector<PublicationRecord> three{paper_with("a", {"x"}, 0), paper_with("b", {"x"}, 41),
                                         paper_with("c", {"x"}, 100)};
    auto s = citation_stats(three);
    CHECK(s.count == 3);
    CHECK(s.total == 141);
    CHECK(s.median == 41.0);
    CHECK(s.mean == doctest::Approx(47.0));
    CHECK(s.uncited_count == 1);
    CHECK(s.low_cited_count == 1);

    three.push_back(paper_with("d", {"x"}, 9));
    s = citation_stats(three);
    CHECK(s.median == 25.0);
    CHECK(s.low_cited_count == 2);

    CHECK(code_of([] { citation_stats({}); }) == ErrorCode::EmptyCorpus);
}

TEST_CASE("citation fixture reproduces the published summary") {
    const auto records = load_corpus(testsupport::data_path("citations_138.csv")).records;
    const auto s = citation_stats(records);
    CHECK(s.count == 138);
    CHECK(s.total == 7042);
    CHECK(s.median == 41.0);
    CHECK(std::lround(s.mean) == 51);
    CHECK(s.uncited_count == 5);
    CHECK(s.low_cited_count == 17);
}
