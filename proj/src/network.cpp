#include "papertrail/network.hpp"

#include <algorithm>
#include <set>

#include "papertrail/csv.hpp"
#include "papertrail/error.hpp"

namespace papertrail::network {

CoauthorGraph::CoauthorGraph(std::vector<std::string> nodes,
                             std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), adjacency_(nodes_.size()) {
    for (const auto& [e, w] : edges_) {
        if (e.first >= e.second || e.second >= nodes_.size() || w == 0) {
            throw Error(ErrorCode::InvalidInput, "edges must join two distinct known nodes with positive weight");
        }
        adjacency_[e.first].push_back(e.second);
        adjacency_[e.second].push_back(e.first);
    }
    for (auto& a : adjacency_) std::sort(a.begin(), a.end());
}

std::size_t CoauthorGraph::index_of(std::string_view profile_id) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), profile_id);
    if (it == nodes_.end() || *it != profile_id) {
        throw Error(ErrorCode::NodeNotFound, "no node '" + std::string(profile_id) + "' in co-authorship graph");
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t CoauthorGraph::weight(std::size_t a, std::size_t b) const {
    const auto it = edges_.find(std::minmax(a, b));
    return it == edges_.end() ? 0 : it->second;
}

CoauthorGraph build_coauthor_graph(const std::vector<PublicationRecord>& records,
                                   const std::vector<identity::ResearcherProfile>& profiles) {
    const identity::ProfileIndex index(profiles);
    std::vector<std::vector<std::size_t>> per_record;
    std::set<std::size_t> used;
    for (const auto& r : records) {
        std::set<std::size_t> authors;
        for (const auto& m : r.authors) {
            if (const auto p = index.find(m)) authors.insert(*p);
        }
        used.insert(authors.begin(), authors.end());
        per_record.emplace_back(authors.begin(), authors.end());
    }
    // used profiles sorted by ID
    std::vector<std::size_t> order(used.begin(), used.end());
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return profiles[a].profile_id < profiles[b].profile_id; });
    std::vector<std::string> nodes;
    std::map<std::size_t, std::size_t> node_of;
    for (const auto p : order) {
        node_of[p] = nodes.size();
        nodes.push_back(profiles[p].profile_id);
    }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges;
    for (const auto& authors : per_record) {
        for (std::size_t i = 0; i < authors.size(); ++i) {
            for (std::size_t j = i + 1; j < authors.size(); ++j) {
                ++edges[std::minmax(node_of[authors[i]], node_of[authors[j]])];
            }
        }
    }
    return CoauthorGraph(std::move(nodes), std::move(edges));
}

double local_clustering_coefficient(const CoauthorGraph& graph, std::size_t node) {
    if (node >= graph.node_count()) throw Error(ErrorCode::NodeNotFound, "node index out of range");
    const auto& nb = graph.neighbours(node);
    const std::size_t deg = nb.size();
    if (deg < 2) return 0.0;
    std::size_t links = 0;
    for (std::size_t i = 0; i < deg; ++i) {
        const auto& ni = graph.neighbours(nb[i]);
        for (std::size_t j = i + 1; j < deg; ++j) {
            if (std::binary_search(ni.begin(), ni.end(), nb[j])) ++links;
        }
    }
    return 2.0 * static_cast<double>(links) / (static_cast<double>(deg) * static_cast<double>(deg - 1));
}

double local_clustering_coefficient(const CoauthorGraph& graph, std::string_view profile_id) {
    return local_clustering_coefficient(graph, graph.index_of(profile_id));
}

double average_clustering_coefficient(const CoauthorGraph& graph) {
    if (graph.node_count() == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < graph.node_count(); ++i) sum += local_clustering_coefficient(graph, i);
    return sum / static_cast<double>(graph.node_count());
}

std::map<std::size_t, std::size_t> degree_histogram(const CoauthorGraph& graph) {
    std::map<std::size_t, std::size_t> out;
    for (std::size_t i = 0; i < graph.node_count(); ++i) ++out[graph.degree(i)];
    return out;
}

void write_edges(std::ostream& out, const CoauthorGraph& graph) {
    csv::write_row(out, {"profile_a", "profile_b", "weight"});
    for (const auto& [e, w] : graph.edges()) {
        csv::write_row(out, {graph.nodes()[e.first], graph.nodes()[e.second], std::to_string(w)});
    }
}

CitationStats citation_stats(const std::vector<PublicationRecord>& records) {
    if (records.empty()) throw Error(ErrorCode::EmptyCorpus, "citation statistics need at least one record");
    std::vector<std::int64_t> cited;
    cited.reserve(records.size());
    CitationStats s;
    s.count = records.size();
    for (const auto& r : records) {
        cited.push_back(r.times_cited);
        s.total += r.times_cited;
        if (r.times_cited == 0) ++s.uncited_count;
        if (r.times_cited < kLowCitedBelow) ++s.low_cited_count;
    }
    std::sort(cited.begin(), cited.end());
    const std::size_t n = cited.size();
    s.median = n % 2 == 1 ? static_cast<double>(cited[n / 2])
                          : (static_cast<double>(cited[n / 2 - 1]) + static_cast<double>(cited[n / 2])) / 2.0;
    s.mean = static_cast<double>(s.total) / static_cast<double>(n);
    return s;
}

AuthorCountReport author_count_anomalies(const std::vector<PublicationRecord>& records, std::size_t threshold,
                                         std::optional<double> field_norm) {
    if (threshold < 1) throw Error(ErrorCode::InvalidInput, "author-count threshold must be at least 1");
    if (field_norm && !(*field_norm > 0.0)) throw Error(ErrorCode::InvalidInput, "field norm must be positive");
    AuthorCountReport rep;
    rep.threshold = threshold;
    rep.field_norm = field_norm;
    std::size_t mentions = 0;
    for (const auto& r : records) {
        const std::size_t n = r.authors.size();
        mentions += n;
        ++rep.histogram[n];
        if (n > threshold) rep.flagged.push_back(r.publication_id);
    }
    if (!records.empty()) rep.mean_authors = static_cast<double>(mentions) / static_cast<double>(records.size());
    if (field_norm && !records.empty()) rep.norm_ratio = rep.mean_authors / *field_norm;
    return rep;
}

}  // namespace papertrail::network
