#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "papertrail/corpus.hpp"
#include "papertrail/identity.hpp"

namespace papertrail::network {

/// Undirected co-authorship graph over profile IDs. Node indices follow the
/// sorted order of profile IDs; edge weight is the number of shared papers.
class CoauthorGraph {
public:
    CoauthorGraph() = default;
    CoauthorGraph(std::vector<std::string> nodes, std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges);

    [[nodiscard]] const std::vector<std::string>& nodes() const { return nodes_; }
    /// Keyed by (a, b) with a < b.
    [[nodiscard]] const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& edges() const { return edges_; }
    [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }

    /// Throws NodeNotFound.
    [[nodiscard]] std::size_t index_of(std::string_view profile_id) const;
    [[nodiscard]] const std::vector<std::size_t>& neighbours(std::size_t node) const { return adjacency_.at(node); }
    [[nodiscard]] std::size_t degree(std::size_t node) const { return adjacency_.at(node).size(); }
    [[nodiscard]] std::size_t weight(std::size_t a, std::size_t b) const;

private:
    std::vector<std::string> nodes_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;  // sorted
};

/// Nodes are the profiles listed on at least one record. Mentions that do not
/// resolve to a profile are skipped; a profile listed twice on one paper counts once.
CoauthorGraph build_coauthor_graph(const std::vector<PublicationRecord>& records,
                                   const std::vector<identity::ResearcherProfile>& profiles);

/// 2T / (deg (deg - 1)); 0 when deg < 2.
double local_clustering_coefficient(const CoauthorGraph& graph, std::size_t node);
/// Throws NodeNotFound.
double local_clustering_coefficient(const CoauthorGraph& graph, std::string_view profile_id);
/// Mean of the local coefficients; 0 for an empty graph.
double average_clustering_coefficient(const CoauthorGraph& graph);

/// degree -> number of nodes with that degree
std::map<std::size_t, std::size_t> degree_histogram(const CoauthorGraph& graph);

/// edges.csv with columns profile_a, profile_b, weight, in node order.
void write_edges(std::ostream& out, const CoauthorGraph& graph);

struct CitationStats {
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    std::int64_t total = 0;
    std::size_t uncited_count = 0;
    std::size_t low_cited_count = 0;  // fewer than kLowCitedBelow
};

inline constexpr std::int64_t kLowCitedBelow = 10;

/// Throws EmptyCorpus.
CitationStats citation_stats(const std::vector<PublicationRecord>& records);

struct AuthorCountReport {
    std::size_t threshold = 0;
    std::optional<double> field_norm;
    std::map<std::size_t, std::size_t> histogram;  // author count -> records
    std::vector<std::string> flagged;  // publication IDs with more than threshold authors, corpus order
    double mean_authors = 0.0;
    /// mean_authors / field_norm when a norm is supplied
    std::optional<double> norm_ratio;
};

/// Throws InvalidInput when threshold is 0.
AuthorCountReport author_count_anomalies(const std::vector<PublicationRecord>& records, std::size_t threshold,
                                         std::optional<double> field_norm = std::nullopt);

}  // namespace papertrail::network
