#include "papertrail/temporal.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "papertrail/error.hpp"

namespace papertrail::temporal {

std::vector<int> relabel_by_size(const std::vector<int>& labels) {
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto l = static_cast<std::size_t>(labels[i]);
        if (l >= sizes.size()) {
            sizes.resize(l + 1, 0);
            first.resize(l + 1, labels.size());
        }
        ++sizes[l];
        first[l] = std::min(first[l], i);
    }
    std::vector<std::size_t> order(sizes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
        return first[a] < first[b];
    });
    std::vector<int> remap(sizes.size());
    for (std::size_t r = 0; r < order.size(); ++r) remap[order[r]] = static_cast<int>(r);
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = remap[static_cast<std::size_t>(labels[i])];
    return out;
}

ClusterSolution cluster_period_counts(const std::vector<std::string>& ids, const std::vector<PeriodCounts>& counts,
                                      const PeriodWindows& windows, const ClusterConfig& config) {
    if (ids.size() != counts.size()) throw Error(ErrorCode::InvalidInput, "ids and counts differ in size");
    windows.validate();
    ClusterSolution s;
    s.windows = windows;
    s.config = config;

    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto& c = counts[i];
        if (c[0] + c[1] + c[2] == 0) {
            s.excluded_profile_ids.push_back(ids[i]);
            continue;
        }
        s.profile_ids.push_back(ids[i]);
        s.counts.push_back(c);
        s.raw_proportions.push_back(raw_proportions(c));
        s.compositions.push_back(to_composition(c, config.zero_replacement));
        s.clr_vectors.push_back(clr(s.compositions.back()));
    }
    if (s.profile_ids.size() < 2) {
        throw Error(ErrorCode::FewerThanTwoPoints, "need at least two profiles with publications to cluster");
    }

    std::vector<std::vector<double>> points;
    points.reserve(s.clr_vectors.size());
    for (const auto& z : s.clr_vectors) points.push_back(z.coords);
    const std::size_t distinct = std::set<std::vector<double>>(points.begin(), points.end()).size();
    if (distinct < 2) throw Error(ErrorCode::DegenerateData, "all profiles share one composition");

    const std::size_t k_lo = std::max<std::size_t>(config.k_min, 2);
    const std::size_t k_hi = std::min(config.k_max, distinct);
    if (k_lo > k_hi) throw Error(ErrorCode::KOutOfRange, "empty k range");

    const auto distances = DistanceMatrix::euclidean(points);
    s.dendrogram = agglomerate(distances, config.linkage);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        s.silhouette_curve.push_back({k, silhouette(cut_tree(s.dendrogram, k), distances).average});
    }
    s.gap_curve = gap_statistic(points, GapOptions{k_lo, k_hi, config.gap_iterations, config.seed, config.linkage});
    s.selection = select_k(s.silhouette_curve, s.gap_curve);
    s.k = s.selection.k;
    s.labels = relabel_by_size(cut_tree(s.dendrogram, s.k));
    s.silhouette_values = silhouette(s.labels, distances).values;
    s.centroids = cluster_centroids(s.labels, s.raw_proportions);
    return s;
}

ClusterSolution run_pipeline(const std::vector<identity::ResearcherProfile>& profiles, const PeriodWindows& windows,
                             const ClusterConfig& config) {
    std::vector<std::string> ids;
    std::vector<PeriodCounts> counts;
    ids.reserve(profiles.size());
    counts.reserve(profiles.size());
    for (const auto& p : profiles) {
        ids.push_back(p.profile_id);
        counts.push_back(bin_counts(p.pubs_by_year, windows));
    }
    return cluster_period_counts(ids, counts, windows, config);
}

}  // namespace papertrail::temporal
