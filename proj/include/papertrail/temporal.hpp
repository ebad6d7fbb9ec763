#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "papertrail/compositional.hpp"
#include "papertrail/hierarchical.hpp"
#include "papertrail/identity.hpp"
#include "papertrail/selection.hpp"

// End-to-end temporal publication pattern clustering: bin each profile's
// yearly counts into Before/During/After, CLR-transform the shares, cluster
// hierarchically, choose k by silhouette with the gap statistic as a check,
// and summarise clusters by their mean raw proportions.
namespace papertrail::temporal {

struct ClusterConfig {
    Linkage linkage = Linkage::Ward;
    std::size_t k_min = 2;
    std::size_t k_max = 15;
    std::size_t gap_iterations = 100;
    std::uint64_t seed = 42;
    ZeroReplacement zero_replacement{};
};

struct ClusterSolution {
    PeriodWindows windows;
    ClusterConfig config;

    std::vector<std::string> profile_ids;  // clustered profiles, input order
    std::vector<std::string> excluded_profile_ids;  // no publications in any window
    std::vector<PeriodCounts> counts;
    std::vector<Composition> raw_proportions;
    std::vector<Composition> compositions;  // after zero replacement
    std::vector<ClrVector> clr_vectors;

    Dendrogram dendrogram;
    std::vector<SilhouettePoint> silhouette_curve;
    std::vector<GapPoint> gap_curve;
    KSelection selection;

    std::size_t k = 0;
    /// 0-based; label 0 is the largest cluster.
    std::vector<int> labels;
    std::vector<double> silhouette_values;  // at the selected k
    std::vector<ClusterCentroid> centroids;  // mean raw proportions, indexed by label
};

/// Clusters pre-binned counts. Throws FewerThanTwoPoints when fewer than two
/// rows have publications and DegenerateData when all compositions coincide.
ClusterSolution cluster_period_counts(const std::vector<std::string>& ids, const std::vector<PeriodCounts>& counts,
                                      const PeriodWindows& windows, const ClusterConfig& config);

ClusterSolution run_pipeline(const std::vector<identity::ResearcherProfile>& profiles, const PeriodWindows& windows,
                             const ClusterConfig& config);

/// Relabels so that label 0 is the largest cluster; ties keep the order of
/// each cluster's first member.
std::vector<int> relabel_by_size(const std::vector<int>& labels);

}  // namespace papertrail::temporal
