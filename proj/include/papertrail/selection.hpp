#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "papertrail/compositional.hpp"
#include "papertrail/hierarchical.hpp"

namespace papertrail::temporal {

struct SilhouetteResult {
    std::vector<double> values;  // per point, in [-1, 1]
    double average = 0.0;
};

/// s(i) = (b - a) / max(a, b); points alone in their cluster score 0.
/// Labels must be 0..k-1 with every cluster non-empty. Throws SingleCluster
/// when fewer than two clusters are present.
SilhouetteResult silhouette(const std::vector<int>& labels, const DistanceMatrix& distances);

/// Pooled within-cluster sum of squared distances to the cluster centroids.
double within_dispersion(const std::vector<std::vector<double>>& points, const std::vector<int>& labels);

/// Deterministic stream for Monte Carlo replicate `replicate` of run `seed`.
std::mt19937_64 replicate_engine(std::uint64_t seed, std::uint64_t replicate);

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
/// sequence does not depend on the standard library's distributions.
double uniform01(std::mt19937_64& engine);

/// Reference sample for replicate `replicate`: as many points as `points`,
/// uniform over the per-dimension bounding box of `points`.
std::vector<std::vector<double>> reference_sample(const std::vector<std::vector<double>>& points, std::uint64_t seed,
                                                  std::uint64_t replicate);

struct GapOptions {
    std::size_t k_min = 2;
    std::size_t k_max = 15;
    std::size_t iterations = 100;
    std::uint64_t seed = 42;
    Linkage linkage = Linkage::Ward;
};

struct GapPoint {
    std::size_t k = 0;
    double log_w = 0.0;           // ln W_k on the data
    double expected_log_w = 0.0;  // mean over replicates of ln W*_k
    double gap = 0.0;
    double standard_error = 0.0;  // sd(ln W*_k) * sqrt(1 + 1/B)

    bool operator==(const GapPoint&) const = default;
};

/// Gap curve for k in [k_min, min(k_max, n)] using the same hierarchical
/// procedure on the data and on each reference sample. Throws DegenerateData
/// unless at least two distinct points are present.
std::vector<GapPoint> gap_statistic(const std::vector<std::vector<double>>& points, const GapOptions& options);

/// Smallest k with gap(k) >= gap(k+1) - s(k+1); the largest k when none qualifies.
std::size_t gap_criterion(const std::vector<GapPoint>& curve);

struct SilhouettePoint {
    std::size_t k = 0;
    double average = 0.0;

    bool operator==(const SilhouettePoint&) const = default;
};

struct KSelection {
    std::size_t k = 0;
    std::size_t gap_k = 0;
    bool agreement = false;
};

/// k maximizing average silhouette (smallest k on ties); agreement is set when
/// the gap criterion picks the same k. Throws EmptyCurves.
KSelection select_k(const std::vector<SilhouettePoint>& silhouette_curve, const std::vector<GapPoint>& gap_curve);

struct ClusterCentroid {
    int label = 0;
    Composition centroid;
    std::size_t size = 0;
    double percentage = 0.0;  // exact; round only for display
};

/// Arithmetic mean of member compositions per label 0..max. Throws
/// EmptyCluster when a label in that range has no members.
std::vector<ClusterCentroid> cluster_centroids(const std::vector<int>& labels,
                                               const std::vector<Composition>& compositions);

/// Chance-corrected agreement between two partitions of the same points.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace papertrail::temporal
