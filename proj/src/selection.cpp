#include "papertrail/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "papertrail/error.hpp"

namespace papertrail::temporal {

namespace {

std::size_t cluster_count(const std::vector<int>& labels) {
    int k = 0;
    for (const int l : labels) {
        if (l < 0) throw Error(ErrorCode::InvalidInput, "negative cluster label");
        k = std::max(k, l + 1);
    }
    return static_cast<std::size_t>(k);
}

std::size_t distinct_points(const std::vector<std::vector<double>>& points) {
    std::set<std::vector<double>> seen(points.begin(), points.end());
    return seen.size();
}

std::vector<double> log_dispersions(const std::vector<std::vector<double>>& points, std::size_t k_min,
                                    std::size_t k_max, Linkage linkage) {
    const auto tree = agglomerate(DistanceMatrix::euclidean(points), linkage);
    std::vector<double> out;
    out.reserve(k_max - k_min + 1);
    for (std::size_t k = k_min; k <= k_max; ++k) out.push_back(std::log(within_dispersion(points, cut_tree(tree, k))));
    return out;
}

}  // namespace

SilhouetteResult silhouette(const std::vector<int>& labels, const DistanceMatrix& distances) {
    const std::size_t n = labels.size();
    if (distances.size() != n) throw Error(ErrorCode::InvalidInput, "labels and distance matrix differ in size");
    const std::size_t k = cluster_count(labels);
    std::vector<std::size_t> sizes(k, 0);
    for (const int l : labels) ++sizes[static_cast<std::size_t>(l)];
    if (std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; }) < 2) {
        throw Error(ErrorCode::SingleCluster, "silhouette needs at least two non-empty clusters");
    }
    if (std::find(sizes.begin(), sizes.end(), std::size_t{0}) != sizes.end()) {
        throw Error(ErrorCode::InvalidInput, "cluster labels must be contiguous from 0");
    }

    SilhouetteResult r;
    r.values.resize(n, 0.0);
    std::vector<double> sums(k);
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(labels[i]);
        if (sizes[own] == 1) continue;
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) sums[static_cast<std::size_t>(labels[j])] += distances(i, j);
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c != own) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
        }
        const double denom = std::max(a, b);
        r.values[i] = denom > 0.0 ? (b - a) / denom : 0.0;
    }
    double total = 0.0;
    for (const double v : r.values) total += v;
    r.average = total / static_cast<double>(n);
    return r;
}

double within_dispersion(const std::vector<std::vector<double>>& points, const std::vector<int>& labels) {
    if (points.size() != labels.size()) throw Error(ErrorCode::InvalidInput, "points and labels differ in size");
    if (points.empty()) return 0.0;
    const std::size_t k = cluster_count(labels);
    const std::size_t dim = points.front().size();
    std::vector<std::vector<double>> centroid(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        ++sizes[c];
        for (std::size_t d = 0; d < dim; ++d) centroid[c][d] += points[i][d];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] == 0) continue;
        for (auto& v : centroid[c]) v /= static_cast<double>(sizes[c]);
    }
    double w = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& c = centroid[static_cast<std::size_t>(labels[i])];
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = points[i][d] - c[d];
            w += diff * diff;
        }
    }
    return w;
}

std::mt19937_64 replicate_engine(std::uint64_t seed, std::uint64_t replicate) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate & 0xffffffffu), static_cast<std::uint32_t>(replicate >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

std::vector<std::vector<double>> reference_sample(const std::vector<std::vector<double>>& points, std::uint64_t seed,
                                                  std::uint64_t replicate) {
    if (points.empty()) return {};
    const std::size_t dim = points.front().size();
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    for (const auto& p : points) {
        for (std::size_t d = 0; d < dim; ++d) {
            lo[d] = std::min(lo[d], p[d]);
            hi[d] = std::max(hi[d], p[d]);
        }
    }
    auto engine = replicate_engine(seed, replicate);
    std::vector<std::vector<double>> out(points.size(), std::vector<double>(dim));
    for (auto& p : out) {
        for (std::size_t d = 0; d < dim; ++d) p[d] = lo[d] + (hi[d] - lo[d]) * uniform01(engine);
    }
    return out;
}

std::vector<GapPoint> gap_statistic(const std::vector<std::vector<double>>& points, const GapOptions& options) {
    const std::size_t distinct = distinct_points(points);
    if (distinct < 2) throw Error(ErrorCode::DegenerateData, "gap statistic needs at least two distinct points");
    if (options.iterations < 1) throw Error(ErrorCode::InvalidInput, "gap statistic needs at least one reference sample");
    const std::size_t k_min = std::max<std::size_t>(options.k_min, 1);
    // Past the number of distinct points the data dispersion is zero.
    const std::size_t k_max = std::min(options.k_max, distinct);
    if (k_min > k_max) throw Error(ErrorCode::KOutOfRange, "empty k range for gap statistic");

    const auto data_log_w = log_dispersions(points, k_min, k_max, options.linkage);
    const std::size_t span = k_max - k_min + 1;
    const auto b_count = static_cast<double>(options.iterations);
    std::vector<std::vector<double>> ref_log_w(options.iterations);
    for (std::size_t b = 0; b < options.iterations; ++b) {
        ref_log_w[b] = log_dispersions(reference_sample(points, options.seed, b), k_min, k_max, options.linkage);
    }

    std::vector<GapPoint> curve;
    curve.reserve(span);
    for (std::size_t i = 0; i < span; ++i) {
        double mean = 0.0;
        for (const auto& r : ref_log_w) mean += r[i];
        mean /= b_count;
        double var = 0.0;
        for (const auto& r : ref_log_w) var += (r[i] - mean) * (r[i] - mean);
        var /= b_count;
        GapPoint g;
        g.k = k_min + i;
        g.log_w = data_log_w[i];
        g.expected_log_w = mean;
        g.gap = mean - data_log_w[i];
        g.standard_error = std::sqrt(var) * std::sqrt(1.0 + 1.0 / b_count);
        curve.push_back(g);
    }
    return curve;
}

std::size_t gap_criterion(const std::vector<GapPoint>& curve) {
    if (curve.empty()) throw Error(ErrorCode::EmptyCurves, "empty gap curve");
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        if (curve[i].gap >= curve[i + 1].gap - curve[i + 1].standard_error) return curve[i].k;
    }
    return curve.back().k;
}

KSelection select_k(const std::vector<SilhouettePoint>& silhouette_curve, const std::vector<GapPoint>& gap_curve) {
    if (silhouette_curve.empty() || gap_curve.empty()) throw Error(ErrorCode::EmptyCurves, "select_k needs both curves");
    KSelection s;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : silhouette_curve) {
        if (p.average > best || (p.average == best && p.k < s.k)) {
            best = p.average;
            s.k = p.k;
        }
    }
    s.gap_k = gap_criterion(gap_curve);
    s.agreement = s.gap_k == s.k;
    return s;
}

std::vector<ClusterCentroid> cluster_centroids(const std::vector<int>& labels,
                                               const std::vector<Composition>& compositions) {
    if (labels.size() != compositions.size()) throw Error(ErrorCode::InvalidInput, "labels and compositions differ in size");
    if (labels.empty()) return {};
    const std::size_t k = cluster_count(labels);
    const std::size_t dim = compositions.front().parts.size();
    std::vector<ClusterCentroid> out(k);
    for (std::size_t c = 0; c < k; ++c) {
        out[c].label = static_cast<int>(c);
        out[c].centroid.parts.assign(dim, 0.0);
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto& c = out[static_cast<std::size_t>(labels[i])];
        ++c.size;
        for (std::size_t d = 0; d < dim; ++d) c.centroid.parts[d] += compositions[i].parts[d];
    }
    for (auto& c : out) {
        if (c.size == 0) throw Error(ErrorCode::EmptyCluster, "cluster " + std::to_string(c.label) + " has no members");
        for (auto& v : c.centroid.parts) v /= static_cast<double>(c.size);
        c.percentage = 100.0 * static_cast<double>(c.size) / static_cast<double>(labels.size());
    }
    return out;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "partitions differ in size");
    const auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> rows;
    std::map<int, double> cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }
    double index = 0.0;
    for (const auto& [key, n] : joint) index += choose2(n);
    double sum_rows = 0.0;
    for (const auto& [key, n] : rows) sum_rows += choose2(n);
    double sum_cols = 0.0;
    for (const auto& [key, n] : cols) sum_cols += choose2(n);
    const double total = choose2(static_cast<double>(a.size()));
    if (total == 0.0) return 1.0;
    const double expected = sum_rows * sum_cols / total;
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return index == max_index ? 1.0 : 0.0;
    return (index - expected) / (max_index - expected);
}

}  // namespace papertrail::temporal
