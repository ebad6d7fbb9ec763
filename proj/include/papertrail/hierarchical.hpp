#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "papertrail/compositional.hpp"

namespace papertrail::temporal {

enum class Linkage { Ward, Complete, Average };

std::string_view to_string(Linkage l) noexcept;
Linkage parse_linkage(std::string_view name);

/// One agglomeration step. Leaves are nodes 0..n-1; merge i creates node n+i.
/// `left` is the child holding the smaller leaf index.
struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
    std::size_t size = 0;

    bool operator==(const Merge&) const = default;
};

struct Dendrogram {
    std::size_t leaf_count = 0;
    std::vector<Merge> merges;  // leaf_count - 1 entries, in merge order
};

/// Agglomerative clustering with Lance-Williams updates. Ward works on squared
/// distances and reports sqrt heights. Among equal-distance candidates the
/// pair with the smallest (min leaf, min leaf) of the two clusters merges first.
/// Throws FewerThanTwoPoints.
Dendrogram agglomerate(const DistanceMatrix& distances, Linkage linkage);

/// Labels 0..k-1 after undoing the last k-1 merges, numbered in order of each
/// cluster's smallest leaf. Throws KOutOfRange unless 1 <= k <= n.
std::vector<int> cut_tree(const Dendrogram& tree, std::size_t k);

}  // namespace papertrail::temporal
