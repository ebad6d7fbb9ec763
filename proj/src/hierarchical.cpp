#include "papertrail/hierarchical.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "papertrail/error.hpp"
#include "papertrail/text.hpp"

namespace papertrail::temporal {

std::string_view to_string(Linkage l) noexcept {
    switch (l) {
        case Linkage::Ward: return "ward";
        case Linkage::Complete: return "complete";
        case Linkage::Average: return "average";
    }
    return "ward";
}

Linkage parse_linkage(std::string_view name) {
    const auto n = text::to_lower(text::trim(name));
    if (n == "ward") return Linkage::Ward;
    if (n == "complete") return Linkage::Complete;
    if (n == "average") return Linkage::Average;
    throw Error(ErrorCode::InvalidInput, "unknown linkage '" + std::string(name) + "'");
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Clusters live in the slot of their smallest leaf, so slot order is the
// tie-breaking order. Each row caches its nearest active neighbour j > i.
class Agglomerator {
public:
    Agglomerator(const DistanceMatrix& m, Linkage linkage)
        : n_(m.size()), linkage_(linkage), d_(n_ * n_), active_(n_, true), size_(n_, 1), node_(n_),
          nn_(n_, kNone), nnd_(n_, kInf) {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                const double v = m(i, j);
                d_[i * n_ + j] = linkage_ == Linkage::Ward ? v * v : v;
            }
        }
        std::iota(node_.begin(), node_.end(), std::size_t{0});
        for (std::size_t i = 0; i < n_; ++i) refresh(i);
    }

    Dendrogram run() {
        Dendrogram tree;
        tree.leaf_count = n_;
        tree.merges.reserve(n_ - 1);
        for (std::size_t step = 0; step + 1 < n_; ++step) {
            std::size_t a = kNone;
            double best = kInf;
            for (std::size_t i = 0; i < n_; ++i) {
                if (active_[i] && nn_[i] != kNone && (a == kNone || nnd_[i] < best)) {
                    a = i;
                    best = nnd_[i];
                }
            }
            const std::size_t b = nn_[a];
            const double height = linkage_ == Linkage::Ward ? std::sqrt(std::max(0.0, best)) : best;
            tree.merges.push_back({node_[a], node_[b], height, size_[a] + size_[b]});
            merge(a, b);
            node_[a] = n_ + step;
        }
        return tree;
    }

private:
    double& at(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }

    void refresh(std::size_t i) {
        nn_[i] = kNone;
        nnd_[i] = kInf;
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (active_[j] && (nn_[i] == kNone || at(i, j) < nnd_[i])) {
                nn_[i] = j;
                nnd_[i] = at(i, j);
            }
        }
    }

    void merge(std::size_t a, std::size_t b) {
        const double na = static_cast<double>(size_[a]);
        const double nb = static_cast<double>(size_[b]);
        const double dab = at(a, b);
        for (std::size_t k = 0; k < n_; ++k) {
            if (!active_[k] || k == a || k == b) continue;
            const double nk = static_cast<double>(size_[k]);
            double v = 0.0;
            switch (linkage_) {
                case Linkage::Ward:
                    v = ((na + nk) * at(k, a) + (nb + nk) * at(k, b) - nk * dab) / (na + nb + nk);
                    break;
                case Linkage::Complete:
                    v = std::max(at(k, a), at(k, b));
                    break;
                case Linkage::Average:
                    v = (na * at(k, a) + nb * at(k, b)) / (na + nb);
                    break;
            }
            at(k, a) = v;
            at(a, k) = v;
        }
        active_[b] = false;
        size_[a] += size_[b];

        for (std::size_t i = 0; i < a; ++i) {
            if (!active_[i]) continue;
            if (nn_[i] == a || nn_[i] == b) {
                refresh(i);
            } else if (at(i, a) < nnd_[i] || (at(i, a) == nnd_[i] && a < nn_[i])) {
                nn_[i] = a;
                nnd_[i] = at(i, a);
            }
        }
        refresh(a);
        for (std::size_t i = a + 1; i < b; ++i) {
            if (active_[i] && nn_[i] == b) refresh(i);
        }
    }

    std::size_t n_;
    Linkage linkage_;
    std::vector<double> d_;
    std::vector<bool> active_;
    std::vector<std::size_t> size_;
    std::vector<std::size_t> node_;
    std::vector<std::size_t> nn_;
    std::vector<double> nnd_;
};

}  // namespace

Dendrogram agglomerate(const DistanceMatrix& distances, Linkage linkage) {
    if (distances.size() < 2) throw Error(ErrorCode::FewerThanTwoPoints, "need at least two points to cluster");
    return Agglomerator(distances, linkage).run();
}

std::vector<int> cut_tree(const Dendrogram& tree, std::size_t k) {
    const std::size_t n = tree.leaf_count;
    if (k < 1 || k > n) {
        throw Error(ErrorCode::KOutOfRange, "k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    // parent over leaves and internal nodes
    std::vector<std::size_t> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i + k < n; ++i) {
        const auto& m = tree.merges[i];
        parent[find(m.left)] = n + i;
        parent[find(m.right)] = n + i;
    }
    std::vector<int> labels(n, -1);
    std::vector<int> label_of_root(2 * n - 1, -1);
    int next = 0;
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        const auto r = find(leaf);
        if (label_of_root[r] < 0) label_of_root[r] = next++;
        labels[leaf] = label_of_root[r];
    }
    return labels;
}

}  // namespace papertrail::temporal
