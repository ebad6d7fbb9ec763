#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Compositional view of publication activity: per-period counts, proportions,
// zero replacement and the centered log-ratio transform.
namespace papertrail::temporal {

enum class Period { Before = 0, During = 1, After = 2 };

inline constexpr std::size_t kPeriodCount = 3;

std::string_view to_string(Period p) noexcept;

struct YearRange {
    int first = 0;
    int last = 0;

    bool operator==(const YearRange&) const = default;
};

/// Three contiguous windows. Before is open to the left and After open to the
/// right, so every year lands in exactly one window.
struct PeriodWindows {
    YearRange before{2015, 2018};
    YearRange during{2019, 2022};
    YearRange after{2023, 2025};

    /// Throws InvalidInput unless the ranges are ordered, non-empty and contiguous.
    void validate() const;

    [[nodiscard]] Period classify(int year) const;

    /// Parses "2015-2018,2019-2022,2023-2025".
    static PeriodWindows parse(std::string_view text);
    [[nodiscard]] std::string to_string() const;

    bool operator==(const PeriodWindows&) const = default;
};

using PeriodCounts = std::array<long long, kPeriodCount>;

/// Throws InvalidInput on a negative count. A profile with no publications
/// yields all zeros; to_composition() rejects it with AllZero.
PeriodCounts bin_counts(const std::map<int, long long>& pubs_by_year, const PeriodWindows& windows);

/// Proportions that sum to one. Parts are strictly positive once produced by
/// to_composition(); raw_proportions() keeps structural zeros.
struct Composition {
    std::vector<double> parts;

    bool operator==(const Composition&) const = default;
};

struct ClrVector {
    std::vector<double> coords;

    bool operator==(const ClrVector&) const = default;
};

/// Multiplicative replacement: each zero becomes delta = fraction / total
/// (half a publication by default), nonzero parts are scaled by 1 - z * delta.
/// delta is capped at fraction / z so nonzero parts keep at least half their mass.
struct ZeroReplacement {
    double fraction = 0.5;
};

/// Counts divided by their total. Throws AllZero when the total is zero.
Composition raw_proportions(std::span<const long long> counts);

Composition to_composition(std::span<const long long> counts, ZeroReplacement strategy = {});

/// z_i = ln(c_i) - mean_j ln(c_j). Throws NonPositiveComponent.
ClrVector clr(const Composition& c);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Dense symmetric matrix with a zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    /// Pairwise Euclidean distances between equally sized points.
    static DistanceMatrix euclidean(const std::vector<std::vector<double>>& points);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

    /// Throws InvalidInput unless symmetric with a zero diagonal and no negative entries.
    void validate() const;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

}  // namespace papertrail::temporal
