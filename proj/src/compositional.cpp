#include "papertrail/compositional.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "papertrail/error.hpp"
#include "papertrail/text.hpp"

namespace papertrail::temporal {

std::string_view to_string(Period p) noexcept {
    switch (p) {
        case Period::Before: return "Before";
        case Period::During: return "During";
        case Period::After: return "After";
    }
    return "During";
}

void PeriodWindows::validate() const {
    for (const auto& r : {before, during, after}) {
        if (r.first > r.last) throw Error(ErrorCode::InvalidInput, "empty period window in " + to_string());
    }
    if (before.last + 1 != during.first || during.last + 1 != after.first) {
        throw Error(ErrorCode::InvalidInput, "period windows must be ordered and contiguous: " + to_string());
    }
}

Period PeriodWindows::classify(int year) const {
    if (year <= before.last) return Period::Before;
    if (year >= after.first) return Period::After;
    return Period::During;
}

PeriodWindows PeriodWindows::parse(std::string_view s) {
    const auto parts = text::split_list(s, ',');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidInput, "expected three windows, got '" + std::string(s) + "'");
    std::array<YearRange, 3> ranges;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto p = text::trim(parts[i]);
        const auto dash = p.find('-', 1);
        if (dash == std::string_view::npos) throw Error(ErrorCode::InvalidInput, "bad window '" + std::string(p) + "'");
        const auto a = text::trim(p.substr(0, dash));
        const auto b = text::trim(p.substr(dash + 1));
        auto r1 = std::from_chars(a.data(), a.data() + a.size(), ranges[i].first);
        auto r2 = std::from_chars(b.data(), b.data() + b.size(), ranges[i].last);
        if (r1.ec != std::errc{} || r2.ec != std::errc{} || r1.ptr != a.data() + a.size() || r2.ptr != b.data() + b.size())
            throw Error(ErrorCode::InvalidInput, "bad window '" + std::string(p) + "'");
    }
    PeriodWindows w{ranges[0], ranges[1], ranges[2]};
    w.validate();
    return w;
}

std::string PeriodWindows::to_string() const {
    const auto r = [](const YearRange& y) { return std::to_string(y.first) + "-" + std::to_string(y.last); };
    return r(before) + "," + r(during) + "," + r(after);
}

PeriodCounts bin_counts(const std::map<int, long long>& pubs_by_year, const PeriodWindows& windows) {
    PeriodCounts out{0, 0, 0};
    for (const auto& [year, n] : pubs_by_year) {
        if (n < 0) throw Error(ErrorCode::InvalidInput, "negative publication count for " + std::to_string(year));
        out[static_cast<std::size_t>(windows.classify(year))] += n;
    }
    return out;
}

Composition raw_proportions(std::span<const long long> counts) {
    long long total = 0;
    for (const auto c : counts) {
        if (c < 0) throw Error(ErrorCode::InvalidInput, "negative count");
        total += c;
    }
    if (total == 0) throw Error(ErrorCode::AllZero, "no publications in any period");
    Composition c;
    c.parts.reserve(counts.size());
    for (const auto n : counts) c.parts.push_back(static_cast<double>(n) / static_cast<double>(total));
    return c;
}

Composition to_composition(std::span<const long long> counts, ZeroReplacement strategy) {
    Composition c = raw_proportions(counts);
    const auto zeros = static_cast<std::size_t>(std::count(counts.begin(), counts.end(), 0LL));
    if (zeros == 0) return c;
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const double delta = std::min(strategy.fraction / total, strategy.fraction / static_cast<double>(zeros));
    const double scale = 1.0 - static_cast<double>(zeros) * delta;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        c.parts[i] = counts[i] == 0 ? delta : c.parts[i] * scale;
    }
    return c;
}

ClrVector clr(const Composition& c) {
    ClrVector z;
    z.coords.reserve(c.parts.size());
    double mean = 0.0;
    for (const double p : c.parts) {
        if (!(p > 0.0)) throw Error(ErrorCode::NonPositiveComponent, "clr needs strictly positive parts");
        z.coords.push_back(std::log(p));
        mean += z.coords.back();
    }
    mean /= static_cast<double>(c.parts.size());
    for (auto& v : z.coords) v -= mean;
    return z;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

DistanceMatrix DistanceMatrix::euclidean(const std::vector<std::vector<double>>& points) {
    DistanceMatrix m(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) m.set(i, j, euclidean_distance(points[i], points[j]));
    }
    return m;
}

void DistanceMatrix::validate() const {
    for (std::size_t i = 0; i < n_; ++i) {
        if ((*this)(i, i) != 0.0) throw Error(ErrorCode::InvalidInput, "distance matrix diagonal must be zero");
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double v = (*this)(i, j);
            if (v != (*this)(j, i) || !(v >= 0.0)) throw Error(ErrorCode::InvalidInput, "distance matrix must be symmetric and non-negative");
        }
    }
}

}  // namespace papertrail::temporal
