#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "papertrail/compositional.hpp"
#include "expect.hpp"

using namespace papertrail;
using namespace papertrail::temporal;
using testsupport::code_of;

namespace {

std::vector<double> random_composition(std::mt19937_64& rng, std::size_t d) {
    std::uniform_real_distribution<double> u(0.001, 1.0);
    std::vector<double> x(d);
    for (auto& v : x) v = u(rng);
    const double s = std::accumulate(x.begin(), x.end(), 0.0);
    for (auto& v : x) v /= s;
    return x;
}

}  // namespace

TEST_CASE("period windows") {
    const PeriodWindows w;
    CHECK(w.classify(2018) == Period::Before);
    CHECK(w.classify(2019) == Period::During);
    CHECK(w.classify(2022) == Period::During);
    CHECK(w.classify(2023) == Period::After);
    CHECK(w.classify(1990) == Period::Before);
    CHECK(w.classify(2040) == Period::After);
    CHECK(w.to_string() == "2015-2018,2019-2022,2023-2025");
    CHECK(PeriodWindows::parse("2015-2018,2019-2022,2023-2025") == w);
    CHECK(PeriodWindows::parse(" 2010-2014 , 2015-2016 , 2017-2020 ").during == YearRange{2015, 2016});
    CHECK(code_of([] { PeriodWindows::parse("2015-2018,2019-2022,2022-2025"); }) == ErrorCode::InvalidInput);
    CHECK(code_of([] { PeriodWindows::parse("2015-2018,2020-2022,2023-2025"); }) == ErrorCode::InvalidInput);
    CHECK(code_of([] { PeriodWindows::parse("2015-2018,2019-2022"); }) == ErrorCode::InvalidInput);
    CHECK(code_of([] { PeriodWindows::parse("2018-2015,2019-2022,2023-2025"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("bin_counts") {
    const PeriodWindows w;
    CHECK(bin_counts({{2016, 1}, {2020, 3}, {2024, 1}}, w) == PeriodCounts{1, 3, 1});
    CHECK(bin_counts({{2014, 2}, {2020, 1}}, w) == PeriodCounts{2, 1, 0});
    CHECK(bin_counts({{2022, 1}}, w) == PeriodCounts{0, 1, 0});
    CHECK(bin_counts({{2030, 4}}, w) == PeriodCounts{0, 0, 4});
    CHECK(bin_counts({}, w) == PeriodCounts{0, 0, 0});
    CHECK(code_of([&] { bin_counts({{2020, -1}}, w); }) == ErrorCode::InvalidInput);
}

TEST_CASE("to_composition") {
    const std::vector<long long> even{1, 1, 1};
    for (const double p : to_composition(even).parts) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(to_composition(std::vector<long long>{2, 3, 5}).parts == std::vector<double>{0.2, 0.3, 0.5});

    // zeros -> delta = 0.5 / 4, nonzero scaled by 1 - 2 * delta
    const auto z = to_composition(std::vector<long long>{0, 4, 0}).parts;
    CHECK(z[0] == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(z[1] == doctest::Approx(0.750).epsilon(1e-15));
    CHECK(z[2] == doctest::Approx(0.125).epsilon(1e-15));

    // a tiny total would give delta = 0.5 for two zeros; the cap keeps the nonzero part at half its mass
    const auto capped = to_composition(std::vector<long long>{0, 1, 0}).parts;
    CHECK(capped[1] == doctest::Approx(0.5));
    CHECK(std::accumulate(capped.begin(), capped.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));

    const auto raw = raw_proportions(std::vector<long long>{0, 4, 0}).parts;
    CHECK(raw == std::vector<double>{0.0, 1.0, 0.0});

    CHECK(code_of([] { to_composition(std::vector<long long>{0, 0, 0}); }) == ErrorCode::AllZero);
    CHECK(code_of([] { raw_proportions(std::vector<long long>{0, 0, 0}); }) == ErrorCode::AllZero);
}

TEST_CASE("composition is invariant to scaling counts") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> u(0, 30);
    for (int t = 0; t < 500; ++t) {
        std::vector<long long> c{u(rng), u(rng), u(rng)};
        if (c[0] + c[1] + c[2] == 0) c[1] = 1;
        std::vector<long long> scaled = c;
        for (auto& x : scaled) x *= 10;
        const auto a = raw_proportions(c).parts;
        const auto b = raw_proportions(scaled).parts;
        CHECK(a == b);
    }
}

TEST_CASE("clr") {
    const auto zero = clr(Composition{{1.0 / 3, 1.0 / 3, 1.0 / 3}}).coords;
    for (const double z : zero) CHECK(std::fabs(z) < 1e-15);

    const auto c1 = clr(Composition{{0.218, 0.497, 0.285}}).coords;
    CHECK(std::fabs(c1[0] - -0.364) < 1e-3);
    CHECK(std::fabs(c1[1] - 0.460) < 1e-3);
    CHECK(std::fabs(c1[2] - -0.096) < 1e-3);

    const auto perm = clr(Composition{{0.497, 0.285, 0.218}}).coords;
    CHECK(perm[0] == c1[1]);
    CHECK(perm[1] == c1[2]);
    CHECK(perm[2] == c1[0]);

    CHECK(code_of([] { clr(Composition{{0.0, 0.5, 0.5}}); }) == ErrorCode::NonPositiveComponent);
    CHECK(code_of([] { clr(Composition{{-0.1, 0.6, 0.5}}); }) == ErrorCode::NonPositiveComponent);
}

TEST_CASE("clr fuzz: zero sum and scale invariance") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> u(1, 200);
    for (int t = 0; t < 1000; ++t) {
        const auto x = random_composition(rng, 3);
        const auto z = clr(Composition{x}).coords;
        CHECK(std::fabs(z[0] + z[1] + z[2]) < 1e-9);

        const std::vector<long long> counts{u(rng), u(rng), u(rng)};
        std::vector<long long> scaled = counts;
        for (auto& v : scaled) v *= 7;
        CHECK(clr(to_composition(counts)).coords == clr(to_composition(scaled)).coords);
    }
}

TEST_CASE("euclidean distance") {
    const std::vector<double> o{0, 0, 0};
    const std::vector<double> a{1, -1, 0};
    CHECK(euclidean_distance(o, o) == 0.0);
    CHECK(euclidean_distance(o, a) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(euclidean_distance(a, o) == euclidean_distance(o, a));

    const auto m = DistanceMatrix::euclidean({{0, 0}, {3, 4}, {0, 4}});
    CHECK(m(0, 1) == 5.0);
    CHECK(m(1, 0) == 5.0);
    CHECK(m(1, 2) == 3.0);
    CHECK(m(2, 2) == 0.0);
    m.validate();
    DistanceMatrix bad(2);
    bad.set(0, 1, -1.0);
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidInput);
}

TEST_CASE("CLR Euclidean distance equals the Aitchison distance") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t d = 3 + static_cast<std::size_t>(t % 3);
        const auto x = random_composition(rng, d);
        const auto y = random_composition(rng, d);
        const double via_clr = euclidean_distance(clr(Composition{x}).coords, clr(Composition{y}).coords);
        CHECK(std::fabs(via_clr - oracle::aitchison_distance(x, y)) < 1e-9);
    }
}
