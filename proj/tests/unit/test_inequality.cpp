#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "miyazawa/errors.hpp"
#include "miyazawa/inequality.hpp"
#include "table1.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

using namespace miyazawa;

namespace {

std::vector<double> column(const std::array<double, 10>& a) {
    return {a.begin(), a.end()};
}

// Kendall tau-a by brute force over every pair, written independently of the engine.
double brute_tau(const std::vector<double>& y) {
    int c = 0;
    int d = 0;
    const int n = static_cast<int>(y.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i < j) {
                const double s = (j - i) * (y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(i)]);
                c += s > 0;
                d += s < 0;
            }
        }
    }
    return static_cast<double>(c - d) / (n * (n - 1) / 2);
}

std::vector<double> random_incomes(std::mt19937_64& rng, std::size_t n) {
    std::lognormal_distribution<double> ln(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& y : v) {
        y = ln(rng);
    }
    return v;
}

}  // namespace

TEST_CASE("equal incomes lie on the diagonal") {
    const auto curve = lorenz(equal_share_distribution(std::vector<double>(10, 5.0), RegionScope::All));
    REQUIRE(curve.knots.size() == 11);
    for (std::size_t i = 0; i < curve.knots.size(); ++i) {
        CHECK(curve.knots[i].p == doctest::Approx(0.1 * static_cast<double>(i)));
        CHECK(curve.knots[i].L == doctest::Approx(0.1 * static_cast<double>(i)));
    }
    CHECK(gini(curve) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("two groups, one with everything") {
    const auto curve = lorenz(equal_share_distribution({0.0, 1.0}, RegionScope::Urban));
    REQUIRE(curve.knots.size() == 3);
    CHECK(curve.knots[1].p == 0.5);
    CHECK(curve.knots[1].L == 0.0);
    CHECK(curve.knots[2].p == 1.0);
    CHECK(curve.knots[2].L == 1.0);
    CHECK(gini(curve) == 0.5);
}

TEST_CASE("decile shares from the published contribution column") {
    const auto curve = lorenz(equal_share_distribution(column(table1::kPctCY), RegionScope::All));
    const std::array<double, 10> cumulative{0.0218, 0.0563, 0.0994, 0.1508, 0.2118,
                                            0.2840, 0.3706, 0.4791, 0.6277, 1.0};
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
        CHECK(curve.knots[i + 1].L == doctest::Approx(cumulative[i]).epsilon(1e-12));
    }
    CHECK(gini(curve) == doctest::Approx(0.4397).epsilon(0.0005 / 0.4397));
}

TEST_CASE("groups are sorted by per-capita income") {
    GroupedDistribution d;
    d.points = {{0.25, 10.0}, {0.5, 10.0}, {0.25, 0.0}};
    const auto curve = lorenz(d);
    // Per-capita: 40, 20, 0.
    CHECK(curve.knots[1].p == 0.25);
    CHECK(curve.knots[1].L == 0.0);
    CHECK(curve.knots[2].p == 0.75);
    CHECK(curve.knots[2].L == 0.5);
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(lorenz(equal_share_distribution({0.0, 0.0}, RegionScope::All)), ZeroTotalIncome);
    CHECK_THROWS_AS(lorenz(equal_share_distribution({}, RegionScope::All)), SchemaError);
    CHECK_THROWS_AS(lorenz(equal_share_distribution({1.0, -1.0}, RegionScope::All)), SchemaError);
    GroupedDistribution bad;
    bad.points = {{0.5, 1.0}, {0.4, 1.0}};
    CHECK_THROWS_AS(validate(bad), SchemaError);
    bad.points = {{0.5, 1.0}, {0.5, std::nan("")}};
    CHECK_THROWS_AS(validate(bad), NonFiniteError);
}

TEST_CASE("invariant checker rejects broken curves") {
    CHECK_THROWS_AS(check_lorenz_invariants({{{0, 0}, {0.5, 0.6}, {1, 1}}}), std::logic_error);
    CHECK_THROWS_AS(check_lorenz_invariants({{{0, 0}, {0.5, 0.4}, {0.9, 0.5}, {1, 1}}}), std::logic_error);
    CHECK_THROWS_AS(check_lorenz_invariants({{{0, 0}, {0.5, 0.2}}}), std::logic_error);
    CHECK_NOTHROW(check_lorenz_invariants({{{0, 0}, {0.5, 0.2}, {1, 1}}}));
}

TEST_CASE("gini delta") {
    const auto before = equal_share_distribution(column(table1::kY1), RegionScope::All);
    const auto same = gini_delta(before, before);
    CHECK(same.delta == 0.0);

    auto scaled = before;
    for (auto& pt : scaled.points) {
        pt.income *= 0.999;
    }
    CHECK(std::abs(gini_delta(before, scaled).delta) <= 1e-12);

    const auto after = equal_share_distribution(column(table1::kY2), RegionScope::All);
    const auto d = gini_delta(before, after);
    CHECK(d.delta > 0.0);
    CHECK(d.delta < 1e-5);
    CHECK(d.g_before == doctest::Approx(table1::kGiniAllBefore).epsilon(1e-8));

    CHECK_THROWS_AS(gini_delta(before, equal_share_distribution({1.0, 2.0}, RegionScope::All)), GroupMismatch);
    GroupedDistribution shifted = before;
    shifted.points[0].population_share = 0.2;
    shifted.points[1].population_share = 1e-9;
    CHECK_THROWS_AS(gini_delta(before, shifted), GroupMismatch);
}

TEST_CASE("regressivity examples") {
    const auto flat = regressivity(std::vector<double>(10, 0.01));
    CHECK(flat.kendall_tau == 0.0);
    CHECK(flat.verdict == Verdict::Proportional);

    std::vector<double> falling(10);
    for (std::size_t i = 0; i < falling.size(); ++i) {
        falling[i] = 10.0 - static_cast<double>(i);
    }
    const auto down = regressivity(falling);
    CHECK(down.kendall_tau == -1.0);
    CHECK(down.verdict == Verdict::Regressive);

    std::reverse(falling.begin(), falling.end());
    CHECK(regressivity(falling).verdict == Verdict::Progressive);

    const auto published = column(table1::kPctDY);
    const auto r = regressivity(published);
    CHECK(std::abs(r.kendall_tau - brute_tau(published)) <= 1e-15);
    CHECK(std::abs(r.kendall_tau - (-43.0 / 45.0)) <= 1e-9);
    CHECK(r.verdict == Verdict::Regressive);

    // One tie, two concordant pairs: tau-a = 2/3.
    CHECK(regressivity({1.0, 1.0, 2.0}).kendall_tau == doctest::Approx(2.0 / 3.0));
    CHECK(regressivity({1.0, 2.0, 1.0, 2.0}).verdict == Verdict::Proportional);
    CHECK_THROWS_AS(regressivity({1.0}), SchemaError);
}

TEST_CASE("scope names") {
    CHECK(parse_scope("urban") == RegionScope::Urban);
    CHECK(parse_scope("rural") == RegionScope::Rural);
    CHECK(parse_scope("all") == RegionScope::All);
    CHECK_THROWS_AS(parse_scope("city"), SchemaError);
    CHECK(to_string(RegionScope::All) == "all");
    CHECK(to_string(Verdict::Regressive) == "Regressive");
}

TEST_CASE("property: scale invariance and bounds") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> lam(1e-3, 1e3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto incomes = random_incomes(rng, 2 + static_cast<std::size_t>(trial % 19));
        const auto base = equal_share_distribution(incomes, RegionScope::All);
        const double g = gini(lorenz(base));
        CHECK(g >= 0.0);
        CHECK(g < 1.0);
        auto scaled = base;
        const double l = lam(rng);
        for (auto& pt : scaled.points) {
            pt.income *= l;
        }
        CHECK(std::abs(gini(lorenz(scaled)) - g) <= 1e-12);
    }
}

TEST_CASE("property: Pigou-Dalton transfers never raise the Gini") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int transfers = 0;
    while (transfers < 100) {
        auto incomes = random_incomes(rng, 10);
        std::sort(incomes.begin(), incomes.end());
        std::uniform_int_distribution<std::size_t> pick(0, incomes.size() - 2);
        const auto poor = pick(rng);
        const auto rich = poor + 1 + static_cast<std::size_t>(u(rng) * static_cast<double>(incomes.size() - 1 - poor));
        if (rich >= incomes.size() || incomes[rich] <= incomes[poor]) {
            continue;
        }
        // Keep both groups within their neighbours so no ranks cross.
        const double lo = poor + 1 < incomes.size() ? incomes[poor + 1] - incomes[poor] : 0.0;
        const double hi = incomes[rich] - incomes[rich - 1];
        const double amount = u(rng) * std::min(lo, hi);
        const double before = gini(lorenz(equal_share_distribution(incomes, RegionScope::All)));
        incomes[poor] += amount;
        incomes[rich] -= amount;
        const double after = gini(lorenz(equal_share_distribution(incomes, RegionScope::All)));
        CHECK(after <= before + 1e-15);
        ++transfers;
    }
}

TEST_CASE("property: merged regions give a valid 20-group distribution") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> w(0.05, 0.95);
    for (int trial = 0; trial < 30; ++trial) {
        const auto urban = equal_share_distribution(random_incomes(rng, 10), RegionScope::Urban);
        const auto rural = equal_share_distribution(random_incomes(rng, 10), RegionScope::Rural);
        const double uw = w(rng);
        const auto all = merge_regions(urban, rural, uw, 1.0 - uw);
        CHECK(all.points.size() == 20);
        CHECK_NOTHROW(validate(all));
        const double gu = gini(lorenz(urban));
        const double gr = gini(lorenz(rural));
        const double ga = gini(lorenz(all));
        CHECK(ga >= std::min(gu, gr) - 0.25);
        CHECK(ga <= std::max(gu, gr) + 0.25);
    }
    const auto d = equal_share_distribution({1.0}, RegionScope::Urban);
    CHECK_THROWS_AS(merge_regions(d, d, 0.5, 0.6), SchemaError);
    CHECK_THROWS_AS(merge_regions(d, d, 0.0, 1.0), SchemaError);
}
