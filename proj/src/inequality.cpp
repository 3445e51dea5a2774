#include "miyazawa/inequality.hpp"

#include "miyazawa/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace miyazawa {

namespace {

constexpr double kShareTolerance = 1e-12;
constexpr double kCurveSlack = 1e-12;

}  // namespace

std::string to_string(RegionScope scope) {
    switch (scope) {
        case RegionScope::Urban:
            return "urban";
        case RegionScope::Rural:
            return "rural";
        case RegionScope::All:
            break;
    }
    return "all";
}

RegionScope parse_scope(const std::string& text) {
    if (text == "urban") {
        return RegionScope::Urban;
    }
    if (text == "rural") {
        return RegionScope::Rural;
    }
    if (text == "all") {
        return RegionScope::All;
    }
    throw SchemaError(fmt::format("unknown scope '{}' (expected all, urban or rural)", text));
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Regressive:
            return "Regressive";
        case Verdict::Progressive:
            return "Progressive";
        case Verdict::Proportional:
            break;
    }
    return "Proportional";
}

void validate(const GroupedDistribution& dist) {
    if (dist.points.empty()) {
        throw SchemaError("distribution has no groups");
    }
    double total = 0.0;
    for (const auto& pt : dist.points) {
        if (!std::isfinite(pt.population_share) || !std::isfinite(pt.income)) {
            throw NonFiniteError("distribution has non-finite entries");
        }
        if (pt.population_share <= 0.0) {
            throw SchemaError(fmt::format("population share {} is not positive", pt.population_share));
        }
        if (pt.income < 0.0) {
            throw SchemaError(fmt::format("group income {} is negative", pt.income));
        }
        total += pt.population_share;
    }
    if (std::abs(total - 1.0) > kShareTolerance) {
        throw SchemaError(fmt::format("population shares sum to {:.17g}, not 1", total));
    }
}

GroupedDistribution equal_share_distribution(const std::vector<double>& incomes, RegionScope scope) {
    GroupedDistribution dist;
    dist.region_scope = scope;
    const double share = 1.0 / static_cast<double>(incomes.size());
    for (const double y : incomes) {
        dist.points.push_back({share, y});
    }
    return dist;
}

GroupedDistribution merge_regions(const GroupedDistribution& urban, const GroupedDistribution& rural,
                                  double urban_weight, double rural_weight) {
    if (!(urban_weight > 0.0) || !(rural_weight > 0.0) ||
        std::abs(urban_weight + rural_weight - 1.0) > kShareTolerance) {
        throw SchemaError(fmt::format("population weights {} and {} must be positive and sum to 1", urban_weight,
                                      rural_weight));
    }
    validate(urban);
    validate(rural);
    GroupedDistribution all;
    all.region_scope = RegionScope::All;
    for (const auto& pt : urban.points) {
        all.points.push_back({pt.population_share * urban_weight, pt.income});
    }
    for (const auto& pt : rural.points) {
        all.points.push_back({pt.population_share * rural_weight, pt.income});
    }
    return all;
}

void check_lorenz_invariants(const LorenzCurve& curve) {
    const auto& k = curve.knots;
    if (k.size() < 2 || k.front().p != 0.0 || k.front().L != 0.0 || k.back().p != 1.0 || k.back().L != 1.0) {
        throw std::logic_error("Lorenz curve must run from (0,0) to (1,1)");
    }
    double prev_slope = -1.0;
    for (std::size_t i = 1; i < k.size(); ++i) {
        const double dp = k[i].p - k[i - 1].p;
        const double dL = k[i].L - k[i - 1].L;
        if (dp <= 0.0 || dL < -kCurveSlack || k[i].L > k[i].p + kCurveSlack) {
            throw std::logic_error(fmt::format("Lorenz knot {} breaks monotonicity or L <= p", i));
        }
        const double slope = dL / dp;
        if (slope < prev_slope - 1e-9 * std::max(1.0, std::abs(prev_slope))) {
            throw std::logic_error(fmt::format("Lorenz curve is not convex at knot {}", i));
        }
        prev_slope = slope;
    }
}

LorenzCurve lorenz(const GroupedDistribution& dist) {
    validate(dist);
    const double total_income = std::accumulate(dist.points.begin(), dist.points.end(), 0.0,
                                                 [](double acc, const GroupPoint& pt) { return acc + pt.income; });
    if (!(total_income > 0.0)) {
        throw ZeroTotalIncome("distribution has zero total income");
    }
    std::vector<std::size_t> order(dist.points.size());
    std::iota(order.begin(), order.end(), 0);
    // Compare per-capita incomes by cross-multiplication to avoid division noise.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return dist.points[a].income * dist.points[b].population_share <
               dist.points[b].income * dist.points[a].population_share;
    });

    LorenzCurve curve;
    curve.knots.reserve(order.size() + 1);
    curve.knots.push_back({0.0, 0.0});
    double cum_p = 0.0;
    double cum_y = 0.0;
    for (const auto idx : order) {
        cum_p += dist.points[idx].population_share;
        cum_y += dist.points[idx].income;
        curve.knots.push_back({cum_p, cum_y / total_income});
    }
    curve.knots.back() = {1.0, 1.0};
    check_lorenz_invariants(curve);
    return curve;
}

double gini(const LorenzCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.knots.size(); ++i) {
        const auto& a = curve.knots[i - 1];
        const auto& b = curve.knots[i];
        area += (b.p - a.p) * (b.L + a.L);
    }
    // The true value is nonnegative; rounding on a diagonal curve can dip below.
    return std::max(0.0, 1.0 - area);
}

GiniDelta gini_delta(const GroupedDistribution& before, const GroupedDistribution& after) {
    if (before.points.size() != after.points.size() || before.region_scope != after.region_scope) {
        throw GroupMismatch(fmt::format("before has {} groups, after has {}", before.points.size(),
                                        after.points.size()));
    }
    for (std::size_t i = 0; i < before.points.size(); ++i) {
        if (std::abs(before.points[i].population_share - after.points[i].population_share) > kShareTolerance) {
            throw GroupMismatch(fmt::format("population share of group {} differs", i + 1));
        }
    }
    GiniDelta d;
    d.g_before = gini(lorenz(before));
    d.g_after = gini(lorenz(after));
    d.delta = d.g_after - d.g_before;
    return d;
}

Regressivity regressivity(const std::vector<double>& pct_dy) {
    const std::size_t n = pct_dy.size();
    if (n < 2) {
        throw SchemaError("regressivity needs at least two classes");
    }
    long long concordant = 0;
    long long discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (pct_dy[j] > pct_dy[i]) {
                ++concordant;
            } else if (pct_dy[j] < pct_dy[i]) {
                ++discordant;
            }
        }
    }
    const double pairs = static_cast<double>(n * (n - 1) / 2);
    Regressivity r;
    r.kendall_tau = static_cast<double>(concordant - discordant) / pairs;
    if (r.kendall_tau <= -0.5) {
        r.verdict = Verdict::Regressive;
    } else if (r.kendall_tau >= 0.5) {
        r.verdict = Verdict::Progressive;
    } else {
        r.verdict = Verdict::Proportional;
    }
    return r;
}

}  // namespace miyazawa
