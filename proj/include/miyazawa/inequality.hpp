#pragma once

#include "miyazawa/accounts.hpp"

#include <map>
#include <string>
#include <vector>

namespace miyazawa {

enum class RegionScope { Urban, Rural, All };

std::string to_string(RegionScope scope);
RegionScope parse_scope(const std::string& text);

struct GroupPoint {
    double population_share = 0.0;
    double income = 0.0;  // million Rp
};

struct GroupedDistribution {
    std::vector<GroupPoint> points;
    RegionScope region_scope = RegionScope::All;
};

void validate(const GroupedDistribution& dist);

// n groups of equal population share 1/n.
GroupedDistribution equal_share_distribution(const std::vector<double>& incomes, RegionScope scope);

// Combines an urban and a rural distribution; each region's shares are
// rescaled by its population weight.
GroupedDistribution merge_regions(const GroupedDistribution& urban, const GroupedDistribution& rural,
                                  double urban_weight, double rural_weight);

struct LorenzKnot {
    double p = 0.0;  // cumulative population share
    double L = 0.0;  // cumulative income share
};

struct LorenzCurve {
    std::vector<LorenzKnot> knots;
};

// Throws std::logic_error if endpoints, monotonicity, L <= p or convexity fail.
void check_lorenz_invariants(const LorenzCurve& curve);

LorenzCurve lorenz(const GroupedDistribution& dist);

// Trapezoid rule over the knots: G = 1 - sum (p_i - p_{i-1}) (L_i + L_{i-1}).
double gini(const LorenzCurve& curve);

struct GiniDelta {
    double g_before = 0.0;
    double g_after = 0.0;
    double delta = 0.0;
};

GiniDelta gini_delta(const GroupedDistribution& before, const GroupedDistribution& after);

enum class Verdict { Regressive, Proportional, Progressive };

std::string to_string(Verdict verdict);

struct Regressivity {
    double kendall_tau = 0.0;
    Verdict verdict = Verdict::Proportional;
};

// Kendall tau-a between class index (1..n) and relative burden; ties count
// as neither concordant nor discordant.
Regressivity regressivity(const std::vector<double>& pct_dy_by_class);

}  // namespace miyazawa
