#include "miyazawa/fiscal.hpp"

#include "json.hpp"
#include "miyazawa/errors.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace miyazawa {

void validate(const TaxScenario& scenario) {
    if (!std::isfinite(scenario.rate) || scenario.rate < 0.0) {
        throw SchemaError(fmt::format("tax rate must be a nonnegative number, got {}", scenario.rate));
    }
    if (!std::isfinite(scenario.pass_through) || scenario.pass_through < 0.0 || scenario.pass_through > 1.0) {
        throw SchemaError(fmt::format("pass_through must lie in [0, 1], got {}", scenario.pass_through));
    }
    if (!scenario.emissions.e.allFinite()) {
        throw NonFiniteError("emission intensities are not finite");
    }
    if ((scenario.emissions.e.array() < 0.0).any()) {
        throw NegativeIntensity("emission intensities must be nonnegative");
    }
}

ScenarioFile parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(fmt::format("scenario is not valid JSON: {}", e.what()));
    }
    if (!doc.is_object()) {
        throw SchemaError("scenario must be a JSON object");
    }
    ScenarioFile sc;
    bool have_label = false;
    bool have_emissions = false;
    for (const auto& [key, value] : doc.items()) {
        if (key == "label") {
            if (!value.is_string()) {
                throw SchemaError("scenario 'label' must be a string");
            }
            sc.label = value.get<std::string>();
            have_label = true;
        } else if (key == "rate_rp_per_kg") {
            if (!value.is_number()) {
                throw SchemaError("scenario 'rate_rp_per_kg' must be a number");
            }
            sc.rate = value.get<double>();
        } else if (key == "pass_through") {
            if (!value.is_number()) {
                throw SchemaError("scenario 'pass_through' must be a number");
            }
            sc.pass_through = value.get<double>();
        } else if (key == "emissions_file") {
            if (!value.is_string() || value.get<std::string>().empty()) {
                throw SchemaError("scenario 'emissions_file' must be a non-empty string");
            }
            std::filesystem::path p = value.get<std::string>();
            sc.emissions_file = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
            have_emissions = true;
        } else {
            throw SchemaError(fmt::format("unknown scenario key '{}'", key));
        }
    }
    if (!have_label) {
        throw SchemaError("scenario is missing 'label'");
    }
    if (!have_emissions) {
        throw SchemaError("scenario is missing 'emissions_file'");
    }
    if (!(sc.rate >= 0.0)) {
        throw SchemaError(fmt::format("rate_rp_per_kg must be nonnegative, got {}", sc.rate));
    }
    if (!(sc.pass_through >= 0.0 && sc.pass_through <= 1.0)) {
        throw SchemaError(fmt::format("pass_through must lie in [0, 1], got {}", sc.pass_through));
    }
    return sc;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingFile(fmt::format("cannot open '{}'", path.string()));
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str(), path.parent_path());
}

TaxScenario load_scenario(const std::filesystem::path& path, const std::vector<std::string>& sector_ids) {
    const auto file = load_scenario_file(path);
    TaxScenario sc;
    sc.label = file.label;
    sc.rate = file.rate;
    sc.pass_through = file.pass_through;
    sc.emissions = load_emissions(file.emissions_file, sector_ids);
    validate(sc);
    return sc;
}

Vector tax_cost_vector(const TaxScenario& scenario) {
    validate(scenario);
    return scenario.rate * scenario.emissions.e / 1e6;
}

Vector demand_shock(const Vector& dp, const Vector& f, double pass_through) {
    if (dp.size() != f.size()) {
        throw DimensionError(fmt::format("price change has length {}, final demand {}", dp.size(), f.size()));
    }
    return -pass_through * dp.cwiseProduct(f);
}

void finalize_shares(ImpactResult& r) {
    const auto count = r.y1.size();
    // Normalise signed zeros so a neutral scenario prints as 0.00, not -0.00.
    r.dy = r.dy.array() + 0.0;
    r.y2 = r.y1 - r.dy;
    r.pct_dy = Vector::Zero(count);
    for (Eigen::Index g = 0; g < count; ++g) {
        if (r.y1(g) != 0.0) {
            r.pct_dy(g) = r.dy(g) / r.y1(g);
        } else if (r.dy(g) != 0.0) {
            r.pct_dy(g) = std::numeric_limits<double>::quiet_NaN();
        }
    }
    double total = 0.0;
    for (Eigen::Index g = 0; g < count; ++g) {
        total += r.dy(g);
    }
    r.zero_impact = total == 0.0;
    if (r.zero_impact) {
        r.pct_cy = Vector::Constant(count, std::numeric_limits<double>::quiet_NaN());
    } else {
        r.pct_cy = r.dy / total;
    }
}

ImpactResult run_scenario(const SectorAccounts& accounts, const HouseholdAccounts& households,
                          const TaxScenario& scenario, const RunOptions& options) {
    validate(scenario);
    const auto n = static_cast<Eigen::Index>(accounts.size());
    if (scenario.emissions.e.size() != n) {
        throw DimensionError(
            fmt::format("{} emission intensities for {} sectors", scenario.emissions.e.size(), n));
    }
    if (households.W.cols() != n) {
        throw DimensionError(fmt::format("household accounts cover {} sectors, table has {}", households.W.cols(), n));
    }

    ImpactResult result;
    result.label = scenario.label;
    result.groups = households.groups;
    result.closure = options.closure;

    const auto tc = technical_coefficients(accounts);
    result.diagnostics.degenerate_sectors = tc.degenerate_sectors;
    for (const auto j : tc.degenerate_sectors) {
        result.diagnostics.warnings.push_back(
            fmt::format("DegenerateSectorWarning: sector '{}' has zero total output", accounts.sector_ids[j]));
    }
    const auto leontief = leontief_inverse(tc.A);
    result.diagnostics.leontief = leontief.diagnostics;

    const auto V = income_coefficients(households, accounts);
    const auto C = consumption_coefficients(households);
    const auto system = build_miyazawa(V, C, leontief);
    result.diagnostics.miyazawa = system.diagnostics;

    result.dv = tax_cost_vector(scenario);
    result.dp = price_model(leontief, result.dv);
    result.df = demand_shock(result.dp, accounts.f, scenario.pass_through);
    result.dy = -income_impact(system, result.df, options.closure);
    result.y1 = households.y0;

    result.tax_revenue = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        result.tax_revenue += result.dv(j) * accounts.x(j);
    }

    finalize_shares(result);
    if (result.zero_impact) {
        result.diagnostics.warnings.emplace_back("ZeroImpactWarning: the scenario produces no income decline");
        spdlog::warn("scenario '{}' produces no income decline", scenario.label);
    }
    spdlog::info("scenario '{}': total decline {:.6f} million Rp, revenue {:.6f} million Rp", scenario.label,
                 result.dy.sum(), result.tax_revenue);
    return result;
}

}  // namespace miyazawa
