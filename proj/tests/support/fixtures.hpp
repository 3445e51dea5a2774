#pragma once

#include "miyazawa/accounts.hpp"
#include "miyazawa/fiscal.hpp"
#include "oracles.hpp"

#include <fmt/format.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>

namespace fixtures {

namespace fs = std::filesystem;
using miyazawa::Matrix;
using miyazawa::Vector;

inline fs::path source_fixture_dir() {
    return fs::path(MIYAZAWA_FIXTURE_DIR);
}

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() / fmt::format("miyazawa-test-{}-{}", ::getpid(), counter++);
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

inline std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<std::string> sector_names(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back(fmt::format("s{}", i + 1));
    }
    return ids;
}

inline std::string sectors_csv(const std::vector<std::string>& ids, const Matrix& Z, const Vector& f,
                               const Vector& va, const Vector& x) {
    std::string out = "sector_id";
    for (const auto& id : ids) {
        out += "," + id;
    }
    out += ",final_demand,value_added,total_output\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        out += ids[i];
        for (Eigen::Index j = 0; j < Z.cols(); ++j) {
            out += fmt::format(",{}", Z(r, j));
        }
        out += fmt::format(",{},{},{}\n", f(r), va(r), x(r));
    }
    return out;
}

inline std::string group_id(std::size_t g) {
    return fmt::format("{}{:02d}", g < 10 ? 'U' : 'R', g % 10 + 1);
}

// Households file for the canonical 20 groups. W is 20 x n, H is n x 20.
inline std::string households_csv(const std::vector<std::string>& ids, const Matrix& W, const Matrix& H,
                                  bool with_totals = true) {
    std::string out = "group_id,region,decile,kind";
    for (const auto& id : ids) {
        out += "," + id;
    }
    out += ",total\n";
    auto emit = [&](const char* kind, auto value, double total) {
        for (std::size_t g = 0; g < 20; ++g) {
            out += fmt::format("{},{},{},{}", group_id(g), g < 10 ? "urban" : "rural", g % 10 + 1, kind);
            double sum = 0.0;
            for (std::size_t s = 0; s < ids.size(); ++s) {
                const double v = value(g, s);
                sum += v;
                out += fmt::format(",{}", v);
            }
            out += with_totals ? fmt::format(",{}\n", total < 0 ? sum : total) : ",\n";
        }
    };
    emit("income", [&](std::size_t g, std::size_t s) { return W(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(s)); }, -1.0);
    emit("consumption", [&](std::size_t g, std::size_t s) { return H(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(g)); }, -1.0);
    return out;
}

inline std::string emissions_csv(const std::vector<std::string>& ids, const Vector& e) {
    std::string out = "sector_id,kg_co2e_per_million_rp\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out += fmt::format("{},{}\n", ids[i], e(static_cast<Eigen::Index>(i)));
    }
    return out;
}

// The 2-sector table used throughout the examples.
struct TwoSector {
    Matrix Z{{20, 30}, {40, 10}};
    Vector f{{50, 50}};
    Vector va{{40, 60}};
    Vector x{{100, 100}};
};

// Random balanced economy with 20 household groups, built in memory.
struct Economy {
    miyazawa::SectorAccounts accounts;
    miyazawa::HouseholdAccounts households;
    miyazawa::EmissionProfile emissions;
};

inline Economy random_economy(std::mt19937_64& rng, Eigen::Index n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Economy eco;
    auto& a = eco.accounts;
    a.sector_ids = sector_names(static_cast<std::size_t>(n));
    const Matrix A = oracle::random_productive(rng, n, 0.7);
    a.x = Vector(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        a.x(j) = 1000.0 + 9000.0 * u(rng);
    }
    a.Z = A * a.x.asDiagonal();
    a.f = a.x - a.Z.rowwise().sum();
    a.va = a.x - a.Z.colwise().sum().transpose();

    auto& h = eco.households;
    for (std::size_t g = 0; g < 20; ++g) {
        h.groups.push_back({g < 10 ? miyazawa::Region::Urban : miyazawa::Region::Rural, static_cast<int>(g % 10 + 1),
                            group_id(g)});
    }
    // Each group takes a random slice of at most 1/20 of each sector's value added.
    h.W = Matrix(20, n);
    for (Eigen::Index g = 0; g < 20; ++g) {
        for (Eigen::Index j = 0; j < n; ++j) {
            h.W(g, j) = a.va(j) / 20.0 * (0.2 + 0.8 * u(rng));
        }
    }
    h.y0 = h.W.rowwise().sum();
    h.H = Matrix(n, 20);
    for (Eigen::Index g = 0; g < 20; ++g) {
        Vector basket(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            basket(i) = 0.1 + u(rng);
        }
        basket /= basket.sum();
        h.H.col(g) = basket * h.y0(g) * (0.5 + 0.4 * u(rng));
    }
    eco.emissions.e = Vector(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        eco.emissions.e(j) = 200.0 * u(rng);
    }
    return eco;
}

inline miyazawa::TaxScenario scenario_for(const Economy& eco, double rate = 30.0, double pass_through = 1.0) {
    return miyazawa::TaxScenario{"test", rate, pass_through, eco.emissions};
}

}  // namespace fixtures
