#include "miyazawa/leontief.hpp"

#include "miyazawa/errors.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <cmath>

namespace miyazawa {

namespace {

constexpr double kPivotFloor = 1e-13;

}  // namespace

LuFactorization::LuFactorization(const Matrix& m) : lu_(m) {
    if (m.rows() != m.cols()) {
        throw DimensionError(fmt::format("LU needs a square matrix, got {}x{}", m.rows(), m.cols()));
    }
    if (!m.allFinite()) {
        throw SingularError("matrix has non-finite entries");
    }
    const Eigen::Index n = lu_.rows();
    double scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(m(i, i)));
    }
    if (scale == 0.0) {
        scale = 1.0;
    }
    min_relative_pivot_ = n > 0 ? std::numeric_limits<double>::infinity() : 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double pivot = lu_(k, k);
        min_relative_pivot_ = std::min(min_relative_pivot_, pivot / scale);
        if (!(pivot / scale > kPivotFloor)) {
            all_positive_ = false;
            if (std::abs(pivot) / scale <= kPivotFloor) {
                // Leave the remaining factor untouched; solves are refused.
                return;
            }
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            lu_(i, k) /= pivot;
            const double l = lu_(i, k);
            for (Eigen::Index j = k + 1; j < n; ++j) {
                lu_(i, j) -= l * lu_(k, j);
            }
        }
    }
}

Vector LuFactorization::solve(const Vector& b) const {
    const Eigen::Index n = lu_.rows();
    if (b.size() != n) {
        throw DimensionError(fmt::format("right-hand side has length {}, expected {}", b.size(), n));
    }
    if (!(std::abs(min_relative_pivot_) > kPivotFloor)) {
        throw SingularError("matrix is singular to working precision");
    }
    Vector y = b;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < i; ++k) {
            y(i) -= lu_(i, k) * y(k);
        }
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        for (Eigen::Index k = i + 1; k < n; ++k) {
            y(i) -= lu_(i, k) * y(k);
        }
        y(i) /= lu_(i, i);
    }
    return y;
}

Vector LuFactorization::solve_transposed(const Vector& b) const {
    // m^T = U^T L^T: forward with U^T, then back with L^T (unit diagonal).
    const Eigen::Index n = lu_.rows();
    if (b.size() != n) {
        throw DimensionError(fmt::format("right-hand side has length {}, expected {}", b.size(), n));
    }
    if (!(std::abs(min_relative_pivot_) > kPivotFloor)) {
        throw SingularError("matrix is singular to working precision");
    }
    Vector y = b;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < i; ++k) {
            y(i) -= lu_(k, i) * y(k);
        }
        y(i) /= lu_(i, i);
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        for (Eigen::Index k = i + 1; k < n; ++k) {
            y(i) -= lu_(k, i) * y(k);
        }
    }
    return y;
}

Matrix LuFactorization::inverse() const {
    const Eigen::Index n = lu_.rows();
    Matrix inv(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        inv.col(j) = solve(Vector::Unit(n, j));
    }
    return inv;
}

Matrix divide_columns(const Matrix& flows, const Vector& x, std::vector<std::size_t>* degenerate,
                      const char* what) {
    if (flows.cols() != x.size()) {
        throw DimensionError(fmt::format("{}: {} columns against {} outputs", what, flows.cols(), x.size()));
    }
    Matrix out = Matrix::Zero(flows.rows(), flows.cols());
    for (Eigen::Index j = 0; j < flows.cols(); ++j) {
        if (x(j) == 0.0) {
            if ((flows.col(j).array() != 0.0).any()) {
                throw DegenerateSectorError(
                    fmt::format("{}: sector {} has zero output but nonzero entries", what, j + 1));
            }
            if (degenerate != nullptr) {
                degenerate->push_back(static_cast<std::size_t>(j));
            }
            continue;
        }
        out.col(j) = flows.col(j) / x(j);
    }
    return out;
}

TechnicalCoefficients technical_coefficients(const SectorAccounts& accounts) {
    TechnicalCoefficients tc;
    tc.A = divide_columns(accounts.Z, accounts.x, &tc.degenerate_sectors, "technical coefficients");
    for (const auto j : tc.degenerate_sectors) {
        spdlog::warn("sector '{}' has zero total output; its coefficient column is zero", accounts.sector_ids[j]);
    }
    return tc;
}

double spectral_radius_estimate(const Matrix& m, int iterations) {
    const Eigen::Index n = m.rows();
    if (n == 0) {
        return 0.0;
    }
    Vector v = Vector::Constant(n, 1.0 / static_cast<double>(n));
    double estimate = 0.0;
    for (int k = 0; k < iterations; ++k) {
        const Vector w = m.cwiseAbs() * v;
        const double norm = w.lpNorm<1>();
        estimate = norm / v.lpNorm<1>();
        if (norm == 0.0) {
            return 0.0;
        }
        v = w / norm;
    }
    return estimate;
}

LeontiefSystem leontief_inverse(const Matrix& A) {
    if (A.rows() != A.cols()) {
        throw DimensionError(fmt::format("coefficient matrix is {}x{}", A.rows(), A.cols()));
    }
    if (!A.allFinite()) {
        throw NonFiniteError("coefficient matrix has non-finite entries");
    }
    if ((A.array() < 0.0).any()) {
        throw SchemaError("coefficient matrix has negative entries");
    }
    const Eigen::Index n = A.rows();
    LeontiefSystem sys;
    sys.A = A;
    sys.diagnostics.spectral_radius_bound = spectral_radius_estimate(A);

    const LuFactorization lu(Matrix::Identity(n, n) - A);
    sys.diagnostics.hawkins_simon_ok = lu.all_pivots_positive();
    if (!sys.diagnostics.hawkins_simon_ok) {
        throw NonProductiveError(fmt::format(
            "Hawkins-Simon condition fails: a leading principal minor of (I - A) is not positive "
            "(smallest relative pivot {:.6g})",
            lu.min_relative_pivot()));
    }
    if (sys.diagnostics.spectral_radius_bound >= 1.0) {
        throw NonProductiveError(
            fmt::format("spectral radius estimate of A is {:.6g} >= 1", sys.diagnostics.spectral_radius_bound));
    }
    sys.B = lu.inverse();
    sys.diagnostics.residual_norm =
        ((Matrix::Identity(n, n) - A) * sys.B - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (n == 0) {
        sys.diagnostics.residual_norm = 0.0;
    }
    spdlog::debug("Leontief inverse: n={} rho~{:.6g} residual={:.3g}", n, sys.diagnostics.spectral_radius_bound,
                  sys.diagnostics.residual_norm);
    return sys;
}

Vector price_model(const LeontiefSystem& system, const Vector& dv) {
    if (dv.size() != system.B.rows()) {
        throw DimensionError(fmt::format("cost shock has length {}, expected {}", dv.size(), system.B.rows()));
    }
    if (!dv.allFinite()) {
        throw NonFiniteError("cost shock has non-finite entries");
    }
    return system.B.transpose() * dv;
}

Vector price_model(const Matrix& A, const Vector& dv) {
    return price_model(leontief_inverse(A), dv);
}

}  // namespace miyazawa
