#include "miyazawa/miyazawa.hpp"

#include "miyazawa/errors.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace miyazawa {

Matrix income_coefficients(const HouseholdAccounts& households, const SectorAccounts& accounts) {
    if (households.W.cols() != accounts.x.size()) {
        throw DimensionError(fmt::format("income matrix has {} sector columns, sector table has {}",
                                         households.W.cols(), accounts.x.size()));
    }
    return divide_columns(households.W, accounts.x, nullptr, "income coefficients");
}

Matrix consumption_coefficients(const HouseholdAccounts& households) {
    const Matrix& H = households.H;
    if (H.cols() != households.y0.size()) {
        throw DimensionError(
            fmt::format("consumption matrix has {} groups, income vector has {}", H.cols(), households.y0.size()));
    }
    Matrix C = Matrix::Zero(H.rows(), H.cols());
    for (Eigen::Index g = 0; g < H.cols(); ++g) {
        const double income = households.y0(g);
        const bool consumes = (H.col(g).array() != 0.0).any();
        if (income == 0.0) {
            if (consumes) {
                throw ZeroIncomeError(fmt::format("group {} has consumption but zero income", g + 1));
            }
            continue;
        }
        C.col(g) = H.col(g) / income;
        if (C.col(g).sum() > 1.0 + 1e-12) {
            throw ConsumptionShareError(
                fmt::format("group {} consumption coefficients sum to {:.6g}", g + 1, C.col(g).sum()));
        }
    }
    return C;
}

MiyazawaSystem build_miyazawa(const Matrix& V, const Matrix& C, const LeontiefSystem& leontief) {
    const Eigen::Index n = leontief.B.rows();
    const Eigen::Index r = V.rows();
    if (V.cols() != n || C.rows() != n || C.cols() != r) {
        throw DimensionError(fmt::format("V is {}x{}, C is {}x{}, B is {}x{}", V.rows(), V.cols(), C.rows(), C.cols(),
                                         n, n));
    }
    if ((V.array() < 0.0).any() || (C.array() < 0.0).any()) {
        throw SchemaError("income and consumption coefficients must be nonnegative");
    }
    for (Eigen::Index g = 0; g < r; ++g) {
        if (C.col(g).sum() > 1.0 + 1e-12) {
            throw ConsumptionShareError(
                fmt::format("group {} consumption coefficients sum to {:.6g}", g + 1, C.col(g).sum()));
        }
    }

    MiyazawaSystem sys;
    sys.V = V;
    sys.C = C;
    sys.B = leontief.B;
    sys.L = V * leontief.B;
    // Tiny negative entries of B from rounding must not leak into M.
    sys.M = (sys.L * C).cwiseMax(0.0);
    sys.diagnostics.m_spectral_bound = spectral_radius_estimate(sys.M);
    if (sys.diagnostics.m_spectral_bound >= kMaxIncomeSpectralBound) {
        throw NonProductiveError(fmt::format("spectral radius estimate of VBC is {:.12g} (must be below 1 - 1e-9)",
                                             sys.diagnostics.m_spectral_bound));
    }
    const Matrix I = Matrix::Identity(r, r);
    const LuFactorization lu(I - sys.M);
    if (!lu.all_pivots_positive()) {
        throw NonProductiveError("I - VBC fails the Hawkins-Simon condition");
    }
    sys.K = lu.inverse();
    sys.diagnostics.residual_norm = r > 0 ? ((I - sys.M) * sys.K - I).cwiseAbs().maxCoeff() : 0.0;
    spdlog::debug("Miyazawa system: r={} rho(M)~{:.6g} residual={:.3g}", r, sys.diagnostics.m_spectral_bound,
                  sys.diagnostics.residual_norm);
    return sys;
}

Vector income_impact(const MiyazawaSystem& system, const Vector& df, Closure closure) {
    if (df.size() != system.sectors()) {
        throw DimensionError(
            fmt::format("final-demand change has length {}, expected {}", df.size(), system.sectors()));
    }
    const Vector direct = system.L * df;
    return closure == Closure::Closed ? Vector(system.K * direct) : direct;
}

}  // namespace miyazawa
