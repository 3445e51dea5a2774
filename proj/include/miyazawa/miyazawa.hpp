#pragma once

#include "miyazawa/accounts.hpp"
#include "miyazawa/leontief.hpp"

namespace miyazawa {

// Threshold on the power-iteration estimate of rho(VBC).
inline constexpr double kMaxIncomeSpectralBound = 1.0 - 1e-9;

struct MiyazawaDiagnostics {
    double m_spectral_bound = 0.0;
    double residual_norm = 0.0;
};

// Interrelational income system for r household groups over n sectors.
struct MiyazawaSystem {
    Matrix V;  // r x n income per unit of output
    Matrix C;  // n x r consumption per unit of income
    Matrix B;  // n x n Leontief inverse the system was built on
    Matrix L;  // r x n, V B
    Matrix M;  // r x r, V B C
    Matrix K;  // r x r, (I - M)^-1
    MiyazawaDiagnostics diagnostics;

    Eigen::Index groups() const { return K.rows(); }
    Eigen::Index sectors() const { return B.rows(); }
};

Matrix income_coefficients(const HouseholdAccounts& households, const SectorAccounts& accounts);
Matrix consumption_coefficients(const HouseholdAccounts& households);

MiyazawaSystem build_miyazawa(const Matrix& V, const Matrix& C, const LeontiefSystem& leontief);

enum class Closure {
    Closed,  // induced consumption feeds back through K
    Open,    // direct and indirect income only (K = I)
};

// Income change per household group for a final-demand change df.
Vector income_impact(const MiyazawaSystem& system, const Vector& df, Closure closure = Closure::Closed);

}  // namespace miyazawa
