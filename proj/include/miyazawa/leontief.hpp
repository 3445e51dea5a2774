#pragma once

#include "miyazawa/accounts.hpp"

#include <vector>

namespace miyazawa {

// Dense LU of a square matrix without row exchanges. For a Z-matrix such as
// I - A the k-th pivot equals the ratio of consecutive leading principal
// minors, so "all pivots positive" is exactly the Hawkins-Simon condition.
class LuFactorization {
public:
    explicit LuFactorization(const Matrix& m);

    // Smallest pivot relative to the largest diagonal magnitude of the input.
    double min_relative_pivot() const { return min_relative_pivot_; }
    bool all_pivots_positive() const { return all_positive_; }
    Eigen::Index size() const { return lu_.rows(); }

    Vector solve(const Vector& b) const;             // m x = b
    Vector solve_transposed(const Vector& b) const;  // m^T x = b
    Matrix inverse() const;

private:
    Matrix lu_;
    double min_relative_pivot_ = 0.0;
    bool all_positive_ = true;
};

struct TechnicalCoefficients {
    Matrix A;
    // Sectors with zero total output; their columns of A are zero.
    std::vector<std::size_t> degenerate_sectors;
};

TechnicalCoefficients technical_coefficients(const SectorAccounts& accounts);

// Column-wise division of a flow block by total output; x[j] = 0 requires a
// zero column. Shared by technical and income coefficients.
Matrix divide_columns(const Matrix& flows, const Vector& x, std::vector<std::size_t>* degenerate,
                      const char* what);

struct LeontiefDiagnostics {
    double spectral_radius_bound = 0.0;
    bool hawkins_simon_ok = false;
    double residual_norm = 0.0;
};

struct LeontiefSystem {
    Matrix A;
    Matrix B;  // (I - A)^-1
    LeontiefDiagnostics diagnostics;
};

// Power-iteration estimate of the dominant eigenvalue of a nonnegative
// matrix: 100 iterations from the uniform vector, fixed summation order.
double spectral_radius_estimate(const Matrix& m, int iterations = 100);

LeontiefSystem leontief_inverse(const Matrix& A);

// Full-forward-shifting price solution dp = (I - A^T)^-1 dv.
Vector price_model(const LeontiefSystem& system, const Vector& dv);
Vector price_model(const Matrix& A, const Vector& dv);

}  // namespace miyazawa
