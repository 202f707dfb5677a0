#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "lrl/log_scaled.hpp"

namespace lrl {

struct FactorizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hermitian matrix with the symmetry checked on construction (1e-12 absolute
// residual). Inputs are built internally, so a violation is a bug upstream.
struct HermitianMatrix {
    Eigen::MatrixXcd entries;

    explicit HermitianMatrix(Eigen::MatrixXcd e);
    int dim() const { return static_cast<int>(entries.rows()); }
};

// Square real matrix held row-scaled: each stored row has max |entry| = 1 and
// the true row is stored_row * exp(row_log_scales[i]). This is the form the
// CDF determinant needs, where raw entries span hundreds of orders.
struct ScaledSquareMatrix {
    Eigen::MatrixXd scaled;          // row-wise max abs = 1 (or all-zero row)
    Eigen::VectorXd row_log_scales;  // natural logs

    // Build from a dense grid of log-scaled values, extracting per-row peaks.
    // A nonzero jitter offsets each row's scale split (the reconstructed
    // matrix is unchanged; only the float representation shifts), which the
    // CDF precision hook uses to probe the determinant's rounding path.
    static ScaledSquareMatrix from_log_entries(
        const std::vector<std::vector<LogScaledReal>>& entries,
        const std::vector<double>* row_jitter = nullptr);

    int dim() const { return static_cast<int>(scaled.rows()); }
};

// Lower Cholesky factor of a positive definite Hermitian matrix.
// Throws FactorizationError when a pivot fails.
Eigen::MatrixXcd cholesky_lower(const HermitianMatrix& M);

// Largest eigenvalue of a Hermitian matrix (full solve; dims are small).
double hermitian_eig_max(const HermitianMatrix& M);

// Determinant of the reconstructed matrix as sign + log-magnitude:
// LU with partial pivoting on the scaled entries, then the row scales are
// added back. Singular input returns an exact zero.
LogScaledReal log_scaled_det(const ScaledSquareMatrix& M);

}  // namespace lrl
