#include "lrl/numerics.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace lrl {

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd e) : entries(std::move(e)) {
    if (entries.rows() != entries.cols())
        throw std::domain_error("HermitianMatrix: not square");
    double residual = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (residual > 1e-12)
        throw std::domain_error("HermitianMatrix: symmetry residual " +
                                std::to_string(residual));
    // Fold the sub-tolerance asymmetry away so downstream solvers see an
    // exactly Hermitian operand.
    entries = 0.5 * (entries + entries.adjoint().eval());
}

ScaledSquareMatrix ScaledSquareMatrix::from_log_entries(
    const std::vector<std::vector<LogScaledReal>>& entries,
    const std::vector<double>* row_jitter) {
    const int d = static_cast<int>(entries.size());
    ScaledSquareMatrix out;
    out.scaled.resize(d, d);
    out.row_log_scales.resize(d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(entries[i].size()) != d)
            throw std::domain_error("ScaledSquareMatrix: ragged input");
        double peak = -std::numeric_limits<double>::infinity();
        for (const auto& v : entries[i])
            if (v.sign != 0 && v.log_abs > peak) peak = v.log_abs;
        if (peak == -std::numeric_limits<double>::infinity()) {
            // all-zero row: determinant will be zero regardless of scale
            out.row_log_scales[i] = 0.0;
            out.scaled.row(i).setZero();
            continue;
        }
        if (row_jitter) peak += (*row_jitter)[i];
        out.row_log_scales[i] = peak;
        for (int j = 0; j < d; ++j) {
            const auto& v = entries[i][j];
            out.scaled(i, j) = v.sign == 0 ? 0.0 : v.sign * std::exp(v.log_abs - peak);
        }
    }
    return out;
}

Eigen::MatrixXcd cholesky_lower(const HermitianMatrix& M) {
    Eigen::LLT<Eigen::MatrixXcd> llt(M.entries);
    if (llt.info() != Eigen::Success)
        throw FactorizationError("cholesky_lower: matrix not positive definite");
    return llt.matrixL();
}

double hermitian_eig_max(const HermitianMatrix& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(M.entries,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("hermitian_eig_max: eigensolver failed");
    return solver.eigenvalues().maxCoeff();
}

LogScaledReal log_scaled_det(const ScaledSquareMatrix& M) {
    const int d = M.dim();
    Eigen::MatrixXd a = M.scaled;
    int sign = 1;
    double log_det = 0.0;
    for (int c = 0; c < d; ++c) {
        int piv = c;
        double best = std::fabs(a(c, c));
        for (int r = c + 1; r < d; ++r) {
            double v = std::fabs(a(r, c));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return LogScaledReal::zero();
        if (piv != c) {
            a.row(piv).swap(a.row(c));
            sign = -sign;
        }
        const double pivot = a(c, c);
        log_det += std::log(std::fabs(pivot));
        if (pivot < 0.0) sign = -sign;
        for (int r = c + 1; r < d; ++r) {
            const double f = a(r, c) / pivot;
            if (f != 0.0)
                a.row(r).tail(d - c - 1) -= f * a.row(c).tail(d - c - 1);
        }
    }
    return LogScaledReal::from_log(sign, log_det + M.row_log_scales.sum());
}

}  // namespace lrl
