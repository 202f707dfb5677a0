#pragma once

#include <vector>

#include "lrl/numerics.hpp"

namespace lrl {

// Dimensions of the two-Wishart ratio W1 W2^{-1}: m is the matrix dimension,
// p the degrees of freedom of the (possibly spiked) numerator, n those of the
// white denominator. Requires m <= p and m <= n.
struct EnsembleParams {
    int m = 0;
    int n = 0;
    int p = 0;

    int alpha() const { return n - m; }
    int beta() const { return p - m; }
    double kappa() const { return static_cast<double>(p) / n; }
    void validate() const;
};

// Rank-1 spike strength: the numerator Wishart has covariance I + eta uu*.
// eta = 0 is the white (null) case.
struct Spike {
    double eta = 0.0;
};

// CDF of the largest eigenvalue of W1 W2^{-1}, exact at finite (m, n, p).
//
// F(t; eta) = [K(m,p,alpha)/(p-1)!] (t/(1+t))^{m(alpha+beta+m)} (1+t)^p
//             * det[ Phi_i | Psi_{i,j} ],  i = 1..alpha+1, j = 2..alpha+1,
// where the first column carries the spike,
//   Phi_i = Q_i sum_{k=0}^{alpha-i+1} C(alpha-i+1, k)
//           (p+i-1)_k / (p+m+2i-2)_k * (eta t)^{k+i-1} / (1+eta+t)^{p+k+i-1},
//   Q_i   = (n+p+i-2)! (p+i-2)! / (p+m+2i-3)!,
// and the remaining columns are spike-free Jacobi values,
//   Psi_{i,j} = (m+i+beta-1)_{j-2} P^{(j-2, beta+j-2)}_{m+i-j}(2/t + 1),
//   K(m,p,alpha) = prod_{j=0}^{alpha-1} (p+m+j-1)!/(p+m+2j)!.
// (eta t)^0 at eta = 0 is 1, so the null case flows through the same path.
// At alpha = 0 the determinant is 1x1 and the whole expression collapses to
// the closed form below; the two paths must and do agree.
//
// Every entry is assembled as a LogScaledReal and the determinant is taken on
// row-scaled values, so the result keeps full relative accuracy into tails
// far below double range (the det is orders of magnitude smaller than its
// entries: each expansion term carries exactly one first-column factor, which
// cancels row scale rather than precision).
//
// Throws std::domain_error for t < 0 and NumericalError if the assembled
// probability leaves [0,1] by more than 1e-8 (it is clamped inside that band).
double cdf_max_eig(const EnsembleParams& params, const Spike& spike, double t);

// Closed form at alpha = 0 (n = m): (t/(1+t))^{mp} (1 + eta/(1+t))^{-p},
// evaluated in the log domain.
double cdf_max_eig_alpha0(int m, int p, double eta, double t);

// Joint density of the ordered eigenvalues 0 <= l1 <= ... <= lm of W1 W2^{-1}
// under the rank-1 spike, as the product of the white-Wishart part and the
// spike correction. Ties closer than 1e-9 are rejected (the correction term
// has removable singularities there); eta = 0 delegates to the null density.
double joint_density(const EnsembleParams& params, const Spike& spike,
                     const std::vector<double>& lambdas);

// White (eta = 0) joint density: K1 prod l_j^{p-m} (1+l_j)^{-(p+n)} * Vdm^2.
double null_joint_density(const EnsembleParams& params,
                          const std::vector<double>& lambdas);

// Quantile: the t with F(t; eta) = q, q in (0,1). Expanding bracket plus
// bisection on log t (F is strictly increasing), run until the result
// satisfies |F(t) - q| <= 1e-10. Throws NumericalError if no bracket is
// found within 200 doublings.
double cdf_inverse(const EnsembleParams& params, const Spike& spike, double q);

// Result of evaluating the CDF twice under different internal row scalings.
// A relative deviation beyond 1e-6 marks the value as suspect; in the tested
// domain this never fires, but callers probing extreme parameters get a
// diagnostic instead of silent noise.
struct CdfPrecisionReport {
    double value = 0.0;
    double perturbed = 0.0;
    bool suspect = false;
};
CdfPrecisionReport cdf_max_eig_checked(const EnsembleParams& params,
                                       const Spike& spike, double t);

namespace testing {
// Fault-injection hook for the validation suite: multiplies the CDF
// normalization constant by (1 + value). Zero in normal operation.
extern double normalization_tamper;
}  // namespace testing

}  // namespace lrl
