#pragma once

#include <vector>

#include "lrl/rmt_cdf.hpp"

namespace lrl {

// SNR conversions: gamma is a power ratio, so dB = 10 log10(gamma).
double db_to_gamma(double db);
double gamma_to_db(double gamma);

// Detection setup: the test statistic is the largest eigenvalue of the
// whitened sample covariance, whose CDF at threshold mu is the ensemble CDF
// at kappa * mu with kappa = p/n (the two sample-count normalizations cancel
// up to that one factor). gamma plays the role of the spike eta under H1.
struct DetectorParams {
    EnsembleParams ensemble;
    double gamma = 0.0;  // linear SNR

    double kappa() const { return ensemble.kappa(); }
};

struct RocPoint {
    double threshold = 0.0;
    double p_f = 0.0;
    double p_d = 0.0;
};
using RocCurve = std::vector<RocPoint>;

// P_D = 1 - F(kappa mu_th; gamma) and P_F = 1 - F(kappa mu_th; 0).
double detection_probability(const DetectorParams& dp, double mu_th);
double false_alarm_probability(const DetectorParams& dp, double mu_th);

// Threshold with |P_F(mu) - target| <= 1e-10, via the null-CDF quantile
// (expanding bracket plus log-domain bisection in cdf_inverse).
double threshold_for_pf(const DetectorParams& dp, double target_pf);

// One (threshold, P_F, P_D) row per requested false-alarm level.
// pf_grid must be sorted ascending, all values in (0,1).
RocCurve roc_curve(const DetectorParams& dp, const std::vector<double>& pf_grid);

// Balanced-case (m = n) closed-form ROC:
//   P_D = 1 - (1-pf) / (1 + gamma - gamma (1-pf)^{1/(mp)})^p.
double roc_balanced(int m, int p, double gamma, double pf);

// Bracket for the continuous sample count maximizing roc_balanced with
// m = nu p held at a fixed ratio (balanced case, real-valued p):
//   lower = sqrt(-ln(1-pf) / (2 nu ln((gamma+4)/(gamma+2)))),
//   upper = sqrt(-ln(1-pf) / (2 nu ln((gamma+2)/(gamma+1)))).
// lower < upper reduces to (gamma+4)(gamma+1) > (gamma+2)^2, i.e. gamma > 0.
// The stationary point of P_D(p) satisfies, in s = -ln(1-pf)/(nu p^2),
//   (1+A) ln(1+A) = 2 s gamma e^{-s},  A = gamma (1 - e^{-s}),
// and lies inside this bracket for all gamma above about -3.5 dB (checked by
// scan; containment depends on gamma only since pf and nu scale out).
struct PBounds {
    double lower = 0.0;
    double upper = 0.0;
};
PBounds optimal_p_bounds(double pf, double gamma, double nu);

// Midpoint of the bracket; any convex combination is a valid approximation
// and the midpoint keeps the worst-case relative error symmetric.
double optimal_p_approx(double pf, double gamma, double nu);

// Exhaustive integer search over p in [1, ceil(4 upper)] with m = round(nu p)
// floored at 1; smallest p wins ties (cheaper sampling at equal power).
struct OptimalP {
    long p_star = 1;
    double p_d_max = 0.0;
};
OptimalP optimal_p_exact(double pf, double gamma, double nu);

}  // namespace lrl
