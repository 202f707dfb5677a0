#include "lrl/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrl {

double db_to_gamma(double db) { return std::pow(10.0, db / 10.0); }

double gamma_to_db(double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("gamma_to_db: gamma must be > 0");
    return 10.0 * std::log10(gamma);
}

double detection_probability(const DetectorParams& dp, double mu_th) {
    if (!(mu_th > 0.0)) throw std::domain_error("detection_probability: mu_th <= 0");
    return 1.0 - cdf_max_eig(dp.ensemble, Spike{dp.gamma}, dp.kappa() * mu_th);
}

double false_alarm_probability(const DetectorParams& dp, double mu_th) {
    DetectorParams null = dp;
    null.gamma = 0.0;
    return detection_probability(null, mu_th);
}

double threshold_for_pf(const DetectorParams& dp, double target_pf) {
    if (!(target_pf > 0.0 && target_pf < 1.0))
        throw std::domain_error("threshold_for_pf: target P_F must lie in (0,1)");
    // P_F(mu) = 1 - F(kappa mu; 0), so invert the null CDF at 1 - target.
    return cdf_inverse(dp.ensemble, Spike{0.0}, 1.0 - target_pf) / dp.kappa();
}

RocCurve roc_curve(const DetectorParams& dp, const std::vector<double>& pf_grid) {
    if (!std::is_sorted(pf_grid.begin(), pf_grid.end()))
        throw std::domain_error("roc_curve: pf_grid must be sorted ascending");
    RocCurve curve;
    curve.reserve(pf_grid.size());
    for (double q : pf_grid) {
        RocPoint pt;
        pt.threshold = threshold_for_pf(dp, q);
        pt.p_f = false_alarm_probability(dp, pt.threshold);
        pt.p_d = detection_probability(dp, pt.threshold);
        curve.push_back(pt);
    }
    return curve;
}

double roc_balanced(int m, int p, double gamma, double pf) {
    if (m < 1 || p < 1) throw std::domain_error("roc_balanced: m, p must be >= 1");
    if (gamma < 0.0) throw std::domain_error("roc_balanced: gamma < 0");
    if (!(pf >= 0.0 && pf <= 1.0)) throw std::domain_error("roc_balanced: pf outside [0,1]");
    if (pf == 1.0) return 1.0;
    const double miss = 1.0 - pf;
    const double u = std::pow(miss, 1.0 / (static_cast<double>(m) * p));
    return 1.0 - miss / std::pow(1.0 + gamma * (1.0 - u), p);
}

PBounds optimal_p_bounds(double pf, double gamma, double nu) {
    if (!(pf > 0.0 && pf < 1.0))
        throw std::domain_error("optimal_p_bounds: pf must lie in (0,1)");
    if (!(gamma > 0.0)) throw std::domain_error("optimal_p_bounds: gamma must be > 0");
    if (!(nu > 0.0)) throw std::domain_error("optimal_p_bounds: nu must be > 0");
    const double big_l = -std::log1p(-pf);
    PBounds b;
    b.lower = std::sqrt(big_l / (2.0 * nu * std::log((gamma + 4.0) / (gamma + 2.0))));
    b.upper = std::sqrt(big_l / (2.0 * nu * std::log((gamma + 2.0) / (gamma + 1.0))));
    return b;
}

double optimal_p_approx(double pf, double gamma, double nu) {
    const PBounds b = optimal_p_bounds(pf, gamma, nu);
    return 0.5 * (b.lower + b.upper);
}

OptimalP optimal_p_exact(double pf, double gamma, double nu) {
    const PBounds b = optimal_p_bounds(pf, gamma, nu);
    if (!std::isfinite(b.upper))
        throw NumericalError("optimal_p_exact: unbounded search range");
    const long p_max = std::max(1L, static_cast<long>(std::ceil(4.0 * b.upper)));
    OptimalP best;
    best.p_d_max = -1.0;
    for (long p = 1; p <= p_max; ++p) {
        const long m = std::max(1L, std::lround(nu * static_cast<double>(p)));
        const double pd = roc_balanced(static_cast<int>(m), static_cast<int>(p), gamma, pf);
        if (pd > best.p_d_max) {
            best.p_d_max = pd;
            best.p_star = p;
        }
    }
    return best;
}

}  // namespace lrl
