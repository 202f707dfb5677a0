#include "lrl/rmt_cdf.hpp"

#include <algorithm>
#include <cmath>

#include "lrl/special_functions.hpp"

namespace lrl {

namespace testing {
double normalization_tamper = 0.0;
}

void EnsembleParams::validate() const {
    if (m < 1 || n < 1 || p < 1)
        throw std::domain_error("EnsembleParams: dimensions must be positive");
    if (m > n || m > p)
        throw std::domain_error("EnsembleParams: need m <= n and m <= p");
}

namespace {

// log of the rising factorial (a)_k for a > 0; entries in the CDF matrix only
// ever shift positive integers.
double ln_rising(double a, long k) {
    double s = 0.0;
    for (long i = 0; i < k; ++i) s += std::log(a + static_cast<double>(i));
    return s;
}

// First (spike) column entry, all factors positive:
//   Phi_i = Q_i sum_k C(alpha-i+1,k) (p+i-1)_k/(p+m+2i-2)_k
//                (eta t)^{k+i-1} / (1+eta+t)^{p+k+i-1}.
// At eta = 0 only the (eta t)^0 term of row i=1 survives, handled by skipping
// the vanished terms instead of evaluating log(0).
LogScaledReal phi_entry(int m, int p, int alpha, int i, double eta, double t) {
    const double log_t = std::log(t);
    const double log_mix = std::log1p(eta + t);  // ln(1 + eta + t)
    std::vector<LogScaledReal> terms;
    for (long k = 0; k <= alpha - i + 1; ++k) {
        const long spike_pow = k + i - 1;
        if (eta == 0.0 && spike_pow > 0) continue;
        double la = ln_binomial(alpha - i + 1, k)
                  + ln_rising(p + i - 1, k) - ln_rising(p + m + 2 * i - 2, k)
                  - (p + k + i - 1) * log_mix;
        if (spike_pow > 0) la += spike_pow * (std::log(eta) + log_t);
        terms.push_back(LogScaledReal::from_log(1, la));
    }
    LogScaledReal sum = log_scaled_sum(terms);
    const double log_q = ln_factorial(p + alpha + m + i - 2)  // (n+p+i-2)!
                       + ln_factorial(p + i - 2) - ln_factorial(p + m + 2 * i - 3);
    return sum * LogScaledReal::from_log(1, log_q);
}

double assemble_cdf(const EnsembleParams& pr, double eta, double t,
                    bool perturb_scaling = false) {
    const int m = pr.m, p = pr.p;
    const int alpha = pr.alpha(), beta = pr.beta();
    const int dim = alpha + 1;
    const double x = 2.0 / t + 1.0;

    std::vector<std::vector<LogScaledReal>> entries(
        dim, std::vector<LogScaledReal>(dim));
    for (int i = 1; i <= dim; ++i) {
        entries[i - 1][0] = phi_entry(m, p, alpha, i, eta, t);
        for (int j = 2; j <= dim; ++j)
            entries[i - 1][j - 1] =
                pochhammer(m + i + beta - 1, j - 2) *
                jacobi_poly(m + i - j, j - 2, beta + j - 2, x);
    }

    LogScaledReal det;
    if (perturb_scaling) {
        // Same matrix, different scale split: the stored floats and the LU
        // pivot choices change, the mathematical determinant does not.
        std::vector<double> jitter(dim);
        for (int i = 0; i < dim; ++i) jitter[i] = 0.25 * (i % 3 - 1);
        det = log_scaled_det(ScaledSquareMatrix::from_log_entries(entries, &jitter));
    } else {
        det = log_scaled_det(ScaledSquareMatrix::from_log_entries(entries));
    }
    if (det.sign == 0) return 0.0;

    // prefactor K(m,p,alpha)/(p-1)! * (t/(1+t))^{m(alpha+beta+m)} * (1+t)^p
    double log_pre = -ln_factorial(p - 1);
    for (int j = 0; j < alpha; ++j)
        log_pre += ln_factorial(p + m + j - 1) - ln_factorial(p + m + 2 * j);
    const double log_c = std::log(t) - std::log1p(t);
    log_pre += static_cast<double>(m) * (alpha + beta + m) * log_c
             + p * std::log1p(t);
    if (testing::normalization_tamper != 0.0)
        log_pre += std::log1p(testing::normalization_tamper);

    return det.sign * std::exp(det.log_abs + log_pre);
}

double clamp_probability(double v, const char* what) {
    constexpr double band = 1e-8;
    if (v < -band || v > 1.0 + band)
        throw NumericalError(std::string(what) + ": value " + std::to_string(v) +
                             " outside [0,1] beyond tolerance");
    return std::min(1.0, std::max(0.0, v));
}

}  // namespace

double cdf_max_eig(const EnsembleParams& params, const Spike& spike, double t) {
    params.validate();
    if (spike.eta < 0.0) throw std::domain_error("cdf_max_eig: eta < 0");
    if (t < 0.0) throw std::domain_error("cdf_max_eig: t < 0");
    if (t < 1e-12) return 0.0;  // F(0) = 0; also keeps x = 2/t + 1 finite
    return clamp_probability(assemble_cdf(params, spike.eta, t), "cdf_max_eig");
}

double cdf_max_eig_alpha0(int m, int p, double eta, double t) {
    if (m < 1 || p < m) throw std::domain_error("cdf_max_eig_alpha0: bad dims");
    if (eta < 0.0 || t < 0.0) throw std::domain_error("cdf_max_eig_alpha0: bad domain");
    if (t < 1e-12) return 0.0;
    const double log_f = static_cast<double>(m) * p * (std::log(t) - std::log1p(t))
                       - p * std::log1p(eta / (1.0 + t));
    return clamp_probability(std::exp(log_f), "cdf_max_eig_alpha0");
}

namespace {

void check_ordered(const std::vector<double>& l, int m) {
    if (static_cast<int>(l.size()) != m)
        throw std::domain_error("joint density: expected m eigenvalues");
    for (int i = 0; i < m; ++i) {
        if (l[i] < 0.0) throw std::domain_error("joint density: negative eigenvalue");
        if (i > 0 && l[i] < l[i - 1])
            throw std::domain_error("joint density: eigenvalues not ascending");
    }
}

}  // namespace

double null_joint_density(const EnsembleParams& params,
                          const std::vector<double>& lambdas) {
    params.validate();
    const int m = params.m, n = params.n, p = params.p;
    check_ordered(lambdas, m);

    double log_k1 = 0.0;
    for (int j = 1; j <= m; ++j)
        log_k1 += ln_factorial(n + p - j) - ln_factorial(m - j) -
                  ln_factorial(n - j) - ln_factorial(p - j);

    double log_f = log_k1;
    for (double l : lambdas) {
        if (l == 0.0) {
            if (p > m) return 0.0;
            log_f -= (p + n) * std::log1p(l);  // l^0 = 1, skip 0*log(0)
            continue;
        }
        log_f += (p - m) * std::log(l) - (p + n) * std::log1p(l);
    }
    double vandermonde = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) vandermonde *= lambdas[j] - lambdas[i];
    if (vandermonde == 0.0) return 0.0;
    return std::exp(log_f) * vandermonde * vandermonde;
}

double joint_density(const EnsembleParams& params, const Spike& spike,
                     const std::vector<double>& lambdas) {
    params.validate();
    if (spike.eta < 0.0) throw std::domain_error("joint_density: eta < 0");
    if (spike.eta == 0.0) return null_joint_density(params, lambdas);
    const int m = params.m, n = params.n, p = params.p;
    check_ordered(lambdas, m);
    for (int i = 1; i < m; ++i)
        if (lambdas[i] - lambdas[i - 1] < 1e-9)
            throw std::domain_error(
                "joint_density: tied eigenvalues (removable singularity not "
                "evaluated; perturb the inputs)");

    const double eta = spike.eta;
    const double f_uc = null_joint_density(params, lambdas);
    if (f_uc == 0.0) return 0.0;

    // Spike correction: K2/(eta^{m-1} (1+eta)^{p+1-m}) prod_j (1+l_j)
    //   * sum_k (1+l_k)^{p+n-1} / [prod_{j!=k}(l_k-l_j) (1+l_k/(1+eta))^{p+n+1-m}]
    const double log_k2 = ln_factorial(m - 1) + ln_factorial(p + n - m) -
                          ln_factorial(p + n - 1);
    std::vector<LogScaledReal> sum_terms;
    sum_terms.reserve(m);
    for (int k = 0; k < m; ++k) {
        double la = (p + n - 1) * std::log1p(lambdas[k]) -
                    (p + n + 1 - m) * std::log1p(lambdas[k] / (1.0 + eta));
        int sign = 1;
        for (int j = 0; j < m; ++j) {
            if (j == k) continue;
            const double d = lambdas[k] - lambdas[j];
            la -= std::log(std::fabs(d));
            if (d < 0.0) sign = -sign;
        }
        sum_terms.push_back(LogScaledReal::from_log(sign, la));
    }
    LogScaledReal s = log_scaled_sum(sum_terms);

    double log_cor = log_k2 - (m - 1) * std::log(eta) - (p + 1 - m) * std::log1p(eta);
    for (double l : lambdas) log_cor += std::log1p(l);
    const double f_cor = s.sign * std::exp(s.log_abs + log_cor);
    return f_uc * f_cor;
}

double cdf_inverse(const EnsembleParams& params, const Spike& spike, double q) {
    params.validate();
    if (spike.eta < 0.0) throw std::domain_error("cdf_inverse: eta < 0");
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("cdf_inverse: q must lie in (0,1)");

    // Seed from the balanced-case closed form, stretched by the spike scale.
    const double mp = static_cast<double>(params.m) * params.p;
    const double u = std::pow(q, 1.0 / mp);
    double seed = u / (1.0 - u) * (1.0 + spike.eta);
    if (!(seed > 0.0) || !std::isfinite(seed)) seed = 1.0;

    auto excess = [&](double t) { return cdf_max_eig(params, spike, t) - q; };

    double lo = seed, hi = seed;
    int steps = 0;
    while (excess(lo) > 0.0) {
        lo *= 0.5;
        if (++steps > 200)
            throw NumericalError("cdf_inverse: no lower bracket after 200 halvings");
    }
    steps = 0;
    while (excess(hi) < 0.0) {
        hi *= 2.0;
        if (++steps > 200)
            throw NumericalError("cdf_inverse: no upper bracket after 200 doublings");
    }

    double llo = std::log(lo), lhi = std::log(hi);
    double lmid = 0.5 * (llo + lhi);
    double g = excess(std::exp(lmid));
    while ((lhi - llo > 1e-12 || std::fabs(g) > 1e-10) && lhi - llo > 1e-15) {
        if (g < 0.0)
            llo = lmid;
        else
            lhi = lmid;
        lmid = 0.5 * (llo + lhi);
        g = excess(std::exp(lmid));
    }
    if (std::fabs(g) > 1e-10)
        throw NumericalError("cdf_inverse: quantile tolerance not reached");
    return std::exp(lmid);
}

CdfPrecisionReport cdf_max_eig_checked(const EnsembleParams& params,
                                       const Spike& spike, double t) {
    params.validate();
    if (spike.eta < 0.0 || t < 0.0)
        throw std::domain_error("cdf_max_eig_checked: bad domain");
    CdfPrecisionReport r;
    if (t < 1e-12) return r;  // exact zero either way
    r.value = clamp_probability(assemble_cdf(params, spike.eta, t),
                                "cdf_max_eig_checked");
    r.perturbed = clamp_probability(assemble_cdf(params, spike.eta, t, true),
                                    "cdf_max_eig_checked");
    const double scale = std::max({std::fabs(r.value), std::fabs(r.perturbed), 1e-300});
    r.suspect = std::fabs(r.value - r.perturbed) / scale > 1e-6;
    return r;
}

}  // namespace lrl
