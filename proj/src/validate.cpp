#include "lrl/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <initializer_list>

#include "lrl/detector.hpp"
#include "lrl/mc.hpp"
#include "lrl/rmt_cdf.hpp"

namespace lrl {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

double simpson_step(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Runs one check body, timing it and converting exceptions into failures so
// a broken configuration cannot abort the rest of the table.
void run_check(std::vector<CheckResult>& results, const std::string& name,
               double bound, const std::function<void(CheckResult&)>& body) {
    Timer tm;
    CheckResult r;
    r.name = name;
    r.bound = bound;
    try {
        body(r);
        r.pass = r.metric <= r.bound && r.note.empty();
    } catch (const std::exception& e) {
        r.pass = false;
        r.note = e.what();
    }
    r.seconds = tm.elapsed();
    results.push_back(std::move(r));
}

// 19-point uniform false-alarm grid 0.05..0.95.
std::vector<double> pf_grid19() {
    std::vector<double> g;
    for (int i = 1; i <= 19; ++i) g.push_back(i / 20.0);
    return g;
}

}  // namespace

std::vector<CheckResult> run_validation(ValidateLevel level, int threads,
                                        std::uint64_t seed) {
    std::vector<CheckResult> results;
    const bool full = level == ValidateLevel::full;
    const long ks_trials = full ? 200000 : 20000;
    // Kolmogorov 99% quantile is 1.63/sqrt(N); both bounds leave slack.
    const double ks_bound = full ? 0.01 : 0.015;

    run_check(results, "general path matches closed form at m = n", 1e-9,
              [&](CheckResult& r) {
                  for (int m : {1, 2, 4}) {
                      for (int p = m; p <= m + 3; ++p) {
                          for (double eta : {0.0, 1.0, 5.0}) {
                              for (int k = 0; k < 10; ++k) {
                                  const double t =
                                      std::pow(10.0, -2.0 + 4.0 * k / 9.0);
                                  const double a = cdf_max_eig(
                                      EnsembleParams{m, m, p}, Spike{eta}, t);
                                  const double b = cdf_max_eig_alpha0(m, p, eta, t);
                                  const double rel = std::fabs(a - b) /
                                                     std::max(std::fabs(b), 1e-300);
                                  r.metric = std::max(r.metric, rel);
                              }
                          }
                      }
                  }
              });

    run_check(results, "cdf nondecreasing and bounded on a log t grid", 1e-12,
              [&](CheckResult& r) {
                  const EnsembleParams pr{2, 3, 4};
                  double prev = 0.0;
                  for (int k = 0; k < 400; ++k) {
                      const double t = std::pow(10.0, -3.0 + 6.0 * k / 399.0);
                      const double f = cdf_max_eig(pr, Spike{2.0}, t);
                      if (f < 0.0 || f > 1.0) r.metric = std::max(r.metric, 1.0);
                      r.metric = std::max(r.metric, prev - f);
                      prev = f;
                  }
              });

    run_check(results, "cdf nonincreasing in the spike strength", 1e-12,
              [&](CheckResult& r) {
                  const EnsembleParams pr{3, 5, 6};
                  for (double t : {0.5, 2.0, 8.0}) {
                      double prev = 2.0;
                      for (double eta : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
                          const double f = cdf_max_eig(pr, Spike{eta}, t);
                          r.metric = std::max(r.metric, f - prev);
                          prev = f;
                      }
                  }
              });

    run_check(results, "spiked path continuous at eta -> 0", 1e-5,
              [&](CheckResult& r) {
                  const EnsembleParams pr{2, 4, 4};
                  for (double t : {0.5, 1.0, 2.0, 5.0}) {
                      const double a = cdf_max_eig(pr, Spike{1e-7}, t);
                      const double b = cdf_max_eig(pr, Spike{0.0}, t);
                      r.metric = std::max(r.metric, std::fabs(a - b));
                  }
              });

    run_check(results, "threshold round trip hits the target P_F", 1e-10,
              [&](CheckResult& r) {
                  const DetectorParams dp{EnsembleParams{2, 4, 3},
                                          db_to_gamma(5.0)};
                  for (double q : {0.01, 0.1, 0.5, 0.9}) {
                      const double mu = threshold_for_pf(dp, q);
                      r.metric = std::max(
                          r.metric, std::fabs(false_alarm_probability(dp, mu) - q));
                  }
              });

    run_check(results, "balanced closed-form ROC matches the threshold path", 1e-8,
              [&](CheckResult& r) {
                  const DetectorParams dp{EnsembleParams{3, 3, 3}, 3.162};
                  for (double q : {0.1, 0.5, 0.9}) {
                      const double mu = threshold_for_pf(dp, q);
                      const double via_threshold = detection_probability(dp, mu);
                      const double closed = roc_balanced(
                          3, 3, dp.gamma, false_alarm_probability(dp, mu));
                      r.metric =
                          std::max(r.metric, std::fabs(via_threshold - closed));
                  }
              });

    run_check(results, "P_D nondecreasing in SNR at fixed P_F", 1e-12,
              [&](CheckResult& r) {
                  const EnsembleParams pr{2, 4, 4};
                  double prev = -1.0;
                  for (double gamma : {0.0, 1.0, 3.162, 10.0}) {
                      const DetectorParams dp{pr, gamma};
                      const double mu = threshold_for_pf(dp, 0.3);
                      const double pd = detection_probability(dp, mu);
                      r.metric = std::max(r.metric, prev - pd);
                      prev = pd;
                  }
              });

    run_check(results, "analytic ROC ordered in SNR at (5,8,10)", 1e-12,
              [&](CheckResult& r) {
                  const EnsembleParams pr{5, 8, 10};
                  for (double q : pf_grid19()) {
                      const double mu =
                          threshold_for_pf(DetectorParams{pr, 0.0}, q);
                      double prev = -1.0;
                      for (double db : {0.0, 5.0, 10.0}) {
                          const double pd = detection_probability(
                              DetectorParams{pr, db_to_gamma(db)}, mu);
                          r.metric = std::max(r.metric, prev - pd);
                          prev = pd;
                      }
                  }
              });

    run_check(results, "cdf stable under perturbed internal scaling", 1e-6,
              [&](CheckResult& r) {
                  struct Probe {
                      EnsembleParams pr;
                      double eta;
                      double t;
                  };
                  const Probe probes[] = {
                      {{2, 4, 4}, 2.0, 0.2},     {{2, 4, 4}, 2.0, 5.0},
                      {{2, 5, 2}, 1.0, 1.0},     {{2, 5, 2}, 1.0, 5.0},
                      {{5, 8, 10}, 3.1623, 1.0}, {{5, 8, 10}, 3.1623, 3.0}};
                  for (const auto& probe : probes) {
                      const CdfPrecisionReport rep =
                          cdf_max_eig_checked(probe.pr, Spike{probe.eta}, probe.t);
                      const double scale = std::max(
                          {std::fabs(rep.value), std::fabs(rep.perturbed), 1e-300});
                      r.metric = std::max(
                          r.metric, std::fabs(rep.value - rep.perturbed) / scale);
                      if (rep.suspect) r.note = "precision hook flagged a probe";
                  }
              });

    run_check(results, "scalar density integrates to one", 1e-4,
              [&](CheckResult& r) {
                  const EnsembleParams pr{1, 3, 4};
                  auto density = [&](double x) {
                      if (x <= 0.0 || x >= 1.0) return 0.0;
                      const double lambda = x / (1.0 - x);
                      const double jac = 1.0 / ((1.0 - x) * (1.0 - x));
                      return joint_density(pr, Spike{2.0}, {lambda}) * jac;
                  };
                  const double mass = integrate(density, 0.0, 1.0, 1e-8);
                  r.metric = std::fabs(mass - 1.0);
              });

    run_check(results, "scalar cdf derivative matches the density", 1e-5,
              [&](CheckResult& r) {
                  const EnsembleParams pr{1, 3, 4};
                  const Spike spike{2.0};
                  for (double t : {0.5, 1.0, 2.0}) {
                      const double h = 1e-5 * t;
                      const double deriv = (cdf_max_eig(pr, spike, t + h) -
                                            cdf_max_eig(pr, spike, t - h)) /
                                           (2.0 * h);
                      const double dens = joint_density(pr, spike, {t});
                      r.metric =
                          std::max(r.metric, std::fabs(deriv - dens) / dens);
                  }
              });

    struct KsCase {
        EnsembleParams pr;
        double eta;
        bool full_only;
    };
    const KsCase ks_cases[] = {{{2, 4, 4}, 2.0, false},
                               {{2, 5, 2}, 1.0, false},
                               {{2, 4, 4}, 0.0, true},
                               {{3, 5, 6}, 10.0, true}};
    int ks_index = 0;
    for (const auto& kc : ks_cases) {
        ++ks_index;
        if (kc.full_only && !full) continue;
        const std::string name =
            "KS simulated vs analytic (" + std::to_string(kc.pr.m) + "," +
            std::to_string(kc.pr.n) + "," + std::to_string(kc.pr.p) +
            "), eta=" + std::to_string(kc.eta).substr(0, 4);
        run_check(results, name, ks_bound, [&, ks_index](CheckResult& r) {
            SimConfig cfg;
            cfg.ensemble = kc.pr;
            cfg.eta = kc.eta;
            cfg.trials = ks_trials;
            cfg.seed = seed + static_cast<std::uint64_t>(ks_index);
            const EigSampleSet draws = simulate_max_eig(cfg, threads);
            r.metric = ks_statistic(draws, [&](double t) {
                return cdf_max_eig(kc.pr, Spike{kc.eta}, t);
            });
        });
    }

    if (full) {
        run_check(results, "empirical ROC matches analytic at (5,8,10)", 0.01,
                  [&](CheckResult& r) {
                      const EnsembleParams pr{5, 8, 10};
                      const auto grid = pf_grid19();

                      std::vector<double> thresholds;
                      for (double q : grid)
                          thresholds.push_back(
                              threshold_for_pf(DetectorParams{pr, 0.0}, q));

                      // One null run shared across SNRs, one spiked run per
                      // SNR; empirical exceedance rates at kappa * mu compare
                      // against the analytic curve.
                      auto exceed_rate = [&](const EigSampleSet& draws, double mu) {
                          return 1.0 - empirical_cdf(draws, pr.kappa() * mu);
                      };
                      SimConfig null_cfg;
                      null_cfg.ensemble = pr;
                      null_cfg.eta = 0.0;
                      null_cfg.trials = 200000;
                      null_cfg.seed = seed + 101;
                      const EigSampleSet h0 = simulate_max_eig(null_cfg, threads);
                      for (std::size_t i = 0; i < grid.size(); ++i)
                          r.metric = std::max(
                              r.metric,
                              std::fabs(exceed_rate(h0, thresholds[i]) - grid[i]));
                      int run = 0;
                      for (double db : {5.0, 10.0}) {
                          const double gamma = db_to_gamma(db);
                          SimConfig cfg = null_cfg;
                          cfg.eta = gamma;
                          cfg.seed = seed + 102 + static_cast<std::uint64_t>(run++);
                          const EigSampleSet h1 = simulate_max_eig(cfg, threads);
                          for (std::size_t i = 0; i < grid.size(); ++i) {
                              const double analytic = detection_probability(
                                  DetectorParams{pr, gamma}, thresholds[i]);
                              r.metric = std::max(
                                  r.metric, std::fabs(exceed_rate(h1, thresholds[i]) -
                                                      analytic));
                          }
                      }
                  });
    }

    return results;
}

}  // namespace lrl
