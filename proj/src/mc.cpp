#include "lrl/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace lrl {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
    std::array<std::uint32_t, 4> x = counter;
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMult0, x[0], hi0, lo0);
        mulhilo(kMult1, x[2], hi1, lo1);
        x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
    }
    return x;
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      trial_(trial) {}

void TrialStream::refill() {
    const std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(trial_), static_cast<std::uint32_t>(trial_ >> 32)};
    buf_ = philox4x32(counter, key_);
    ++block_;
    used_ = 0;
}

double TrialStream::uniform() {
    if (used_ == 2) refill();
    const std::uint64_t bits =
        used_ == 0 ? (static_cast<std::uint64_t>(buf_[0]) << 32) | buf_[1]
                   : (static_cast<std::uint64_t>(buf_[2]) << 32) | buf_[3];
    ++used_;
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::complex<double> TrialStream::gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

void SimConfig::validate() const {
    ensemble.validate();
    if (eta < 0.0) throw std::domain_error("SimConfig: eta < 0");
    if (trials < 1) throw std::domain_error("SimConfig: trials < 1");
    if (spike_direction) {
        if (spike_direction->size() != ensemble.m)
            throw std::domain_error("SimConfig: spike direction has wrong length");
        if (std::fabs(spike_direction->norm() - 1.0) > 1e-12)
            throw std::domain_error("SimConfig: spike direction is not a unit vector");
    }
}

Eigen::MatrixXcd sample_complex_gaussian(TrialStream& rng, int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::domain_error("sample_complex_gaussian: empty shape");
    Eigen::MatrixXcd g(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) g(r, c) = rng.gaussian();
    return g;
}

HermitianMatrix sample_spiked_wishart(TrialStream& rng, int m, int dof,
                                      double eta, const Eigen::VectorXcd& u) {
    if (dof < m)
        throw std::domain_error("sample_spiked_wishart: dof < m gives a singular W");
    if (eta < 0.0) throw std::domain_error("sample_spiked_wishart: eta < 0");
    if (u.size() != m || std::fabs(u.norm() - 1.0) > 1e-12)
        throw std::domain_error("sample_spiked_wishart: u must be a unit m-vector");
    Eigen::MatrixXcd a = sample_complex_gaussian(rng, m, dof);
    if (eta > 0.0) {
        const double c = std::sqrt(1.0 + eta) - 1.0;
        a += c * u * (u.adjoint() * a);
    }
    Eigen::MatrixXcd w = a * a.adjoint();
    // Exactly hermitize before the checked constructor: the product is
    // Hermitian up to rounding, and for heavy-tail draws the absolute
    // asymmetry can brush against the constructor's tolerance.
    return HermitianMatrix(0.5 * (w + w.adjoint().eval()));
}

double max_whitened_eig(const HermitianMatrix& w1, const HermitianMatrix& w2) {
    const Eigen::MatrixXcd l = cholesky_lower(w2);
    const auto lt = l.triangularView<Eigen::Lower>();
    Eigen::MatrixXcd half = lt.solve(w1.entries);                 // L^{-1} W1
    Eigen::MatrixXcd b = lt.solve(half.adjoint().eval()).adjoint();  // ... L^{-*}
    return hermitian_eig_max(HermitianMatrix(0.5 * (b + b.adjoint().eval())));
}

EigSampleSet simulate_max_eig(const SimConfig& config, int threads) {
    config.validate();
    const int m = config.ensemble.m;
    Eigen::VectorXcd u;
    if (config.spike_direction) {
        u = *config.spike_direction;
    } else {
        u = Eigen::VectorXcd::Zero(m);
        u(0) = 1.0;
    }

    EigSampleSet out;
    out.config = config;
    out.values.assign(static_cast<std::size_t>(config.trials), 0.0);

    auto run_trial = [&](long i) {
        TrialStream rng(config.seed, static_cast<std::uint64_t>(i));
        const HermitianMatrix w1 =
            sample_spiked_wishart(rng, m, config.ensemble.p, config.eta, u);
        const HermitianMatrix w2 =
            sample_spiked_wishart(rng, m, config.ensemble.n, 0.0, u);
        out.values[static_cast<std::size_t>(i)] = max_whitened_eig(w1, w2);
    };

    const int nworkers =
        static_cast<int>(std::min<long>(std::max(1, threads), config.trials));
    if (nworkers == 1) {
        for (long i = 0; i < config.trials; ++i) run_trial(i);
        return out;
    }

    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) {
        pool.emplace_back([&] {
            try {
                for (long i = next.fetch_add(1); i < config.trials;
                     i = next.fetch_add(1))
                    run_trial(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

double empirical_cdf(const EigSampleSet& samples, double t) {
    if (samples.values.empty())
        throw std::domain_error("empirical_cdf: empty sample set");
    std::vector<double> sorted = samples.values;
    std::sort(sorted.begin(), sorted.end());
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
    return static_cast<double>(it - sorted.begin()) /
           static_cast<double>(sorted.size());
}

double ks_statistic(const EigSampleSet& samples,
                    const std::function<double(double)>& analytic_cdf) {
    if (samples.values.empty())
        throw std::domain_error("ks_statistic: empty sample set");
    std::vector<double> sorted = samples.values;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = analytic_cdf(sorted[i]);
        if (!(f >= 0.0 && f <= 1.0))
            throw NumericalError("ks_statistic: reference CDF left [0,1]");
        const double below = static_cast<double>(i + 1) / n - f;
        const double above = f - static_cast<double>(i) / n;
        ks = std::max(ks, std::max(below, above));
    }
    return ks;
}

}  // namespace lrl
