#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lrl/numerics.hpp"
#include "lrl/rmt_cdf.hpp"

namespace lrl {

// Counter-based RNG core: Philox4x32 with 10 rounds. One call encrypts a
// 128-bit counter under a 64-bit key, so distinct (key, counter) pairs give
// statistically independent blocks and per-trial substreams come for free;
// thread scheduling cannot perturb the stream. Matches the published test
// vectors (checked in the unit tests).
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

// Stream view over the generator for one (seed, trial) pair. Counter layout:
// words 0-1 hold the running block index, words 2-3 the trial index; the key
// is the seed. Each 128-bit block yields two doubles.
class TrialStream {
  public:
    TrialStream(std::uint64_t seed, std::uint64_t trial);

    // Uniform on (0,1): top 53 bits of a 64-bit draw, offset by half an ulp
    // so 0 and 1 are unreachable and log() downstream stays finite.
    double uniform();

    // Standard complex Gaussian CN(0,1): real and imaginary parts are
    // independent N(0, 1/2), via the exact Box-Muller transform.
    std::complex<double> gaussian();

  private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t trial_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int used_ = 2;  // uniforms consumed from buf_; 2 means exhausted
};

struct SimConfig {
    EnsembleParams ensemble;
    double eta = 0.0;
    // Unit spike direction; unset means the first basis vector (the default
    // every caller wants; unitary invariance is property-tested separately).
    std::optional<Eigen::VectorXcd> spike_direction;
    long trials = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

// One draw of the largest whitened eigenvalue per trial, stored by trial
// index so aggregation order (and hence thread count) cannot change it.
struct EigSampleSet {
    std::vector<double> values;
    SimConfig config;
};

// rows x cols matrix of i.i.d. CN(0,1) entries, filled column-major.
Eigen::MatrixXcd sample_complex_gaussian(TrialStream& rng, int rows, int cols);

// W = A A* with A = (I + (sqrt(1+eta)-1) uu*) G, G an m x dof standard
// complex Gaussian: W ~ CW_m(dof, I + eta uu*). The square root of the
// covariance is applied as a rank-1 update, never as a dense matrix root.
HermitianMatrix sample_spiked_wishart(TrialStream& rng, int m, int dof,
                                      double eta, const Eigen::VectorXcd& u);

// Largest eigenvalue of W1 W2^{-1} via the Hermitian similarity
// L^{-1} W1 L^{-*} with L the Cholesky factor of W2.
double max_whitened_eig(const HermitianMatrix& w1, const HermitianMatrix& w2);

// Runs config.trials independent draws. Each trial owns the substream
// (seed, trial index), so results are identical for any thread count.
EigSampleSet simulate_max_eig(const SimConfig& config, int threads = 1);

// Fraction of draws <= t.
double empirical_cdf(const EigSampleSet& samples, double t);

// Two-sided Kolmogorov-Smirnov distance between the sample and a reference
// CDF: max_i max(i/N - F(x_(i)), F(x_(i)) - (i-1)/N) over the order
// statistics. Throws NumericalError if the reference leaves [0,1].
double ks_statistic(const EigSampleSet& samples,
                    const std::function<double(double)>& analytic_cdf);

}  // namespace lrl
