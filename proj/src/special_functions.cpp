#include "lrl/special_functions.hpp"

#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace lrl {

double ln_factorial(long k) {
    if (k < 0) throw std::domain_error("ln_factorial: negative argument");
    // Grow-once table, thread-local so concurrent grid evaluation never
    // contends. ln(k!) = ln((k-1)!) + ln(k) keeps each entry within one
    // rounding of the previous, which is plenty for the 1e-13 contract.
    thread_local std::vector<double> table{0.0, 0.0};
    while (static_cast<size_t>(k) >= table.size())
        table.push_back(table.back() + std::log(static_cast<double>(table.size())));
    return table[static_cast<size_t>(k)];
}

double ln_binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) throw std::domain_error("ln_binomial: bad arguments");
    return ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
}

LogScaledReal pochhammer(double a, long k) {
    if (k < 0) throw std::domain_error("pochhammer: negative length");
    LogScaledReal r = LogScaledReal::one();
    for (long i = 0; i < k; ++i) {
        double f = a + static_cast<double>(i);
        if (f == 0.0) return LogScaledReal::zero();
        r *= LogScaledReal::from_double(f);
    }
    return r;
}

namespace {
void note_negative_degree_once() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        std::fprintf(stderr,
                     "note: Jacobi slot with negative degree evaluated as 0 "
                     "(n > 2m regime); identity is exact.\n");
    });
}
}  // namespace

LogScaledReal jacobi_poly(long deg, long a, long b, double x) {
    if (deg < 0) {
        note_negative_degree_once();
        return LogScaledReal::zero();
    }
    const double base = 0.5 * (x - 1.0);
    std::vector<LogScaledReal> terms;
    terms.reserve(static_cast<size_t>(deg) + 1);
    for (long k = 0; k <= deg; ++k) {
        double lc = ln_binomial(deg + a, deg - k) + ln_binomial(deg + k + a + b, k);
        if (k == 0) {
            terms.push_back(LogScaledReal::from_log(1, lc));
        } else if (base == 0.0) {
            continue;  // (x-1)/2 = 0 kills every k > 0 term
        } else {
            int s = (base > 0.0 || k % 2 == 0) ? 1 : -1;
            terms.push_back(LogScaledReal::from_log(s, lc + k * std::log(std::fabs(base))));
        }
    }
    return log_scaled_sum(terms);
}

}  // namespace lrl
