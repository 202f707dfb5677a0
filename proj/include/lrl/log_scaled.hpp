#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace lrl {

// A real number stored as sign and log-magnitude. Everything built from
// factorials and Pochhammer products lives here until the final cancellation,
// since the raw magnitudes overflow double for modest dimensions.
struct LogScaledReal {
    int sign = 0;  // -1, 0, +1
    double log_abs = -std::numeric_limits<double>::infinity();  // ignored when sign == 0

    static LogScaledReal zero() { return {}; }
    static LogScaledReal one() { return {1, 0.0}; }

    static LogScaledReal from_double(double v) {
        if (v == 0.0) return zero();
        return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
    }
    static LogScaledReal from_log(int sign, double log_abs) {
        if (sign == 0) return zero();
        return {sign, log_abs};
    }

    double to_double() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_abs);
    }

    friend LogScaledReal operator*(LogScaledReal a, LogScaledReal b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.sign * b.sign, a.log_abs + b.log_abs};
    }
    friend LogScaledReal operator/(LogScaledReal a, LogScaledReal b) {
        // division by zero deliberately unguarded; callers divide by
        // constants they constructed as nonzero
        return {a.sign * b.sign, a.log_abs - b.log_abs};
    }
    LogScaledReal& operator*=(LogScaledReal b) { return *this = *this * b; }
};

// Signed sum of log-scaled terms: factor out the largest magnitude so the
// accumulation happens on numbers of order one. Relative accuracy is that of
// the plain double sum after scaling, which is what the determinant entries
// need (they are sums of same-sign terms in the intended domain, but the
// routine is sign-correct in general).
inline LogScaledReal log_scaled_sum(const std::vector<LogScaledReal>& terms) {
    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.sign != 0 && t.log_abs > peak) peak = t.log_abs;
    if (peak == -std::numeric_limits<double>::infinity()) return LogScaledReal::zero();
    double acc = 0.0;
    for (const auto& t : terms)
        if (t.sign != 0) acc += t.sign * std::exp(t.log_abs - peak);
    if (acc == 0.0) return LogScaledReal::zero();
    return {acc > 0.0 ? 1 : -1, peak + std::log(std::fabs(acc))};
}

}  // namespace lrl
