#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace oracle {

double jacobi_recurrence(int n, double a, double b, double x) {
    if (n < 0) return 0.0;
    double pm1 = 1.0;
    if (n == 0) return pm1;
    double pm = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for (int k = 2; k <= n; ++k) {
        const double s = 2.0 * k + a + b;
        const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        const double next = (c2 * pm - c3 * pm1) / c1;
        pm1 = pm;
        pm = next;
    }
    return pm;
}

double det_cofactor(const Eigen::MatrixXd& m) {
    const int d = static_cast<int>(m.rows());
    if (d != m.cols()) throw std::invalid_argument("det_cofactor: not square");
    if (d > 8) throw std::invalid_argument("det_cofactor: too large");
    if (d == 1) return m(0, 0);
    double det = 0.0;
    double sign = 1.0;
    for (int c = 0; c < d; ++c) {
        Eigen::MatrixXd minor(d - 1, d - 1);
        for (int i = 1; i < d; ++i) {
            int mc = 0;
            for (int j = 0; j < d; ++j) {
                if (j == c) continue;
                minor(i - 1, mc++) = m(i, j);
            }
        }
        det += sign * m(0, c) * det_cofactor(minor);
        sign = -sign;
    }
    return det;
}

namespace {

// Negative-pivot count of an unpivoted symmetric elimination. By Sylvester's
// law of inertia this equals the number of negative eigenvalues, so it counts
// pencil eigenvalues below a shift without any eigensolver.
int negative_pivots(Eigen::MatrixXcd m) {
    const int d = static_cast<int>(m.rows());
    int neg = 0;
    for (int k = 0; k < d; ++k) {
        double piv = m(k, k).real();
        if (piv == 0.0) piv = 1e-300;  // measure-zero breakdown; keep going
        if (piv < 0.0) ++neg;
        for (int i = k + 1; i < d; ++i) {
            const std::complex<double> f = m(i, k) / piv;
            for (int j = k + 1; j < d; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return neg;
}

int count_eigs_below(const Eigen::MatrixXcd& a, double x) {
    Eigen::MatrixXcd shifted = a;
    for (int i = 0; i < shifted.rows(); ++i) shifted(i, i) -= x;
    return negative_pivots(std::move(shifted));
}

}  // namespace

double max_eig_bisect(const Eigen::MatrixXcd& a) {
    const int d = static_cast<int>(a.rows());
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < d; ++i) {
        double radius = 0.0;
        for (int j = 0; j < d; ++j)
            if (j != i) radius += std::abs(a(i, j));
        lo = std::min(lo, a(i, i).real() - radius);
        hi = std::max(hi, a(i, i).real() + radius);
    }
    lo -= 1.0;
    hi += 1.0;
    while (hi - lo > 1e-12 * std::max(1.0, std::fabs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (count_eigs_below(a, mid) == d)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double max_gen_eig_bisect(const Eigen::MatrixXcd& w1, const Eigen::MatrixXcd& w2) {
    const int d = static_cast<int>(w1.rows());
    // W1 - x W2 is congruent to B - x I with B the whitened matrix, so the
    // pivot count transfers to the pencil unchanged.
    auto pencil_below = [&](double x) {
        return negative_pivots(w1 - x * w2);
    };
    double hi = 1.0;
    int steps = 0;
    while (pencil_below(hi) < d) {
        hi *= 2.0;
        if (++steps > 200)
            throw std::runtime_error("max_gen_eig_bisect: no upper bound found");
    }
    double lo = 0.0;
    while (hi - lo > 1e-12 * std::max(1.0, std::fabs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (pencil_below(mid) == d)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

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

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 45);
}

double integrate_ordered_pair(const std::function<double(double, double)>& f,
                              double tol) {
    // Map each coordinate through x = u/(1-u); the wedge 0 < x1 < x2 becomes
    // the triangle 0 < u1 < u2 < 1.
    auto mapped = [&](double u1, double u2) {
        if (u1 <= 0.0 || u2 >= 1.0 || u1 >= u2) return 0.0;
        const double x1 = u1 / (1.0 - u1);
        const double x2 = u2 / (1.0 - u2);
        const double j1 = 1.0 / ((1.0 - u1) * (1.0 - u1));
        const double j2 = 1.0 / ((1.0 - u2) * (1.0 - u2));
        return f(x1, x2) * j1 * j2;
    };
    auto inner = [&](double u2) {
        if (u2 <= 0.0 || u2 >= 1.0) return 0.0;
        return integrate([&](double u1) { return mapped(u1, u2); }, 0.0, u2,
                         tol * 1e-2);
    };
    return integrate(inner, 0.0, 1.0, tol);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol) {
    // Coarse scan to isolate the peak, then golden-section inside the
    // bracketing pair of scan intervals.
    constexpr int kScan = 200;
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kScan; ++i) {
        const double x = lo + (hi - lo) * i / kScan;
        const double v = f(x);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = lo + (hi - lo) * std::max(0, best - 1) / kScan;
    double b = lo + (hi - lo) * std::min(kScan, best + 1) / kScan;

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

namespace {

double beta_cont_fraction(double a, double b, double x) {
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = 1.0 + aa / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = 1.0 + aa / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 3e-16) break;
    }
    return h;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cont_fraction(a, b, x) / a;
    return 1.0 - front * beta_cont_fraction(b, a, 1.0 - x) / b;
}

}  // namespace oracle
