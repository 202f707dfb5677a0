#include <cmath>

#include <doctest.h>

#include "lrl/special_functions.hpp"
#include "oracles.hpp"

using lrl::jacobi_poly;
using lrl::ln_binomial;
using lrl::ln_factorial;
using lrl::LogScaledReal;
using lrl::pochhammer;

TEST_CASE("ln_factorial anchors and lgamma agreement") {
    CHECK(ln_factorial(0) == 0.0);
    CHECK(ln_factorial(1) == 0.0);
    CHECK(ln_factorial(10) == doctest::Approx(15.104412573076).epsilon(1e-12));
    CHECK(ln_factorial(3) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
    for (long k : {2L, 7L, 25L, 100L, 500L})
        CHECK(ln_factorial(k) ==
              doctest::Approx(std::lgamma(static_cast<double>(k) + 1.0))
                  .epsilon(1e-14));
    CHECK_THROWS_AS(ln_factorial(-1), std::domain_error);
}

TEST_CASE("ln_binomial matches direct counting") {
    CHECK(std::exp(ln_binomial(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
    CHECK(ln_binomial(7, 0) == 0.0);
    CHECK(ln_binomial(7, 7) == 0.0);
    CHECK(std::exp(ln_binomial(52, 5)) ==
          doctest::Approx(2598960.0).epsilon(1e-11));
}

TEST_CASE("pochhammer products and zeros") {
    CHECK(pochhammer(3.5, 0).sign == 1);
    CHECK(pochhammer(3.5, 0).log_abs == 0.0);

    // (2)_3 = 2*3*4 = 24
    CHECK(pochhammer(2.0, 3).to_double() == doctest::Approx(24.0).epsilon(1e-14));
    // (-3)_2 = (-3)(-2) = 6
    CHECK(pochhammer(-3.0, 2).to_double() == doctest::Approx(6.0).epsilon(1e-14));
    // (-3)_5 sweeps through zero
    CHECK(pochhammer(-3.0, 5).sign == 0);

    // recursion (a)_{k+1} = (a)_k (a+k)
    for (double a : {0.5, 4.0, 11.25}) {
        for (long k = 0; k < 12; ++k) {
            const double lhs = pochhammer(a, k + 1).to_double();
            const double rhs =
                pochhammer(a, k).to_double() * (a + static_cast<double>(k));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
        }
    }
}

TEST_CASE("jacobi polynomial anchors") {
    // P_0 = 1 everywhere
    CHECK(jacobi_poly(0, 3, 7, 42.0).to_double() == doctest::Approx(1.0));
    // P_n(1) = C(n+a, n)
    for (long n : {1L, 2L, 5L, 9L})
        for (long a : {0L, 2L, 6L})
            CHECK(jacobi_poly(n, a, 4, 1.0).to_double() ==
                  doctest::Approx(std::exp(ln_binomial(n + a, n))).epsilon(1e-12));
    // P_1^{(a,b)}(x) = (a+1) + (a+b+2)(x-1)/2
    CHECK(jacobi_poly(1, 2, 3, 5.0).to_double() ==
          doctest::Approx(3.0 + 7.0 * 2.0).epsilon(1e-14));
    // negative degree slots vanish identically
    CHECK(jacobi_poly(-1, 2, 3, 1.5).sign == 0);
    CHECK(jacobi_poly(-4, 0, 1, 7.0).sign == 0);
}

TEST_CASE("jacobi polynomial matches the three-term recurrence") {
    // The CDF evaluates these only at x = 2/t + 1 > 1, so sweep that region,
    // including the near-edge and deep-argument ends.
    for (long deg = 0; deg <= 30; deg += (deg < 8 ? 1 : 5)) {
        for (long a : {0L, 1L, 4L, 9L, 20L}) {
            for (long b : {0L, 2L, 7L, 20L}) {
                for (double x : {1.0, 1.5, 3.0, 11.0, 201.0}) {
                    const double ours = jacobi_poly(deg, a, b, x).to_double();
                    const double ref = oracle::jacobi_recurrence(
                        static_cast<int>(deg), static_cast<double>(a),
                        static_cast<double>(b), x);
                    CHECK(ours == doctest::Approx(ref).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("log-scaled arithmetic and signed sums") {
    const LogScaledReal two = LogScaledReal::from_double(2.0);
    const LogScaledReal neg3 = LogScaledReal::from_double(-3.0);
    CHECK((two * neg3).to_double() == doctest::Approx(-6.0).epsilon(1e-15));
    CHECK((neg3 / two).to_double() == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK((two * LogScaledReal::zero()).sign == 0);

    // huge magnitudes cancel exactly in the scaled sum
    const LogScaledReal big = LogScaledReal::from_log(1, 800.0);
    const LogScaledReal big_neg = LogScaledReal::from_log(-1, 800.0);
    CHECK(lrl::log_scaled_sum({big, big_neg}).sign == 0);

    // 1e300-scale terms: exp(800) * (1 + 0.5) without overflow
    const LogScaledReal half = LogScaledReal::from_log(1, 800.0 + std::log(0.5));
    const LogScaledReal s = lrl::log_scaled_sum({big, half});
    CHECK(s.sign == 1);
    CHECK(s.log_abs == doctest::Approx(800.0 + std::log(1.5)).epsilon(1e-14));
}
