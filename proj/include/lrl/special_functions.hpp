#pragma once

#include "lrl/log_scaled.hpp"

namespace lrl {

// ln(k!). Table-backed; throws std::domain_error for k < 0.
double ln_factorial(long k);

// ln C(n, k) for integer 0 <= k <= n.
double ln_binomial(long n, long k);

// Rising factorial a(a+1)...(a+k-1) as sign + log-magnitude; (a)_0 = 1.
// A zero factor anywhere yields an exact zero.
LogScaledReal pochhammer(double a, long k);

// Jacobi polynomial P_deg^{(a,b)}(x) via the finite hypergeometric sum
//   sum_k C(deg+a, deg-k) C(deg+k+a+b, k) ((x-1)/2)^k,
// accumulated sign-aware in the log domain. Degrees below zero return an
// exact zero: those slots are (column-index)-th derivatives of polynomials of
// lower degree, so they vanish identically rather than by convention.
LogScaledReal jacobi_poly(long deg, long a, long b, double x);

}  // namespace lrl
