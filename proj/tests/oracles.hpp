#pragma once

// Independent reference implementations for the test suite. Everything here
// deliberately avoids the code paths under test: recurrences instead of
// closed sums, cofactor expansion instead of LU, inertia-count bisection
// instead of a packaged eigensolver, and direct quadrature instead of
// determinantal formulas. Slow is fine; these run at toy sizes.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence.
double jacobi_recurrence(int n, double a, double b, double x);

// Determinant by cofactor expansion along the first row (dim <= 8).
double det_cofactor(const Eigen::MatrixXd& m);

// Largest eigenvalue of Hermitian A: bisection on the inertia count of
// A - x I (negative pivots of symmetric elimination) inside a Gershgorin
// bracket. Counting, unlike a determinant sign, is monotone in x.
double max_eig_bisect(const Eigen::MatrixXcd& a);

// Largest x with det(W1 - x W2) = 0 (W2 positive definite): same inertia
// bisection on the pencil W1 - x W2, upper bracket found by doubling.
double max_gen_eig_bisect(const Eigen::MatrixXcd& w1, const Eigen::MatrixXcd& w2);

// Adaptive Simpson on [a, b] to the given absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol);

// Integral of f over the ordered wedge 0 < x1 < x2 < infinity, mapped to the
// unit square via x = u/(1-u): nested adaptive Simpson.
double integrate_ordered_pair(const std::function<double(double, double)>& f,
                              double tol);

// Maximize a unimodal f on [lo, hi]: coarse scan to isolate the peak, then
// golden-section to the requested x tolerance. Returns the argmax.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol);

// Regularized incomplete beta I_x(a, b) via the standard continued fraction.
double reg_inc_beta(double a, double b, double x);

}  // namespace oracle
