#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace mz {

// Value in log-magnitude plus sign form: T_n grows like (2u)^n / 2, so
// anything built from it is kept in log space.
struct SignedLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;  // -1, 0, +1

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

enum class CompactKind { interval, disk, square, ellipse };

// Symmetric compact K in the plane together with alpha(K) = max over K of
// |w + sqrt(w^2 - 1)|.
struct SymmetricCompact {
    CompactKind kind = CompactKind::interval;
    double alpha = 1.0;
};

// Chebyshev polynomial of the first kind at u; cos form on [-1,1], cosh form
// in log space outside.
SignedLog cheb_T(int n, double u);

// Convenience plain-double value; only safe while n log(2|u|) stays well
// under 709.
double cheb_T_value(int n, double u);

// log(2^(n-1) u^n), an upper bound for T_n(u) at u >= 1. Requires n >= 1.
double cheb_growth_bound(int n, double u);

// l-th derivative of T_n at u, exact recurrence carried in long double.
// Returns 0 for l > n.
double cheb_deriv(int n, int l, double u);

// log of lambda^(-<k>) prod_j |T_n^(k_j)(x_j / lambda)|: the extremal factor
// bounding |D^k P(x)| / sup |P| over the cube of half-side lambda, for tensor
// polynomials of per-axis degree n. Requires |x_j| > lambda for all j.
double outside_bound_tensor(int n, const std::vector<int>& k, const Eigen::VectorXd& x,
                            double lambda);

// log of T_n((B+A+2)/(B-A))^m: bounds the coefficient l1 norm of a tensor
// polynomial of per-axis degree n against its sup norm on [A,B]^m, 0 < A < B.
double coeff_sum_bound_interval(int n, int m, double A, double B);

// log of coth(b/4)^(m n): same bound for polynomials evaluated on the
// exponential image [e^-b, e^b]^m.
double coeff_sum_bound_exp(int n, int m, double b);

// psi(tau) + log(alpha) with psi(tau) = sqrt(1+tau^2)/tau - log(tau + sqrt(1+tau^2)).
// Strictly decreasing in tau, from +inf to -inf.
double psi(double tau, double alpha = 1.0);

// Unique positive zero of psi(., alpha); bisection to 1e-10. gamma0(1) = 1.5088...
double gamma0(double alpha);

// alpha(K) for the four supported kinds: interval -> 1, ellipse(R) -> R,
// disk(M) -> M + sqrt(M^2+1), square (half-side 1) -> 2.8900...
SymmetricCompact alpha_of(CompactKind kind, double param = 0.0);

// Unique zero in (gamma0, inf) of
// G(tau, b) = b (sqrt(1+tau^2) - tau log(tau + sqrt(1+tau^2))) + log coth(b/4).
double tau0(double b);

}  // namespace mz
