#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "mz/chebyshev.hpp"

namespace mz {

using RealFn = std::function<std::complex<double>(const Eigen::VectorXd&)>;

// Tensor Chebyshev partial sum on the cube of half-side b: sum over
// k in {0..n}^m of c_k prod_j T_{k_j}(x_j / b). Coefficients dense,
// row-major with the last axis index fastest.
struct TensorChebSeries {
    int m = 1;
    int n = 0;
    double b = 1.0;
    Eigen::VectorXcd coeffs;

    Eigen::Index index(const std::vector<int>& k) const {
        Eigen::Index idx = 0;
        for (int j = 0; j < m; ++j) idx = idx * (n + 1) + k[static_cast<size_t>(j)];
        return idx;
    }
};

// Inputs of the coefficient decay bound: a function of exponential type sigma
// per axis with |f(w)| <= A exp(sigma sum_j |w_j|), expanded on the cube of
// half-side b; delta is the free Bernstein-ellipse parameter.
struct DecayCertificate {
    double A = 1.0;
    double sigma = 1.0;
    double b = 1.0;
    double delta = 1.0;
    int m = 1;
};

// Fourier-Chebyshev coefficients through the cosine substitution, K-point
// Gauss-Chebyshev nodes per axis. Requires K >= 2(n+1); exact for
// polynomials of per-axis degree <= K - n - 1.
TensorChebSeries fit_tensor_cheb(const RealFn& f, double b, int n, int m, int K);

// Partial-sum evaluation inside the closed cube; throws outside.
std::complex<double> eval_series(const TensorChebSeries& s, const Eigen::VectorXd& x);

// Same evaluation without the domain check; the recurrence is valid for any
// real argument (used by the mollified models beyond the fit cube).
std::complex<double> eval_series_unchecked(const TensorChebSeries& s, const Eigen::VectorXd& x);

// log of 2^m A exp(m sigma b sqrt(1+delta^2)) / (delta + sqrt(1+delta^2))^<k>.
// With sharp = true the prefactor 2^m drops to 2^(m - [number of zero k_j]).
double coeff_decay_bound(const DecayCertificate& cert, const std::vector<int>& k,
                         bool sharp = false);

// log of m 2^m (1 - 1/(tau + sqrt(1+tau^2)))^(-m) * A * e^(n psi(tau)):
// sup-error bound for the degree-n tensor partial sum of a function with
// |f(w)| <= A exp(sigma sum |w_j|) fitted on the cube of half-side
// n/(m sigma tau). Requires tau > gamma0(1).
double approx_error_bound(double A, int m, int n, double tau);

// Univariate analog over a symmetric compact K with explicit constant
// 2 / (1 - alpha/(g + sqrt(1+g^2))), g = gamma0(alpha); rate psi(tau) + log alpha.
// Requires tau > gamma0(K.alpha).
double univariate_error_bound(double A, int n, double tau, const SymmetricCompact& K);

struct RatePoint {
    int n = 0;
    double error = 0.0;  // relative sup error of the degree-n partial sum
    double rate = 0.0;   // n-th root of the absolute sup error
};

// For each n: fit e^(sigma w) on [-n/(sigma tau), n/(sigma tau)] with degree
// n, measure the relative sup error on a 4096-point grid, and report the n-th
// root of the absolute error. The rate tends to e^(psi(tau)) from below.
std::vector<RatePoint> convergence_rate_experiment(double sigma, double tau,
                                                   const std::vector<int>& n_list);

}  // namespace mz
