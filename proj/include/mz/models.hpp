#pragma once

#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

#include "mz/cheb_series.hpp"
#include "mz/geometry.hpp"

namespace mz {

// L_q exponent with q = infinity as its own state, never a large float.
struct Lq {
    bool infinite = false;
    double value = 2.0;  // meaningful iff !infinite

    static Lq finite(double q);
    static Lq inf() { return Lq{true, 0.0}; }
};

// (sin(sigma |x| / gamma) / (|x| / gamma))^gamma, |x| Euclidean. Value at the
// origin is sigma^gamma; spherical type sigma; in L_q iff gamma q > m.
struct SincPower {
    double sigma = 1.0;
    int gamma = 1;
    int m = 1;
};

// sin(sigma |x - y|) / |x - y|: sup norm sigma attained at the shift y, decay
// 1/|x - y| elsewhere.
struct ShiftedSinc {
    double sigma = 1.0;
    Eigen::VectorXd shift;
};

// Exponential polynomial sum over k in {0..N}^m of c_k e^(k . x); dense
// coefficients, last axis fastest; per-axis type N.
struct ExpPolynomial {
    int m = 1;
    int degree = 0;
    Eigen::VectorXcd coeffs;

    Eigen::Index index(const std::vector<int>& k) const {
        Eigen::Index idx = 0;
        for (int j = 0; j < m; ++j) idx = idx * (degree + 1) + k[static_cast<size_t>(j)];
        return idx;
    }
};

// P(x) H(x) with P a tensor Chebyshev partial sum of per-axis degree 2n and
// H(x) = (sin(beta |x| / n) / (beta |x| / n))^(2n + 2 ceil(m/(2q)) + 2),
// a [0,1]-valued mollifier forcing membership in L_q.
struct MollifiedSeries {
    TensorChebSeries base;
    int n = 1;
    double beta = 1.0;
    double sigma = 1.0;  // the type parameter the construction targets
    Lq q;
    int m = 1;
};

using EfetModel = std::variant<SincPower, ShiftedSinc, ExpPolynomial, MollifiedSeries>;

int model_dim(const EfetModel& model);

std::complex<double> evaluate(const EfetModel& model, const Eigen::VectorXd& x);

// Reported exponential/spherical type: sigma for the sinc families, per-axis
// degree N for exponential polynomials, 2 beta (1 + (ceil(m/(2q)) + 1)/n) for
// the mollified family (the mollifier's own type included).
double efet_type(const EfetModel& model);

bool has_finite_lq(const EfetModel& model, const Lq& q);

// ceil(m / (2q)), 0 for q = infinity.
int half_dim_exponent(int m, const Lq& q);

// The mollifier H alone, in [0,1].
double mollifier(const MollifiedSeries& ms, const Eigen::VectorXd& x);

// beta = 2 tau e^((1+2 eps)/tau) / w*, w* = 2/(sigma sqrt(m)).
MollifiedSeries make_mollified(const TensorChebSeries& base, int n, double tau, double epsilon,
                               double sigma, const Lq& q);

// The decay envelope C e^(-2 n eps / tau) (w* n / (tau r))^(m/q + 2) at
// Euclidean radius r, with C supplied by the caller.
double mollified_decay_bound(const MollifiedSeries& ms, double tau, double epsilon, double r,
                             double C);

// Checks |f(x)| against the envelope with C = 2 sup |f| over a coarse grid on
// the base cube. Requires x strictly outside the octahedron
// sum |x_j| <= 2n/(tau sigma).
bool decay_check_mollified(const MollifiedSeries& ms, double tau, double epsilon,
                           const Eigen::VectorXd& x);

// ||D^k f||_q / ||f||_q on the window (central differences, step 1e-4/sigma,
// midpoint rule or grid sup). Throws assertion_error if the ratio exceeds
// sigma^<k> by more than 1%; returns the ratio otherwise.
double bernstein_check(const EfetModel& model, const std::vector<int>& k, const Lq& q,
                       const Window& w, int points_per_axis);

// sup over the window grid of sum_j |df/dx_j| divided by sup |f|. Throws
// assertion_error beyond m sigma (1 + 1%); returns the ratio otherwise.
double gradient_l1_check(const EfetModel& model, const Window& w, int points_per_axis);

}  // namespace mz
