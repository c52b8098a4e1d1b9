#pragma once

#include <cstdint>
#include <optional>

#include "mz/models.hpp"

namespace mz {

struct LqEstimate {
    Lq q;
    double value = 0.0;
    Window window;
    int points_per_axis = 0;
    std::optional<double> tail_bound;  // only for families with known decay
};

struct MZParams {
    double delta = 0.0;
    double delta1 = 0.0;
    double sigma = 0.0;
    int m = 1;
    Lq q;
    long long n_mult = 0;
    double c_mq = 1.0;
};

// measured_ratio_* hold the one measured discrete-sum-to-norm ratio that the
// upper and lower bounds sandwich (for the sup test both equal net sup over
// grid sup).
struct MZReport {
    double measured_ratio_upper = 0.0;
    double measured_ratio_lower = 0.0;
    std::optional<double> theoretical_C1;
    std::optional<double> theoretical_C2;
    std::optional<double> theoretical_C3;
    MZParams params;
};

struct WitnessResult {
    ShiftedSinc model;
    Eigen::VectorXd witness;
    double ratio = 0.0;  // sup over net of |f| divided by sigma
};

struct CubeMZReport {
    int degree = 0;
    int m = 1;
    double b = 1.0;
    int grid_factor = 2;
    int trials = 0;
    std::uint64_t seed = 0;
    bool positive_coeffs = false;
    double gamma_slack = 0.0;
    double max_factor = 0.0;  // worst sup-to-knot-max factor over trials
    bool within_gamma = false;
    double d_n = 1.0;   // coth(b/4)^(m N)
    double tau0_b = 0.0;
};

struct ExpPolyCertificate {
    double d_n = 1.0;       // coth(b/4)^(m N)
    double sigma_eff = 0.0; // per-axis type N
};

// 1 for m = 1, floor(m/q) + 1 otherwise. Requires finite q.
int d_exponent(int m, const Lq& q);

// Midpoint-rule surrogate for the L_q norm on the window (grid max for
// q = infinity), with an analytic tail bound attached for the sinc families.
LqEstimate lq_norm(const EfetModel& model, const Lq& q, const Window& w, int points_per_axis);

// (sum |f(X)|^q)^(1/q), summed in descending magnitude order; max for q = inf.
double sample_sum(const EfetModel& model, const PointSet& net, const Lq& q);

// (delta1/2)^(-m/q) (N+1)^(1/q) (1 + c_mq max(delta1 sigma, (delta1 sigma)^d)).
double c1_bound(double delta1, double sigma, int m, const Lq& q, long long n_mult, double c_mq);

// (4 delta)^(-m/q) 2^(1/q - 1) (1 - c_mq max((delta sigma)^q, (delta sigma)^(dq)))^(1/q).
double c2_bound(double delta, double sigma, int m, const Lq& q, double c_mq);

// Checks net sup >= (1 - m delta sigma) grid sup - slack on the reference
// window, slack = m sigma (step/2) grid sup. Requires 11 m^(3/2) delta sigma
// <= 1 and the net to delta-cover the window (certified). Throws
// assertion_error on violation; the report carries the ratio and C3.
MZReport verify_sup_inequality(const EfetModel& model, const PointSet& net, double delta,
                               double sigma, int m, const Window& reference_window,
                               int grid_points_per_axis = 2001, int cover_max_depth = 40);

// Draws one uniform point per cube of half-side h around each center and
// returns |S_X - S_Y| / (h^(-m/q) max(h sigma, (h sigma)^d) ||f||_q).
// Requires the cubes' interiors pairwise disjoint.
double perturbation_check(const EfetModel& model, const PointSet& centers, double h, const Lq& q,
                          std::uint64_t seed, const Window& norm_window, int norm_ppa);

// If the net fails to delta-cover the window, returns the shifted sinc
// centered at the uncovered witness together with its net-sup-to-sigma ratio
// (at most 1/(delta sigma)). Requires delta > 1/(c3 sigma). Returns nothing
// when the net covers or the check is undecided.
std::optional<WitnessResult> necessity_witness(const PointSet& net, double delta, double sigma,
                                               double c3, const Window& w, int max_depth = 40);

// max(delta1, (c_mq/sigma) ((N+1)/(delta1^m c2^q))^(1/(gamma q - m))),
// gamma = floor(m/q) + 1.
double delta_star(double delta1, double sigma, int m, const Lq& q, long long n_mult, double c2,
                  double c_mq);

// Per trial: random coefficients on {0..N}^m, knots = (grid_factor*N + 1)
// Chebyshev points per axis on the cube of half-side b, factor = fine-grid
// sup / knot max. Reports the worst factor, whether it stays within
// 1 + gamma_slack, coth(b/4)^(m N), and tau0(b).
CubeMZReport cube_mz_experiment(int N, double b, int m, double gamma_slack, int grid_factor,
                                int trials, std::uint64_t seed, bool positive_coeffs = false);

// Certificate |E(w)| <= coth(b/4)^(m N) sup_cube |E| e^(N sum |w_j|), spot
// checked on seeded samples in the doubled cube; throws assertion_error if a
// sample violates it.
ExpPolyCertificate exp_poly_global_certificate(const ExpPolynomial& E, double b,
                                               int samples = 64, std::uint64_t seed = 1);

// Measured ratio sample_sum / lq_norm against the structural prediction
// (delta1/2)^(-m/q) (N+1)^(1/q) with N measured by packing_multiplicity;
// throws assertion_error if the ratio exceeds prediction * (1 + slack),
// slack = c_mq max(delta1 sigma, (delta1 sigma)^d).
MZReport upper_mz_experiment(const EfetModel& model, const PointSet& net, double delta1,
                             double sigma, int m, const Lq& q, const Window& norm_window,
                             int norm_ppa, double c_mq = 1.0);

}  // namespace mz
