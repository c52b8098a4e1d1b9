#include "mz/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mz/errors.hpp"

namespace mz {

int d_exponent(int m, const Lq& q) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    if (q.infinite) throw std::invalid_argument("domain: q must be finite");
    if (m == 1) return 1;
    return static_cast<int>(std::floor(m / q.value + 1e-12)) + 1;
}

namespace {

// surface area of the unit sphere in R^m
double sphere_area(int m) {
    return 2 * std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0);
}

// Analytic tail of the L_q integral outside the ball of radius r0 for a
// radial envelope amp / r^p (p q > m required by has_finite_lq). For q = inf
// the envelope value at r0.
std::optional<double> decay_tail(const EfetModel& model, const Lq& q, const Window& w) {
    struct Envelope {
        double amp = 0, p = 0;
        Eigen::VectorXd center;
    };
    std::optional<Envelope> env;
    if (const auto* sp = std::get_if<SincPower>(&model)) {
        Envelope e;
        e.p = sp->gamma;
        e.amp = std::pow(static_cast<double>(sp->gamma), sp->gamma);  // |f| <= (gamma/r)^gamma
        e.center = Eigen::VectorXd::Zero(sp->m);
        env = e;
    } else if (const auto* ss = std::get_if<ShiftedSinc>(&model)) {
        Envelope e;
        e.p = 1.0;
        e.amp = 1.0;  // |f| <= 1/r
        e.center = ss->shift;
        env = e;
    }
    if (!env) return std::nullopt;

    const int m = w.dim();
    const double r0 = w.half_side - sup_dist(env->center, w.center);
    if (r0 <= 0) return std::nullopt;  // window does not enclose the decay center
    if (q.infinite) return env->amp / std::pow(r0, env->p);
    const double pq = env->p * q.value;
    const double integral = sphere_area(m) * std::pow(env->amp, q.value) *
                            std::pow(r0, m - pq) / (pq - m);
    return std::pow(integral, 1.0 / q.value);
}

}  // namespace

LqEstimate lq_norm(const EfetModel& model, const Lq& q, const Window& w, int points_per_axis) {
    if (points_per_axis < 16) throw std::invalid_argument("points_per_axis must be >= 16");
    const int m = w.dim();
    if (m != model_dim(model)) throw std::invalid_argument("dimension mismatch");
    if (!has_finite_lq(model, q)) throw std::invalid_argument("norm diverges");

    const double step = 2 * w.half_side / points_per_axis;
    Eigen::Index total = 1;
    for (int j = 0; j < m; ++j) total *= points_per_axis;

    double sup = 0.0, sum = 0.0, comp = 0.0;
    std::vector<int> idx(static_cast<size_t>(m), 0);
    Eigen::VectorXd x(m);
    for (Eigen::Index flat = 0; flat < total; ++flat) {
        for (int j = 0; j < m; ++j)
            x[j] = w.center[j] - w.half_side + (idx[static_cast<size_t>(j)] + 0.5) * step;
        const double v = std::abs(evaluate(model, x));
        if (q.infinite) {
            sup = std::max(sup, v);
        } else {
            const double term = std::pow(v, q.value);
            const double y = term - comp;  // Kahan
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        for (int j = m - 1; j >= 0; --j) {
            if (++idx[static_cast<size_t>(j)] < points_per_axis) break;
            idx[static_cast<size_t>(j)] = 0;
        }
    }

    LqEstimate est;
    est.q = q;
    est.window = w;
    est.points_per_axis = points_per_axis;
    est.value = q.infinite ? sup : std::pow(sum * std::pow(step, m), 1.0 / q.value);
    est.tail_bound = decay_tail(model, q, w);
    return est;
}

double sample_sum(const EfetModel& model, const PointSet& net, const Lq& q) {
    if (net.points.empty()) throw std::invalid_argument("insufficient points");
    if (net.dim != model_dim(model)) throw std::invalid_argument("dimension mismatch");
    if (q.infinite) {
        double sup = 0.0;
        for (const auto& p : net.points) sup = std::max(sup, std::abs(evaluate(model, p)));
        return sup;
    }
    std::vector<double> terms;
    terms.reserve(net.points.size());
    for (const auto& p : net.points)
        terms.push_back(std::pow(std::abs(evaluate(model, p)), q.value));
    std::sort(terms.begin(), terms.end(), std::greater<double>());
    double sum = 0.0, comp = 0.0;
    for (double t : terms) {
        const double y = t - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return std::pow(sum, 1.0 / q.value);
}

double c1_bound(double delta1, double sigma, int m, const Lq& q, long long n_mult, double c_mq) {
    if (delta1 <= 0 || sigma <= 0 || c_mq < 0 || n_mult < 0)
        throw std::invalid_argument("bad bound parameters");
    if (q.infinite) throw std::invalid_argument("domain: q must be finite");
    const int d = d_exponent(m, q);
    const double ds = delta1 * sigma;
    const double slack = c_mq * std::max(ds, std::pow(ds, d));
    return std::pow(delta1 / 2, -m / q.value) * std::pow(n_mult + 1.0, 1.0 / q.value) *
           (1.0 + slack);
}

double c2_bound(double delta, double sigma, int m, const Lq& q, double c_mq) {
    if (delta <= 0 || sigma <= 0 || c_mq < 0) throw std::invalid_argument("bad bound parameters");
    if (q.infinite) throw std::invalid_argument("domain: q must be finite");
    const int d = d_exponent(m, q);
    const double ds = delta * sigma;
    const double paren =
        1.0 - c_mq * std::max(std::pow(ds, q.value), std::pow(ds, d * q.value));
    if (paren <= 0) throw std::invalid_argument("delta sigma too large");
    return std::pow(4 * delta, -m / q.value) * std::pow(2.0, 1.0 / q.value - 1.0) *
           std::pow(paren, 1.0 / q.value);
}

MZReport verify_sup_inequality(const EfetModel& model, const PointSet& net, double delta,
                               double sigma, int m, const Window& reference_window,
                               int grid_points_per_axis, int cover_max_depth) {
    if (delta <= 0 || sigma <= 0) throw std::invalid_argument("bad parameters");
    if (m != reference_window.dim() || m != model_dim(model))
        throw std::invalid_argument("dimension mismatch");
    if (grid_points_per_axis < 2) throw std::invalid_argument("grid too coarse");
    if (11 * std::pow(m, 1.5) * delta * sigma > 1 + 1e-9)
        throw std::invalid_argument("hypothesis violated: 11 m^(3/2) delta sigma > 1");

    const CoverageReport cover = covering_check(net, delta, reference_window, cover_max_depth);
    if (cover.state != CoverState::covered) throw assertion_error("net not delta-covering");

    double net_sup = 0.0;
    for (const auto& p : net.points) net_sup = std::max(net_sup, std::abs(evaluate(model, p)));

    const int G = grid_points_per_axis;
    const double step = 2 * reference_window.half_side / (G - 1);
    Eigen::Index total = 1;
    for (int j = 0; j < m; ++j) total *= G;
    double grid_sup = 0.0;
    std::vector<int> idx(static_cast<size_t>(m), 0);
    Eigen::VectorXd x(m);
    for (Eigen::Index flat = 0; flat < total; ++flat) {
        for (int j = 0; j < m; ++j)
            x[j] = reference_window.center[j] - reference_window.half_side +
                   idx[static_cast<size_t>(j)] * step;
        grid_sup = std::max(grid_sup, std::abs(evaluate(model, x)));
        for (int j = m - 1; j >= 0; --j) {
            if (++idx[static_cast<size_t>(j)] < G) break;
            idx[static_cast<size_t>(j)] = 0;
        }
    }

    const double c3 = 1.0 - m * delta * sigma;
    const double slack = m * sigma * (step / 2) * grid_sup;
    if (net_sup < c3 * grid_sup - slack)
        throw assertion_error("sup inequality violated: net sup " + std::to_string(net_sup) +
                              " below " + std::to_string(c3 * grid_sup - slack));

    MZReport r;
    r.measured_ratio_upper = grid_sup > 0 ? net_sup / grid_sup : 0.0;
    r.measured_ratio_lower = r.measured_ratio_upper;
    r.theoretical_C3 = c3;
    r.params.delta = delta;
    r.params.sigma = sigma;
    r.params.m = m;
    r.params.q = Lq::inf();
    return r;
}

double perturbation_check(const EfetModel& model, const PointSet& centers, double h, const Lq& q,
                          std::uint64_t seed, const Window& norm_window, int norm_ppa) {
    if (h <= 0) throw std::invalid_argument("h must be positive");
    if (centers.size() >= 2 && min_pairwise_separation(centers) < 2 * h * (1 - 1e-12))
        throw assertion_error("not disjoint");
    if (!has_finite_lq(model, q)) throw std::invalid_argument("norm diverges");

    const int m = centers.dim;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-h, h);
    PointSet moved;
    moved.dim = m;
    moved.points.reserve(centers.points.size());
    for (const auto& c : centers.points) {
        Eigen::VectorXd y = c;
        for (int j = 0; j < m; ++j) y[j] += u(rng);
        moved.points.push_back(y);
    }

    const double s_x = sample_sum(model, centers, q);
    const double s_y = sample_sum(model, moved, q);
    const double norm = lq_norm(model, q, norm_window, norm_ppa).value;
    const double sigma = efet_type(model);
    const double hs = h * sigma;
    double scale;
    if (q.infinite) {
        scale = hs;  // h^0 max(hs, hs^1)
    } else {
        const int d = d_exponent(m, q);
        scale = std::pow(h, -m / q.value) * std::max(hs, std::pow(hs, d));
    }
    return std::abs(s_x - s_y) / (scale * norm);
}

std::optional<WitnessResult> necessity_witness(const PointSet& net, double delta, double sigma,
                                               double c3, const Window& w, int max_depth) {
    if (!(c3 > 0 && c3 <= 1)) throw std::invalid_argument("C3 must lie in (0, 1]");
    if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
    if (!(delta > 1.0 / (c3 * sigma)))
        throw std::invalid_argument("hypothesis violated: delta <= 1/(C3 sigma)");

    const CoverageReport cover = covering_check(net, delta, w, max_depth);
    if (cover.state != CoverState::uncovered) return std::nullopt;

    WitnessResult res;
    res.witness = *cover.witness;
    res.model = ShiftedSinc{sigma, res.witness};
    const EfetModel model = res.model;
    double net_sup = 0.0;
    for (const auto& p : net.points) net_sup = std::max(net_sup, std::abs(evaluate(model, p)));
    res.ratio = net_sup / sigma;
    return res;
}

double delta_star(double delta1, double sigma, int m, const Lq& q, long long n_mult, double c2,
                  double c_mq) {
    if (delta1 <= 0 || sigma <= 0 || c2 <= 0 || c_mq <= 0 || n_mult < 0)
        throw std::invalid_argument("bad bound parameters");
    if (q.infinite) throw std::invalid_argument("domain: q must be finite");
    const double qa = q.value;
    const int gamma = static_cast<int>(std::floor(m / qa + 1e-12)) + 1;
    const double expo = 1.0 / (gamma * qa - m);
    const double second = (c_mq / sigma) *
        std::pow((n_mult + 1.0) / (std::pow(delta1, m) * std::pow(c2, qa)), expo);
    return std::max(delta1, second);
}

namespace {

// values of an exponential polynomial on a tensor grid via per-axis
// Vandermonde factors; returns the max modulus.
double exp_poly_grid_max(const ExpPolynomial& E, const Eigen::VectorXd& axis_points) {
    const int side = E.degree + 1;
    const Eigen::Index G = axis_points.size();
    Eigen::MatrixXd A(G, side);
    for (Eigen::Index i = 0; i < G; ++i)
        for (int kk = 0; kk < side; ++kk) A(i, kk) = std::exp(kk * axis_points[i]);
    if (E.m == 1) {
        return (A * E.coeffs).cwiseAbs().maxCoeff();
    }
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        C(E.coeffs.data(), side, side);
    const Eigen::MatrixXcd vals = A * C * A.transpose();
    return vals.cwiseAbs().maxCoeff();
}

}  // namespace

CubeMZReport cube_mz_experiment(int N, double b, int m, double gamma_slack, int grid_factor,
                                int trials, std::uint64_t seed, bool positive_coeffs) {
    if (N < 0 || N > 8) throw std::invalid_argument("degree out of range (N <= 8)");
    if (m < 1 || m > 2) throw std::invalid_argument("dimension out of range (m <= 2)");
    if (grid_factor < 2) throw std::invalid_argument("grid factor must be >= 2");
    if (trials < 1 || b <= 0) throw std::invalid_argument("bad parameters");

    const int knots_per_axis = grid_factor * N + 1;
    Eigen::VectorXd knots(knots_per_axis);
    for (int i = 0; i < knots_per_axis; ++i)
        knots[i] = b * std::cos((2 * i + 1) * M_PI / (2 * knots_per_axis));
    const int ref_ppa = m == 1 ? 512 : 256;
    Eigen::VectorXd ref(ref_ppa);
    for (int i = 0; i < ref_ppa; ++i) ref[i] = -b + 2 * b * i / (ref_ppa - 1.0);

    const int side = N + 1;
    Eigen::Index coeff_count = 1;
    for (int j = 0; j < m; ++j) coeff_count *= side;

    double max_factor = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(t) + 1)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        ExpPolynomial E;
        E.m = m;
        E.degree = N;
        E.coeffs.resize(coeff_count);
        for (Eigen::Index i = 0; i < coeff_count; ++i) {
            if (positive_coeffs)
                E.coeffs[i] = std::complex<double>(std::abs(gauss(rng)), 0.0);
            else
                E.coeffs[i] = std::complex<double>(gauss(rng), gauss(rng));
        }
        const double knot_max = exp_poly_grid_max(E, knots);
        const double ref_max = exp_poly_grid_max(E, ref);
        if (knot_max > 0) max_factor = std::max(max_factor, ref_max / knot_max);
    }

    CubeMZReport r;
    r.degree = N;
    r.m = m;
    r.b = b;
    r.grid_factor = grid_factor;
    r.trials = trials;
    r.seed = seed;
    r.positive_coeffs = positive_coeffs;
    r.gamma_slack = gamma_slack;
    r.max_factor = max_factor;
    r.within_gamma = max_factor <= 1.0 + gamma_slack;
    r.d_n = std::pow(1.0 / std::tanh(b / 4), static_cast<double>(m) * N);
    r.tau0_b = tau0(b);
    return r;
}

ExpPolyCertificate exp_poly_global_certificate(const ExpPolynomial& E, double b, int samples,
                                               std::uint64_t seed) {
    if (b <= 0) throw std::invalid_argument("b must be positive");
    if (samples < 1) throw std::invalid_argument("samples must be positive");

    // sup over the cube on a Chebyshev-distributed per-axis grid with endpoints
    const int G = 129;
    Eigen::VectorXd axis(G);
    for (int i = 0; i < G - 2; ++i) axis[i] = b * std::cos((2 * i + 1) * M_PI / (2 * (G - 2)));
    axis[G - 2] = -b;
    axis[G - 1] = b;
    const double cube_sup = exp_poly_grid_max(E, axis);

    const double log_d = static_cast<double>(E.m) * E.degree * std::log(1.0 / std::tanh(b / 4));
    const EfetModel model = E;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2 * b, 2 * b);
    Eigen::VectorXd w(E.m);
    for (int s = 0; s < samples; ++s) {
        for (int j = 0; j < E.m; ++j) w[j] = u(rng);
        const double lhs = std::abs(evaluate(model, w));
        if (lhs == 0.0) continue;
        const double rhs =
            log_d + std::log(cube_sup) + E.degree * w.cwiseAbs().sum() + 1e-9;
        if (std::log(lhs) > rhs)
            throw assertion_error("exponential polynomial certificate violated at sample " +
                                  std::to_string(s));
    }

    ExpPolyCertificate cert;
    cert.d_n = std::exp(log_d);
    cert.sigma_eff = E.degree;
    return cert;
}

MZReport upper_mz_experiment(const EfetModel& model, const PointSet& net, double delta1,
                             double sigma, int m, const Lq& q, const Window& norm_window,
                             int norm_ppa, double c_mq) {
    if (delta1 <= 0 || sigma <= 0) throw std::invalid_argument("bad parameters");
    if (q.infinite) throw std::invalid_argument("domain: q must be finite");
    if (m != net.dim || m != model_dim(model)) throw std::invalid_argument("dimension mismatch");
    if (!has_finite_lq(model, q)) throw std::invalid_argument("norm diverges");

    const int n_mult = packing_multiplicity(net, delta1);
    const double s = sample_sum(model, net, q);
    const double norm = lq_norm(model, q, norm_window, norm_ppa).value;
    const double measured = s / norm;

    const double prediction =
        std::pow(delta1 / 2, -m / q.value) * std::pow(n_mult + 1.0, 1.0 / q.value);
    const int d = d_exponent(m, q);
    const double ds = delta1 * sigma;
    const double slack = c_mq * std::max(ds, std::pow(ds, d));
    if (measured > prediction * (1 + slack))
        throw assertion_error("upper bound violated: measured ratio " + std::to_string(measured) +
                              " exceeds " + std::to_string(prediction * (1 + slack)));

    MZReport r;
    r.measured_ratio_upper = measured;
    r.measured_ratio_lower = measured;
    r.theoretical_C1 = c1_bound(delta1, sigma, m, q, n_mult, c_mq);
    r.params.delta1 = delta1;
    r.params.sigma = sigma;
    r.params.m = m;
    r.params.q = q;
    r.params.n_mult = n_mult;
    r.params.c_mq = c_mq;
    return r;
}

}  // namespace mz
