#include "mz/models.hpp"

#include <cmath>
#include <stdexcept>

#include "mz/errors.hpp"

namespace mz {

Lq Lq::finite(double q) {
    if (!(q >= 1.0) || !std::isfinite(q))
        throw std::invalid_argument("q must be a finite real >= 1");
    return Lq{false, q};
}

namespace {

// sin(t)/t with the degree-6 Taylor polynomial below |t| < 1e-4.
double sinc(double t) {
    const double t2 = t * t;
    if (std::abs(t) < 1e-4) return 1.0 - t2 / 6 + t2 * t2 / 120 - t2 * t2 * t2 / 5040;
    return std::sin(t) / t;
}

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

int model_dim(const EfetModel& model) {
    return std::visit(
        [](const auto& m) -> int {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SincPower>) return m.m;
            else if constexpr (std::is_same_v<T, ShiftedSinc>) return static_cast<int>(m.shift.size());
            else if constexpr (std::is_same_v<T, ExpPolynomial>) return m.m;
            else return m.m;
        },
        model);
}

std::complex<double> evaluate(const EfetModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model_dim(model)) throw std::invalid_argument("dimension mismatch");
    return std::visit(
        [&x](const auto& m) -> std::complex<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SincPower>) {
                const double u = x.norm() / m.gamma;
                return ipow(m.sigma * sinc(m.sigma * u), m.gamma);
            } else if constexpr (std::is_same_v<T, ShiftedSinc>) {
                const double r = (x - m.shift).norm();
                return m.sigma * sinc(m.sigma * r);
            } else if constexpr (std::is_same_v<T, ExpPolynomial>) {
                std::complex<double> acc(0.0, 0.0);
                const int side = m.degree + 1;
                std::vector<int> k(static_cast<size_t>(m.m), 0);
                for (Eigen::Index flat = 0; flat < m.coeffs.size(); ++flat) {
                    double dot = 0.0;
                    for (int j = 0; j < m.m; ++j) dot += k[static_cast<size_t>(j)] * x[j];
                    acc += m.coeffs[flat] * std::exp(dot);
                    for (int j = m.m - 1; j >= 0; --j) {
                        if (++k[static_cast<size_t>(j)] < side) break;
                        k[static_cast<size_t>(j)] = 0;
                    }
                }
                return acc;
            } else {
                const double H = mollifier(m, x);
                return eval_series_unchecked(m.base, x) * H;
            }
        },
        model);
}

int half_dim_exponent(int m, const Lq& q) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    if (q.infinite) return 0;
    return static_cast<int>(std::ceil(m / (2 * q.value) - 1e-9));
}

double efet_type(const EfetModel& model) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SincPower>) return m.sigma;
            else if constexpr (std::is_same_v<T, ShiftedSinc>) return m.sigma;
            else if constexpr (std::is_same_v<T, ExpPolynomial>) return m.degree;
            else {
                const int c = half_dim_exponent(m.m, m.q);
                return 2 * m.beta * (1.0 + (c + 1.0) / m.n);
            }
        },
        model);
}

bool has_finite_lq(const EfetModel& model, const Lq& q) {
    return std::visit(
        [&q](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SincPower>) {
                return q.infinite || m.gamma * q.value > m.m;
            } else if constexpr (std::is_same_v<T, ShiftedSinc>) {
                return q.infinite || q.value > static_cast<int>(m.shift.size());
            } else if constexpr (std::is_same_v<T, ExpPolynomial>) {
                bool any = false, beyond_constant = false;
                for (Eigen::Index i = 0; i < m.coeffs.size(); ++i)
                    if (m.coeffs[i] != std::complex<double>(0.0, 0.0)) {
                        any = true;
                        if (i != 0) beyond_constant = true;
                    }
                if (!any) return true;                  // zero function
                if (!beyond_constant) return q.infinite;  // nonzero constant
                return false;
            } else {
                (void)m;
                return true;  // the mollifier enforces decay
            }
        },
        model);
}

double mollifier(const MollifiedSeries& ms, const Eigen::VectorXd& x) {
    const int expnt = 2 * ms.n + 2 * half_dim_exponent(ms.m, ms.q) + 2;
    const double t = ms.beta * x.norm() / ms.n;
    return ipow(sinc(t), expnt);
}

MollifiedSeries make_mollified(const TensorChebSeries& base, int n, double tau, double epsilon,
                               double sigma, const Lq& q) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (tau <= 0 || epsilon <= 0 || sigma <= 0)
        throw std::invalid_argument("tau, epsilon, sigma must be positive");
    if (base.n != 2 * n) throw std::invalid_argument("base degree must be 2n");
    MollifiedSeries ms;
    ms.base = base;
    ms.n = n;
    ms.m = base.m;
    ms.sigma = sigma;
    ms.q = q;
    const double w_star = 2.0 / (sigma * std::sqrt(static_cast<double>(base.m)));
    ms.beta = 2 * tau * std::exp((1 + 2 * epsilon) / tau) / w_star;
    return ms;
}

double mollified_decay_bound(const MollifiedSeries& ms, double tau, double epsilon, double r,
                             double C) {
    if (r <= 0) throw std::invalid_argument("r must be positive");
    const double w_star = 2.0 / (ms.sigma * std::sqrt(static_cast<double>(ms.m)));
    const double mq = ms.q.infinite ? 0.0 : ms.m / ms.q.value;
    return C * std::exp(-2 * ms.n * epsilon / tau) * std::pow(w_star * ms.n / (tau * r), mq + 2);
}

bool decay_check_mollified(const MollifiedSeries& ms, double tau, double epsilon,
                           const Eigen::VectorXd& x) {
    if (x.size() != ms.m) throw std::invalid_argument("dimension mismatch");
    const double l1 = x.lpNorm<1>();
    if (!(l1 > 2 * ms.n / (tau * ms.sigma)))
        throw std::invalid_argument("domain: point inside the octahedron");

    // calibrate C from the model's own sup on the base cube
    double sup = 0.0;
    const int G = 33;
    Eigen::VectorXd p(ms.m);
    std::vector<int> idx(static_cast<size_t>(ms.m), 0);
    Eigen::Index total = 1;
    for (int j = 0; j < ms.m; ++j) total *= G;
    EfetModel self = ms;
    for (Eigen::Index flat = 0; flat < total; ++flat) {
        for (int j = 0; j < ms.m; ++j)
            p[j] = -ms.base.b + 2 * ms.base.b * idx[static_cast<size_t>(j)] / (G - 1.0);
        sup = std::max(sup, std::abs(evaluate(self, p)));
        for (int j = ms.m - 1; j >= 0; --j) {
            if (++idx[static_cast<size_t>(j)] < G) break;
            idx[static_cast<size_t>(j)] = 0;
        }
    }
    const double bound = mollified_decay_bound(ms, tau, epsilon, x.norm(), 2 * sup);
    return std::abs(evaluate(self, x)) <= bound;
}

namespace {

// D^k f at x by nested central differences, one order at a time; 2^<k> calls.
std::complex<double> finite_diff(const EfetModel& model, const Eigen::VectorXd& x,
                                 std::vector<int>& k, double h) {
    int axis = -1;
    for (size_t j = 0; j < k.size(); ++j)
        if (k[j] > 0) {
            axis = static_cast<int>(j);
            break;
        }
    if (axis < 0) return evaluate(model, x);
    k[static_cast<size_t>(axis)] -= 1;
    Eigen::VectorXd xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    const std::complex<double> d =
        (finite_diff(model, xp, k, h) - finite_diff(model, xm, k, h)) / (2 * h);
    k[static_cast<size_t>(axis)] += 1;
    return d;
}

struct GridNorms {
    double deriv = 0.0;
    double value = 0.0;
};

// ||D^k f||_q and ||f||_q on the window by the midpoint rule (grid sup for
// q = infinity), sharing one grid sweep.
GridNorms grid_norms(const EfetModel& model, std::vector<int> k, const Lq& q, const Window& w,
                     int ppa, double h) {
    const int m = w.dim();
    const double step = 2 * w.half_side / ppa;
    Eigen::Index total = 1;
    for (int j = 0; j < m; ++j) total *= ppa;

    GridNorms acc;
    double sum_d = 0.0, sum_f = 0.0;
    std::vector<int> idx(static_cast<size_t>(m), 0);
    Eigen::VectorXd x(m);
    for (Eigen::Index flat = 0; flat < total; ++flat) {
        for (int j = 0; j < m; ++j)
            x[j] = w.center[j] - w.half_side + (idx[static_cast<size_t>(j)] + 0.5) * step;
        const double dv = std::abs(finite_diff(model, x, k, h));
        const double fv = std::abs(evaluate(model, x));
        if (q.infinite) {
            acc.deriv = std::max(acc.deriv, dv);
            acc.value = std::max(acc.value, fv);
        } else {
            sum_d += std::pow(dv, q.value);
            sum_f += std::pow(fv, q.value);
        }
        for (int j = m - 1; j >= 0; --j) {
            if (++idx[static_cast<size_t>(j)] < ppa) break;
            idx[static_cast<size_t>(j)] = 0;
        }
    }
    if (!q.infinite) {
        const double cell = std::pow(step, m);
        acc.deriv = std::pow(sum_d * cell, 1.0 / q.value);
        acc.value = std::pow(sum_f * cell, 1.0 / q.value);
    }
    return acc;
}

}  // namespace

double bernstein_check(const EfetModel& model, const std::vector<int>& k, const Lq& q,
                       const Window& w, int points_per_axis) {
    if (static_cast<int>(k.size()) != model_dim(model))
        throw std::invalid_argument("dimension mismatch");
    if (points_per_axis < 2) throw std::invalid_argument("resolution too low");
    const double sigma = efet_type(model);
    const double h = sigma > 0 ? 1e-4 / sigma : 1e-4;  // sigma 0 only for constants

    const GridNorms g = grid_norms(model, k, q, w, points_per_axis, h);
    if (g.value == 0.0) return 0.0;
    const double ratio = g.deriv / g.value;
    long order = 0;
    for (int kj : k) order += kj;
    const double cap = std::pow(sigma, static_cast<double>(order)) * 1.01;
    if (ratio > cap)
        throw assertion_error("derivative ratio " + std::to_string(ratio) +
                              " exceeds type bound " + std::to_string(cap));
    return ratio;
}

double gradient_l1_check(const EfetModel& model, const Window& w, int points_per_axis) {
    if (points_per_axis < 2) throw std::invalid_argument("resolution too low");
    const int m = w.dim();
    if (m != model_dim(model)) throw std::invalid_argument("dimension mismatch");
    const double sigma = efet_type(model);
    const double h = sigma > 0 ? 1e-4 / sigma : 1e-4;
    const double step = 2 * w.half_side / points_per_axis;

    Eigen::Index total = 1;
    for (int j = 0; j < m; ++j) total *= points_per_axis;
    double sup_grad = 0.0, sup_f = 0.0;
    std::vector<int> idx(static_cast<size_t>(m), 0);
    std::vector<int> k(static_cast<size_t>(m), 0);
    Eigen::VectorXd x(m);
    for (Eigen::Index flat = 0; flat < total; ++flat) {
        for (int j = 0; j < m; ++j)
            x[j] = w.center[j] - w.half_side + (idx[static_cast<size_t>(j)] + 0.5) * step;
        double l1 = 0.0;
        for (int j = 0; j < m; ++j) {
            k[static_cast<size_t>(j)] = 1;
            l1 += std::abs(finite_diff(model, x, k, h));
            k[static_cast<size_t>(j)] = 0;
        }
        sup_grad = std::max(sup_grad, l1);
        sup_f = std::max(sup_f, std::abs(evaluate(model, x)));
        for (int j = m - 1; j >= 0; --j) {
            if (++idx[static_cast<size_t>(j)] < points_per_axis) break;
            idx[static_cast<size_t>(j)] = 0;
        }
    }
    if (sup_f == 0.0) return 0.0;
    const double ratio = sup_grad / sup_f;
    const double cap = m * sigma * 1.01;
    if (ratio > cap)
        throw assertion_error("gradient l1 ratio " + std::to_string(ratio) +
                              " exceeds type bound " + std::to_string(cap));
    return ratio;
}

}  // namespace mz
