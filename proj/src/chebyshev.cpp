#include "mz/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace mz {

namespace {

SignedLog from_value(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0 ? 1 : -1};
}

}  // namespace

SignedLog cheb_T(int n, double u) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    if (n == 0) return {0.0, 1};
    if (std::abs(u) <= 1.0) return from_value(std::cos(n * std::acos(u)));
    // cosh form: T_n(u) = cosh(n acosh u) = e^(n t) (1 + e^(-2 n t)) / 2
    const double t = std::acosh(std::abs(u));
    const double log_abs = n * t + std::log1p(std::exp(-2.0 * n * t)) - std::log(2.0);
    const int sign = (u > 0 || n % 2 == 0) ? 1 : -1;
    return {log_abs, sign};
}

double cheb_T_value(int n, double u) { return cheb_T(n, u).value(); }

double cheb_growth_bound(int n, double u) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (u < 1.0) throw std::invalid_argument("domain: u must be >= 1");
    return (n - 1) * std::log(2.0) + n * std::log(u);
}

double cheb_deriv(int n, int l, double u) {
    if (n < 0 || l < 0) throw std::invalid_argument("n, l must be nonnegative");
    if (l > n) return 0.0;
    // d[k][j] = j-th derivative of T_k at u, via the differentiated recurrence
    // T_{k+1}^(j) = 2u T_k^(j) + 2j T_k^(j-1) - T_{k-1}^(j), in long double.
    const size_t cols = static_cast<size_t>(l) + 1;
    std::vector<long double> prev(cols, 0.0L), cur(cols, 0.0L), next(cols, 0.0L);
    prev[0] = 1.0L;  // T_0
    if (n == 0) return static_cast<double>(prev[static_cast<size_t>(l)]);
    cur[0] = static_cast<long double>(u);  // T_1
    if (l >= 1) cur[1] = 1.0L;
    const long double lu = static_cast<long double>(u);
    for (int k = 1; k < n; ++k) {
        for (int j = 0; j <= l; ++j) {
            long double v = 2.0L * lu * cur[static_cast<size_t>(j)] -
                            prev[static_cast<size_t>(j)];
            if (j >= 1) v += 2.0L * j * cur[static_cast<size_t>(j) - 1];
            next[static_cast<size_t>(j)] = v;
        }
        prev = cur;
        cur = next;
    }
    return static_cast<double>(cur[static_cast<size_t>(l)]);
}

double outside_bound_tensor(int n, const std::vector<int>& k, const Eigen::VectorXd& x,
                            double lambda) {
    if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
    const int m = static_cast<int>(x.size());
    if (static_cast<int>(k.size()) != m) throw std::invalid_argument("dimension mismatch");
    double log_factor = 0.0;
    long total_order = 0;
    for (int j = 0; j < m; ++j) {
        const int kj = k[static_cast<size_t>(j)];
        if (kj < 0 || kj > n) throw std::invalid_argument("derivative order out of range");
        if (std::abs(x[j]) <= lambda) throw std::invalid_argument("domain: |x_j| must exceed lambda");
        total_order += kj;
        // derivatives of T_n keep all roots inside (-1,1), so this is nonzero
        log_factor += std::log(std::abs(cheb_deriv(n, kj, x[j] / lambda)));
    }
    return log_factor - total_order * std::log(lambda);
}

double coeff_sum_bound_interval(int n, int m, double A, double B) {
    if (n < 0 || m < 1) throw std::invalid_argument("bad degree or dimension");
    if (!(0 < A && A < B)) throw std::invalid_argument("domain: need 0 < A < B");
    const double u = (B + A + 2) / (B - A);
    return m * cheb_T(n, u).log_abs;
}

double coeff_sum_bound_exp(int n, int m, double b) {
    if (n < 0 || m < 1) throw std::invalid_argument("bad degree or dimension");
    if (b <= 0) throw std::invalid_argument("b must be positive");
    return m * n * std::log(1.0 / std::tanh(b / 4));
}

double psi(double tau, double alpha) {
    if (tau <= 0) throw std::invalid_argument("tau must be positive");
    const double s = std::sqrt(1 + tau * tau);
    return s / tau - std::log(tau + s) + std::log(alpha);
}

namespace {

// Monotone-decreasing root finder: doubles the upper bracket from seed until
// the function goes negative, then bisects to tol.
template <class F>
double bisect_decreasing(F&& f, double lo, double seed, double tol) {
    double hi = seed;
    int guard = 0;
    while (f(hi) > 0) {
        lo = hi;
        hi *= 2;
        if (++guard > 200) throw std::runtime_error("bracket search failed");
    }
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = (lo + hi) / 2;
        (f(mid) > 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

}  // namespace

double gamma0(double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
    return bisect_decreasing([alpha](double t) { return psi(t, alpha); }, 1e-12, 1.0, 1e-10);
}

SymmetricCompact alpha_of(CompactKind kind, double param) {
    switch (kind) {
        case CompactKind::interval:
            return {kind, 1.0};
        case CompactKind::ellipse:
            if (param < 1.0) throw std::invalid_argument("ellipse parameter must be >= 1");
            return {kind, param};
        case CompactKind::disk: {
            if (param <= 0.0) throw std::invalid_argument("disk radius must be positive");
            return {kind, param + std::sqrt(param * param + 1)};
        }
        case CompactKind::square: {
            const double phi = (1 + std::sqrt(5.0)) / 2;
            return {kind, phi + std::sqrt(phi)};
        }
    }
    throw std::invalid_argument("unknown compact kind");
}

double tau0(double b) {
    if (b <= 0) throw std::invalid_argument("b must be positive");
    const double g0 = gamma0(1.0);
    auto G = [b](double t) {
        const double s = std::sqrt(1 + t * t);
        return b * (s - t * std::log(t + s)) + std::log(1.0 / std::tanh(b / 4));
    };
    // G(gamma0) = log coth(b/4) > 0 and G decreases beyond it
    return bisect_decreasing(G, g0, g0 + 1.0, 1e-10);
}

}  // namespace mz
