#include "mz/cheb_series.hpp"

#include <cmath>
#include <stdexcept>

namespace mz {

namespace {

using RowMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// v holds a row-major tensor (rest, last). Contract the last axis with M
// (out x last) and cycle it to the front: result layout (out, rest).
Eigen::VectorXcd contract_last_axis(const Eigen::VectorXcd& v, Eigen::Index rest,
                                    const Eigen::MatrixXd& M) {
    Eigen::Map<const RowMat> A(v.data(), rest, M.cols());
    RowMat B = A * M.transpose();  // rest x out
    Eigen::VectorXcd out(rest * M.rows());
    Eigen::Map<RowMat> O(out.data(), M.rows(), rest);
    O = B.transpose();
    return out;
}

// T_0..T_n at u by the three-term recurrence (valid for all real u).
Eigen::VectorXd cheb_row(int n, double u) {
    Eigen::VectorXd t(n + 1);
    t[0] = 1.0;
    if (n >= 1) t[1] = u;
    for (int k = 2; k <= n; ++k) t[k] = 2 * u * t[k - 1] - t[k - 2];
    return t;
}

std::complex<double> eval_series_impl(const TensorChebSeries& s, const Eigen::VectorXd& x) {
    Eigen::VectorXcd v = s.coeffs;
    Eigen::Index rest = v.size();
    for (int axis = s.m - 1; axis >= 0; --axis) {
        // contract the last (fastest) axis with the Chebyshev values for it
        const Eigen::VectorXd t = cheb_row(s.n, x[axis] / s.b);
        rest /= (s.n + 1);
        Eigen::Map<const RowMat> A(v.data(), rest, s.n + 1);
        Eigen::VectorXcd next = A * t;
        v = next;
    }
    return v[0];
}

}  // namespace

TensorChebSeries fit_tensor_cheb(const RealFn& f, double b, int n, int m, int K) {
    if (b <= 0) throw std::invalid_argument("b must be positive");
    if (n < 0 || m < 1 || m > 3) throw std::invalid_argument("bad degree or dimension");
    if (n > 64) throw std::invalid_argument("degree cap is 64");
    if (K < 2 * (n + 1)) throw std::invalid_argument("under-resolved quadrature");

    // Gauss-Chebyshev nodes per axis and the per-axis analysis matrix
    Eigen::VectorXd theta(K), node(K);
    for (int i = 0; i < K; ++i) {
        theta[i] = (2 * i + 1) * M_PI / (2 * K);
        node[i] = b * std::cos(theta[i]);
    }
    Eigen::MatrixXd M(n + 1, K);
    for (int k = 0; k <= n; ++k) {
        const double scale = (k == 0 ? 1.0 : 2.0) / K;
        for (int i = 0; i < K; ++i) M(k, i) = scale * std::cos(k * theta[i]);
    }

    Eigen::Index total = 1;
    for (int j = 0; j < m; ++j) total *= K;
    Eigen::VectorXcd values(total);
    std::vector<int> idx(static_cast<size_t>(m), 0);
    Eigen::VectorXd x(m);
    for (Eigen::Index flat = 0; flat < total; ++flat) {
        for (int j = 0; j < m; ++j) x[j] = node[idx[static_cast<size_t>(j)]];
        values[flat] = f(x);
        for (int j = m - 1; j >= 0; --j) {
            if (++idx[static_cast<size_t>(j)] < K) break;
            idx[static_cast<size_t>(j)] = 0;
        }
    }

    // transform one axis at a time; m cyclic shifts restore the axis order
    Eigen::VectorXcd v = values;
    for (int step = 0; step < m; ++step) {
        const Eigen::Index rest = v.size() / K;
        v = contract_last_axis(v, rest, M);
    }

    TensorChebSeries s;
    s.m = m;
    s.n = n;
    s.b = b;
    s.coeffs = v;
    return s;
}

std::complex<double> eval_series(const TensorChebSeries& s, const Eigen::VectorXd& x) {
    if (x.size() != s.m) throw std::invalid_argument("dimension mismatch");
    for (int j = 0; j < s.m; ++j)
        if (std::abs(x[j]) > s.b * (1 + 1e-12))
            throw std::invalid_argument("domain: point outside the fit cube");
    return eval_series_impl(s, x);
}

std::complex<double> eval_series_unchecked(const TensorChebSeries& s, const Eigen::VectorXd& x) {
    if (x.size() != s.m) throw std::invalid_argument("dimension mismatch");
    return eval_series_impl(s, x);
}

double coeff_decay_bound(const DecayCertificate& cert, const std::vector<int>& k, bool sharp) {
    if (cert.A <= 0 || cert.sigma <= 0 || cert.b <= 0 || cert.delta <= 0 || cert.m < 1)
        throw std::invalid_argument("certificate fields must be positive");
    if (static_cast<int>(k.size()) != cert.m) throw std::invalid_argument("dimension mismatch");
    long order = 0;
    int zeros = 0;
    for (int kj : k) {
        if (kj < 0) throw std::invalid_argument("multi-index must be nonnegative");
        order += kj;
        if (kj == 0) ++zeros;
    }
    const double d = cert.delta;
    const double ring = d + std::sqrt(1 + d * d);
    const int prefactor = sharp ? cert.m - zeros : cert.m;
    return prefactor * std::log(2.0) + std::log(cert.A) +
           cert.m * cert.sigma * cert.b * std::sqrt(1 + d * d) - order * std::log(ring);
}

double approx_error_bound(double A, int m, int n, double tau) {
    if (A <= 0 || m < 1 || n < 0) throw std::invalid_argument("bad bound parameters");
    static const double g0 = gamma0(1.0);
    if (!(tau > g0)) throw std::invalid_argument("rate not negative: tau <= gamma0");
    const double shrink = 1.0 - 1.0 / (tau + std::sqrt(1 + tau * tau));
    return std::log(static_cast<double>(m)) + m * std::log(2.0) - m * std::log(shrink) +
           std::log(A) + n * psi(tau);
}

double univariate_error_bound(double A, int n, double tau, const SymmetricCompact& K) {
    if (A <= 0 || n < 0) throw std::invalid_argument("bad bound parameters");
    const double g = gamma0(K.alpha);
    if (!(tau > g)) throw std::invalid_argument("rate not negative: tau <= gamma0(alpha)");
    const double c = 2.0 / (1.0 - K.alpha / (g + std::sqrt(1 + g * g)));
    return std::log(c) + std::log(A) + n * psi(tau, K.alpha);
}

std::vector<RatePoint> convergence_rate_experiment(double sigma, double tau,
                                                   const std::vector<int>& n_list) {
    if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
    static const double g0 = gamma0(1.0);
    if (!(tau > g0)) throw std::invalid_argument("rate not negative: tau <= gamma0");

    std::vector<RatePoint> out;
    out.reserve(n_list.size());
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("degrees must be positive");
        const double b = n / (sigma * tau);
        const int K = std::max(2 * (n + 1), 4 * static_cast<int>(std::ceil(sigma * b)));
        auto f = [sigma](const Eigen::VectorXd& x) {
            return std::complex<double>(std::exp(sigma * x[0]), 0.0);
        };
        const TensorChebSeries s = fit_tensor_cheb(f, b, n, 1, K);

        const int G = 4096;
        double sup_err = 0.0, sup_f = 0.0;
        Eigen::VectorXd x(1);
        for (int i = 0; i < G; ++i) {
            x[0] = -b + 2 * b * i / (G - 1.0);
            const double fv = std::exp(sigma * x[0]);
            const double ev = std::abs(fv - eval_series_impl(s, x));
            sup_err = std::max(sup_err, ev);
            sup_f = std::max(sup_f, fv);
        }
        RatePoint p;
        p.n = n;
        p.error = sup_err / sup_f;
        p.rate = std::exp(std::log(sup_err) / n);
        out.push_back(p);
    }
    return out;
}

}  // namespace mz
