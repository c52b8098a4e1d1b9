#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mz/cheb_series.hpp"
#include "support.hpp"

using namespace mz;
using test::vec;
using cplx = std::complex<double>;

namespace {

double T(int n, double u) {
    // plain recurrence, independent of the library log-space path
    double a = 1, b = u;
    if (n == 0) return 1;
    for (int k = 2; k <= n; ++k) {
        const double c = 2 * u * b - a;
        a = b;
        b = c;
    }
    return b;
}

}  // namespace

TEST_CASE("fit recovers exact Chebyshev coefficients of a polynomial") {
    const double b = 2.0;
    auto f = [b](const Eigen::VectorXd& x) {
        const double u = x[0] / b;
        return cplx(2.0 + 0.5 * T(1, u) - 1.25 * T(4, u), 0.0);
    };
    const auto s = fit_tensor_cheb(f, b, 4, 1, 10);
    REQUIRE(s.coeffs.size() == 5);
    CHECK(s.coeffs[0].real() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(s.coeffs[1].real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(s.coeffs[2]) < 1e-13);
    CHECK(std::abs(s.coeffs[3]) < 1e-13);
    CHECK(s.coeffs[4].real() == doctest::Approx(-1.25).epsilon(1e-13));

    for (double x : {-1.9, -0.3, 0.0, 1.2, 2.0})
        CHECK(eval_series(s, vec({x})).real() == doctest::Approx(f(vec({x})).real()).epsilon(1e-12));
}

TEST_CASE("fit of e^x reproduces the Bessel coefficients") {
    // c_0 = I_0(1), c_k = 2 I_k(1); references to 15 digits
    auto f = [](const Eigen::VectorXd& x) { return cplx(std::exp(x[0]), 0.0); };
    const auto s = fit_tensor_cheb(f, 1.0, 6, 1, 40);
    const double ref[] = {1.2660658777520084, 1.1303182079849700, 0.2714953395340766,
                          0.0443368498486638, 0.0054742404420937, 0.0005429263119139,
                          0.0000449773229543};
    for (int k = 0; k <= 6; ++k) {
        CHECK(s.coeffs[k].real() == doctest::Approx(ref[k]).epsilon(1e-9));
        CHECK(std::abs(s.coeffs[k].imag()) < 1e-15);
    }
}

TEST_CASE("two-axis fit keeps the row-major index layout") {
    const double b = 1.5;
    auto f = [b](const Eigen::VectorXd& x) {
        return cplx(3.0 + T(1, x[0] / b) * T(2, x[1] / b), 0.0);
    };
    const auto s = fit_tensor_cheb(f, b, 3, 2, 8);
    REQUIRE(s.coeffs.size() == 16);
    CHECK(s.coeffs[s.index({0, 0})].real() == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(s.coeffs[s.index({1, 2})].real() == doctest::Approx(1.0).epsilon(1e-13));
    // everything else vanishes
    double rest = 0;
    for (Eigen::Index i = 0; i < 16; ++i)
        if (i != s.index({0, 0}) && i != s.index({1, 2})) rest = std::max(rest, std::abs(s.coeffs[i]));
    CHECK(rest < 1e-13);
}

TEST_CASE("non-separable entire function is reproduced to near machine precision") {
    auto f = [](const Eigen::VectorXd& x) {
        return std::exp(cplx(x[0] + 2 * x[1], x[0] - x[1]));
    };
    const auto s = fit_tensor_cheb(f, 1.0, 20, 2, 48);
    for (double x : {-1.0, -0.37, 0.41}) {
        for (double y : {-0.8, 0.13, 1.0}) {
            const cplx want = f(vec({x, y}));
            const cplx got = eval_series(s, vec({x, y}));
            CHECK(std::abs(want - got) <= 1e-12 * std::abs(want));
        }
    }
}

TEST_CASE("three-axis fit evaluates correctly") {
    auto f = [](const Eigen::VectorXd& x) {
        return cplx(T(2, x[0]) * T(1, x[1]) + 0.5 * T(3, x[2]), 0.0);
    };
    const auto s = fit_tensor_cheb(f, 1.0, 3, 3, 8);
    CHECK(s.coeffs[s.index({2, 1, 0})].real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.coeffs[s.index({0, 0, 3})].real() == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {-0.9, 0.2, 0.7})
        CHECK(eval_series(s, vec({x, -x, x * x})).real() ==
              doctest::Approx(f(vec({x, -x, x * x})).real()).epsilon(1e-12));
}

TEST_CASE("fit parameter validation") {
    auto f = [](const Eigen::VectorXd&) { return cplx(1.0, 0.0); };
    CHECK_THROWS_WITH_AS(fit_tensor_cheb(f, 1.0, 4, 1, 9), "under-resolved quadrature",
                         std::invalid_argument);
    CHECK_THROWS_AS(fit_tensor_cheb(f, 0.0, 4, 1, 10), std::invalid_argument);
    CHECK_THROWS_AS(fit_tensor_cheb(f, 1.0, 65, 1, 140), std::invalid_argument);
    CHECK_THROWS_AS(fit_tensor_cheb(f, 1.0, 4, 4, 10), std::invalid_argument);
}

TEST_CASE("eval_series enforces the cube; unchecked extends past it") {
    TensorChebSeries s;
    s.m = 1;
    s.n = 1;
    s.b = 2.0;
    s.coeffs = Eigen::VectorXcd::Zero(2);
    s.coeffs[1] = cplx(1.0, 0.0);  // the series is T_1(x/2) = x/2
    CHECK(eval_series(s, vec({1.0})).real() == doctest::Approx(0.5));
    CHECK_THROWS_AS(eval_series(s, vec({2.1})), std::invalid_argument);
    CHECK(eval_series_unchecked(s, vec({6.0})).real() == doctest::Approx(3.0));
    CHECK_THROWS_AS(eval_series(s, vec({1.0, 1.0})), std::invalid_argument);
}

TEST_CASE("coeff_decay_bound closed form and the sharp variant") {
    DecayCertificate cert;
    cert.A = 1.0;
    cert.sigma = 1.0;
    cert.b = 1.0;
    cert.delta = 1.0;
    cert.m = 1;
    const double r2 = std::sqrt(2.0);
    CHECK(coeff_decay_bound(cert, {0}) == doctest::Approx(std::log(2.0) + r2).epsilon(1e-13));
    CHECK(coeff_decay_bound(cert, {0}, true) == doctest::Approx(r2).epsilon(1e-13));
    CHECK(coeff_decay_bound(cert, {3}) ==
          doctest::Approx(std::log(2.0) + r2 - 3 * std::log(1 + r2)).epsilon(1e-12));

    DecayCertificate cert2 = cert;
    cert2.m = 2;
    CHECK(coeff_decay_bound(cert2, {2, 0}) ==
          doctest::Approx(2 * std::log(2.0) + 2 * r2 - 2 * std::log(1 + r2)).epsilon(1e-12));
    CHECK(coeff_decay_bound(cert2, {2, 0}, true) ==
          doctest::Approx(std::log(2.0) + 2 * r2 - 2 * std::log(1 + r2)).epsilon(1e-12));
    CHECK_THROWS_AS(coeff_decay_bound(cert, {0, 0}), std::invalid_argument);
}

TEST_CASE("coeff_decay_bound dominates the measured coefficients of e^x") {
    auto f = [](const Eigen::VectorXd& x) { return cplx(std::exp(x[0]), 0.0); };
    const auto s = fit_tensor_cheb(f, 1.0, 10, 1, 40);
    DecayCertificate cert;
    cert.A = 1.0;
    cert.sigma = 1.0;
    cert.b = 1.0;
    cert.m = 1;
    for (double delta : {0.5, 1.0, 2.0, 4.0}) {
        cert.delta = delta;
        for (int k = 0; k <= 10; ++k)
            CHECK(std::log(std::abs(s.coeffs[k])) <= coeff_decay_bound(cert, {k}) + 1e-12);
    }
}

TEST_CASE("approx_error_bound reference values and domain") {
    CHECK(approx_error_bound(1.0, 1, 10, 2.0) ==
          doctest::Approx(-2.2935912141699480).epsilon(1e-12));
    CHECK(approx_error_bound(1.0, 2, 6, 3.0) ==
          doctest::Approx(-2.1525447531345361).epsilon(1e-12));
    // additive in log A
    CHECK(approx_error_bound(10.0, 1, 10, 2.0) ==
          doctest::Approx(-2.2935912141699480 + std::log(10.0)).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(approx_error_bound(1.0, 1, 10, 1.5),
                         "rate not negative: tau <= gamma0", std::invalid_argument);
}

TEST_CASE("approx_error_bound dominates the measured truncation error") {
    // fit e^x at tau = 2: the cube is [-n/2, n/2], A = 1, sigma = 1
    for (int n : {12, 20}) {
        const auto pts = convergence_rate_experiment(1.0, 2.0, {n});
        const double abs_err = std::pow(pts[0].rate, n);
        CHECK(std::log(abs_err) <= approx_error_bound(1.0, 1, n, 2.0));
    }
}

TEST_CASE("univariate_error_bound with explicit compact constants") {
    CHECK(univariate_error_bound(1.0, 12, 2.0, alpha_of(CompactKind::interval)) ==
          doctest::Approx(-2.8555496967222393).epsilon(1e-8));
    CHECK(univariate_error_bound(1.0, 12, 4.0, alpha_of(CompactKind::disk, 1.0)) ==
          doctest::Approx(-1.0633977294486636).epsilon(1e-8));
    // below gamma0(alpha) the rate is not negative
    CHECK_THROWS_AS(univariate_error_bound(1.0, 12, 2.0, alpha_of(CompactKind::disk, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("convergence_rate_experiment shape and limit behavior") {
    const auto pts = convergence_rate_experiment(1.0, 2.0, {8, 16, 24});
    REQUIRE(pts.size() == 3);
    const double limit = std::exp(psi(2.0));  // 0.72209...
    double prev = 0.0;
    for (const auto& p : pts) {
        CHECK(p.error > 0.0);
        CHECK(p.error < 1e-2);
        CHECK(p.rate > 0.5);
        CHECK(p.rate < limit);
        CHECK(p.rate >= prev);  // approaches the limit from below
        prev = p.rate;
    }
    CHECK(pts[0].n == 8);
    // scale invariance in sigma: only the fit cube rescales
    const auto scaled = convergence_rate_experiment(4.0, 2.0, {16});
    CHECK(scaled[0].rate == doctest::Approx(pts[1].rate).epsilon(1e-6));
    CHECK_THROWS_AS(convergence_rate_experiment(0.0, 2.0, {8}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_rate_experiment(1.0, 1.0, {8}), std::invalid_argument);
}
