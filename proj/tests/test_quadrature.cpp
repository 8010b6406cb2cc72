#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "udw/errors.hpp"
#include "udw/quadrature.hpp"
#include "udw/specfun.hpp"

#include <cmath>
#include <complex>

using namespace udw;
using cplx = std::complex<double>;

namespace {

quad::result run(quad::domain_kind dom,
                 std::function<cplx(double)> f, double tol,
                 double a = 0.0, double b = 0.0,
                 std::optional<double> osc = {}) {
    quad::integrand_spec spec;
    spec.f = std::move(f);
    spec.domain = dom;
    spec.a = a;
    spec.b = b;
    spec.oscillation = osc;
    return quad::integrate_adaptive(spec, tol);
}

} // namespace

TEST_CASE("plain exponential on the half line") {
    const auto r = run(quad::domain_kind::half_line,
                       [](double x) -> cplx { return std::exp(-x); }, 1e-12);
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - 1.0) < 1e-10);
    CHECK(std::abs(r.value.imag()) < 1e-12);
    CHECK(r.est_error <= 1e-12);
}

TEST_CASE("gaussian on the full line") {
    const auto r = run(quad::domain_kind::full_line,
                       [](double x) -> cplx { return std::exp(-0.5 * x * x); },
                       1e-12);
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - std::sqrt(2.0 * M_PI)) < 1e-10);
}

TEST_CASE("kernel integral cross-checks the bessel module") {
    // int_0^inf e^{-x cosh t} cos(nu t) dt at nu = 1, x = 1.
    const auto direct = run(
        quad::domain_kind::half_line,
        [](double t) -> cplx { return std::exp(-std::cosh(t)) * std::cos(t); },
        1e-12);
    const auto ref = specfun::bessel_k_imag(1.0, 1.0, 1e-12);
    CHECK(direct.converged);
    CHECK(std::abs(direct.value.real() - ref.value) < 2e-10);
}

TEST_CASE("budget exhaustion reports a non-converged best estimate") {
    long evals_seen = 0;
    quad::integrand_spec spec;
    spec.domain = quad::domain_kind::half_line;
    spec.f = [&evals_seen](double x) -> cplx {
        ++evals_seen;
        return std::cos(40.0 * x) * std::exp(-0.02 * x);
    };
    const auto r = quad::integrate_adaptive(spec, 1e-13, 180);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 180);
    CHECK(r.evaluations == evals_seen);
}

TEST_CASE("fourier window of a unit-mass gaussian at zero frequency") {
    const double inv = 1.0 / std::sqrt(2.0 * M_PI);
    const auto v = quad::fourier_window_1d(
        [inv](double x) { return inv * std::exp(-0.5 * x * x); }, 0.0, 1e-10);
    CHECK(std::abs(v.real() - 1.0) < 1e-10);
}

TEST_CASE("fourier window of the tuned double gaussian at resonance") {
    const double sigma = 1.0, lambda = 5.0;
    const double n_sigma = 1.0 / std::sqrt(2.0 * M_PI * sigma * sigma);
    const auto v = quad::fourier_window_1d(
        [=](double x) {
            return n_sigma * std::exp(-0.5 * x * x / (sigma * sigma)) * 2.0 *
                   std::cos(lambda * x);
        },
        5.0, 1e-10);
    CHECK(std::abs(v.real() - (1.0 + std::exp(-50.0))) < 1e-8);
    CHECK(std::abs(v.imag()) < 1e-10);
}

TEST_CASE("fourier window matches the closed form for gaussian-cosine data") {
    const double sigma = 0.7, lambda = 2.3, amp = 0.4;
    for (const double k : {0.0, 1.1, 2.3, 4.0}) {
        const auto v = quad::fourier_window_1d(
            [=](double x) {
                return amp * std::exp(-0.5 * x * x / (sigma * sigma)) * 2.0 *
                       std::cos(lambda * x);
            },
            k, 1e-10);
        const double s2 = sigma * sigma;
        const double closed =
            amp * std::sqrt(2.0 * M_PI * s2) *
            (std::exp(-0.5 * s2 * (k - lambda) * (k - lambda)) +
             std::exp(-0.5 * s2 * (k + lambda) * (k + lambda)));
        CHECK(std::abs(v.real() - closed) < 1e-8);
    }
}

TEST_CASE("fourier conjugation for a real asymmetric profile") {
    const auto f = [](double x) { return std::exp(-(x - 0.3) * (x - 0.3)); };
    for (const double k : {0.7, 1.9, 3.2}) {
        const auto plus = quad::fourier_window_1d(f, k, 1e-11);
        const auto minus = quad::fourier_window_1d(f, -k, 1e-11);
        CHECK(std::abs(minus - std::conj(plus)) < 1e-9);
    }
}

TEST_CASE("linearity of the adaptive engine") {
    const auto f = [](double x) -> cplx { return std::exp(-x); };
    const auto g = [](double x) -> cplx { return std::exp(-2.0 * x) * x; };
    const double alpha = 1.7, beta = -0.4;
    const auto rf = run(quad::domain_kind::half_line, f, 1e-12);
    const auto rg = run(quad::domain_kind::half_line, g, 1e-12);
    const auto rc = run(
        quad::domain_kind::half_line,
        [&](double x) -> cplx { return alpha * f(x) + beta * g(x); }, 1e-12);
    const cplx expect = alpha * rf.value + beta * rg.value;
    CHECK(std::abs(rc.value - expect) <= 3e-12);
}

TEST_CASE("halving the tolerance never worsens the reported error") {
    const auto f = [](double x) -> cplx {
        return std::exp(-x) * std::cos(3.0 * x);
    };
    double prev = std::numeric_limits<double>::infinity();
    for (double tol = 1e-6; tol > 1e-13; tol *= 0.5) {
        const auto r = run(quad::domain_kind::half_line, f, tol);
        CHECK(r.est_error <= prev);
        prev = r.est_error;
    }
}

TEST_CASE("oscillatory half line on exponentials") {
    const auto g = [](double s) -> cplx { return std::exp(-s); };
    const auto r0 = quad::oscillatory_halfline(g, 0.0, 1e-10, 40.0);
    CHECK(r0.converged);
    CHECK(std::abs(r0.value - cplx(1.0, 0.0)) < 1e-9);

    const auto r1 = quad::oscillatory_halfline(g, 1.0, 1e-10, 40.0);
    CHECK(r1.converged);
    // 1/(1+i) = (1 - i)/2.
    CHECK(std::abs(r1.value - cplx(0.5, -0.5)) < 1e-9);
}

TEST_CASE("oscillatory half line matches a dense trapezoid oracle") {
    const auto g = [](double s) -> cplx {
        return std::exp(-0.5 * s * s) * std::polar(1.0, -3.0 * s);
    };
    const double delta = 2.0;
    const auto r = quad::oscillatory_halfline(g, delta, 1e-9, 40.0);
    CHECK(r.converged);

    const int n = 400000;
    const double h = 40.0 / n;
    cplx acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = i * h;
        const cplx v = g(s) * std::polar(1.0, -delta * s);
        acc += (i == 0 || i == n) ? 0.5 * v : v;
    }
    acc *= h;
    CHECK(std::abs(r.value - acc) < 1e-7);
}

TEST_CASE("oscillatory half line flags an unresolved tail") {
    const auto g = [](double s) -> cplx { return 1.0 / (1.0 + s); };
    const auto r = quad::oscillatory_halfline(g, 1.0, 1e-8, 10.0);
    CHECK_FALSE(r.converged);
}

TEST_CASE("high-frequency phase extraction stays accurate") {
    // |delta| * horizon ~ 2400: far beyond plain-panel reach.
    const auto g = [](double s) -> cplx { return std::exp(-s); };
    const double delta = 60.0;
    const auto r = quad::oscillatory_halfline(g, delta, 1e-10, 40.0);
    CHECK(r.converged);
    const cplx expect = 1.0 / cplx(1.0, delta);
    CHECK(std::abs(r.value - expect) < 1e-9);
}
