#include "udw/specfun.hpp"

#include "udw/quadrature.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace udw::specfun {

double heaviside(double x) { return x < 0.0 ? 0.0 : 1.0; }

namespace {

void check_order(int n) {
    if (n < 0 || n > max_hermite_order)
        throw unsupported_order("hermite order " + std::to_string(n) +
                                " outside supported range [0, " +
                                std::to_string(max_hermite_order) + "]");
}

} // namespace

double hermite(int n, double x) {
    check_order(n);
    if (n == 0) return 1.0;
    double hm = 1.0;        // H_{k-1}
    double h = 2.0 * x;     // H_k
    for (int k = 1; k < n; ++k) {
        double hp = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = hp;
    }
    return h;
}

double oscillator_wavefunction(int n, double x) {
    check_order(n);
    // Recurrence in the normalised functions keeps magnitudes O(1).
    const double phi0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return phi0;
    double pm = phi0;
    double p = std::sqrt(2.0) * x * phi0;
    for (int k = 1; k < n; ++k) {
        double pp = x * std::sqrt(2.0 / (k + 1.0)) * p -
                    std::sqrt(k / (k + 1.0)) * pm;
        pm = p;
        p = pp;
    }
    return p;
}

namespace {

constexpr double euler_gamma = 0.57721566490153286060651209008240;

// Lanczos approximation, g = 7, valid for Re z > 0.
std::complex<double> gamma_lanczos(std::complex<double> z) {
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    z -= 1.0;
    std::complex<double> acc = coef[0];
    for (int i = 1; i < 9; ++i) acc += coef[i] / (z + double(i));
    std::complex<double> t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

bessel_eval_report bessel_integral(double mu, double x, double tol) {
    // Truncate where e^{-x cosh T} is far below the target accuracy.
    const double target = std::min(tol, 1e-12) * 1e-3;
    const double c = std::max(2.0, -std::log(target) / x);
    const double T = std::acosh(c);
    quad::integrand_spec spec;
    spec.f = [mu, x](double t) {
        return std::complex<double>(std::exp(-x * std::cosh(t)) *
                                    std::cos(mu * t));
    };
    spec.domain = quad::domain_kind::finite;
    spec.a = 0.0;
    spec.b = T;
    spec.oscillation = mu;
    auto r = quad::integrate_adaptive(spec, tol * 0.5);
    const double tail = std::exp(-x * c) / (x * std::sinh(T));
    double est = r.est_error + tail;
    if (!r.converged)
        throw quadrature_failure("bessel_k_imag integral representation did "
                                 "not converge",
                                 r.value.real(), est);
    return {r.value.real(), est, bessel_method::integral_representation};
}

bessel_eval_report bessel_series(double mu, double x, double /*tol*/) {
    const double q = 0.25 * x * x;
    double value;
    double roundoff;
    if (mu < 1e-6) {
        // Classic K_0 series; the O(mu^2) error stays below 1e-12 here.
        double i0 = 1.0, term = 1.0, sum = 0.0, harmonic = 0.0;
        for (int k = 1; k <= 40; ++k) {
            term *= q / (double(k) * double(k));
            i0 += term;
            harmonic += 1.0 / k;
            sum += term * harmonic;
            if (term < 1e-20) break;
        }
        value = -(std::log(0.5 * x) + euler_gamma) * i0 + sum;
        roundoff = 1e-15 * (std::abs(value) + 1.0) + mu * mu;
    } else {
        // K_{i mu} = -pi Im I_{i mu}(x) / sinh(pi mu).
        const std::complex<double> imu(0.0, mu);
        std::complex<double> term =
            std::exp(imu * std::log(0.5 * x)) / gamma_lanczos(1.0 + imu);
        std::complex<double> sum = term;
        for (int k = 0; k <= 40; ++k) {
            term *= q / ((k + 1.0) * (std::complex<double>(k + 1.0) + imu));
            sum += term;
            if (std::abs(term) < 1e-20 * std::abs(sum)) break;
        }
        const double sh = std::sinh(M_PI * mu);
        value = -M_PI * sum.imag() / sh;
        roundoff = 1e-15 * (std::abs(sum) * M_PI / sh + 1e-16);
    }
    return {value, std::max(roundoff, 1e-15), bessel_method::series_smallx};
}

bessel_eval_report bessel_asymptotic(double mu, double x, double /*tol*/) {
    // K_{i mu}(x) ~ sqrt(pi/2x) e^{-x} sum_k a_k / x^k with
    // a_k = prod_{j<=k} -(4 mu^2 + (2j-1)^2) / (k 8).
    double term = 1.0, sum = 1.0, smallest = 1.0;
    for (int k = 1; k <= 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(4.0 * mu * mu + odd * odd) / (k * 8.0 * x);
        if (std::abs(term) >= smallest) {
            // Divergent tail reached; truncate at the smallest term.
            break;
        }
        sum += term;
        smallest = std::abs(term);
        if (smallest < 1e-18) break;
    }
    const double pref = std::sqrt(0.5 * M_PI / x) * std::exp(-x);
    const double est = pref * smallest + 1e-15 * pref * std::abs(sum);
    return {pref * sum, std::max(est, 1e-18), bessel_method::asymptotic_largex};
}

} // namespace

bessel_eval_report bessel_k_imag(double nu, double x, double tol,
                                 bessel_method method) {
    if (!(x > 0.0)) throw error("bessel_k_imag requires x > 0");
    if (!(tol > 0.0)) throw error("bessel_k_imag requires tol > 0");
    const double mu = std::abs(nu);
    switch (method) {
        case bessel_method::series_smallx: return bessel_series(mu, x, tol);
        case bessel_method::asymptotic_largex:
            return bessel_asymptotic(mu, x, tol);
        case bessel_method::integral_representation:
        default: return bessel_integral(mu, x, tol);
    }
}

bessel_eval_report bessel_k_imag(double nu, double x, double tol) {
    return bessel_k_imag(nu, x, tol,
                         bessel_method::integral_representation);
}

bessel_eval_report bessel_k_imag_auto(double nu, double x, double tol) {
    const double mu = std::abs(nu);
    if (x <= 1.0) return bessel_series(mu, x, tol);
    if (x >= 25.0) return bessel_asymptotic(mu, x, tol);
    return bessel_integral(mu, x, tol);
}

double planck_factor(double delta, double a) {
    if (!(a > 0.0)) throw error("planck_factor requires a > 0");
    if (std::abs(delta) < a * eps_ir)
        throw infrared_error("planck_factor evaluated inside the infrared "
                             "guard band |delta| < a * eps_ir");
    const double x = 2.0 * M_PI * delta / a;
    const double d = std::expm1(x);
    if (std::isinf(d)) return 0.0;
    return 1.0 / d;
}

} // namespace udw::specfun
