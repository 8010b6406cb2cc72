#pragma once

#include "udw/errors.hpp"

namespace udw::specfun {

// Guard band around zero frequency, in units of the active energy scale.
inline constexpr double eps_ir = 1e-8;

// Maximum supported Hermite / oscillator order; beyond this the
// Gaussian-times-polynomial form degrades in double precision.
inline constexpr int max_hermite_order = 64;

// Step function with theta(0) = 1.
double heaviside(double x);

// Physicists' Hermite polynomial H_n(x); throws unsupported_order
// unless 0 <= n <= max_hermite_order.
double hermite(int n, double x);

// L2-normalised harmonic oscillator wavefunction
// phi_n(x) = (2^n n! sqrt(pi))^{-1/2} e^{-x^2/2} H_n(x).
double oscillator_wavefunction(int n, double x);

enum class bessel_method {
    integral_representation,
    series_smallx,
    asymptotic_largex,
};

struct bessel_eval_report {
    double value;
    double est_error;
    bessel_method method;
};

// Modified Bessel function of imaginary order,
// K_{i nu}(x) = int_0^inf e^{-x cosh t} cos(nu t) dt, x > 0.
// nu may be negative (the function is even in nu). Default method is the
// integral representation; the explicit-method overload serves
// cross-validation and region-optimised callers.
bessel_eval_report bessel_k_imag(double nu, double x, double tol);
bessel_eval_report bessel_k_imag(double nu, double x, double tol,
                                 bessel_method method);

// Region-switched evaluation: series for small x, asymptotic expansion for
// large x, integral representation otherwise. Same contract as the default.
bessel_eval_report bessel_k_imag_auto(double nu, double x, double tol);

// Thermal occupation 1/(e^{2 pi delta / a} - 1); negative for delta < 0.
// Throws infrared_error when |delta| < a * eps_ir.
double planck_factor(double delta, double a);

} // namespace udw::specfun
