#pragma once

#include "udw/errors.hpp"

#include <complex>
#include <functional>
#include <optional>

namespace udw::quad {

struct result {
    std::complex<double> value{0.0, 0.0};
    double est_error = 0.0;
    long evaluations = 0;
    bool converged = false;
};

enum class domain_kind { finite, half_line, full_line };

struct integrand_spec {
    std::function<std::complex<double>(double)> f;
    domain_kind domain = domain_kind::finite;
    double a = 0.0; // finite domain bounds
    double b = 0.0;
    // Known carrier frequency of an e^{-i w s} phase, used to seed the
    // initial subdivision; required for half-line Fourier kernels.
    std::optional<double> oscillation;
};

inline constexpr long default_budget = 2'000'000;

// Adaptive Gauss-Kronrod integration over the integrand's domain. Tolerance is
// absolute; converged implies est_error <= tol. Budget exhaustion returns
// the best estimate with converged = false.
result integrate_adaptive(const integrand_spec& spec, double tol,
                          long budget = default_budget);

// Fourier transform of a real spatial profile, int dx f(x) e^{+ikx}.
// Throws quadrature_failure on non-convergence.
std::complex<double> fourier_window_1d(const std::function<double(double)>& profile,
                                       double k, double tol);

// int_0^horizon e^{-i s delta} g(s) ds with the tail truncation error
// estimated from the decay envelope of g and folded into est_error.
// Non-decaying integrands (|g(horizon)| > tail_tol) come back with
// converged = false. tail_tol < 0 selects tol * 1e-2.
result oscillatory_halfline(const std::function<std::complex<double>(double)>& g,
                            double delta, double tol, double horizon,
                            double tail_tol = -1.0);

} // namespace udw::quad
