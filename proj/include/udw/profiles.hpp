#pragma once

#include "udw/errors.hpp"

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <variant>

namespace udw {

// Delta-like coupling; handled symbolically (window identically 1).
struct point_like {};

// f(x) = n_sigma * e^{-x^2/(2 sigma^2)} * 2 cos(lambda x).
// sigma_perp is the transverse Gaussian width used by 3+1 transforms.
struct double_gaussian {
    double sigma;
    double lambda;
    double n_sigma;
    double sigma_perp;
};

// f(x) = phi_n(x) * d/dx phi_m(x), n even, m odd, m > n.
struct hermite_coupling {
    int n;
    int m;
};

// f(xi) = norm * e^{-2 a xi} * e^{-xi^2/(2 sigma^2)} * 2 cos(lambda_t xi);
// the e^{-2 a xi} factor compensates the transform's metric factor.
struct rindler_double_gaussian {
    double sigma;
    double lambda_t;
    double a;
    double norm;
    double sigma_perp;
};

using spatial_profile =
    std::variant<point_like, double_gaussian, hermite_coupling,
                 rindler_double_gaussian>;

// Peak-one window convention: n_sigma * sqrt(2 pi sigma^2) = 1.
double unit_peak_norm(double sigma);

// Validating factories. sigma_perp <= 0 selects sigma; n_sigma / norm <= 0
// selects the unit-peak value.
double_gaussian make_double_gaussian(double sigma, double lambda,
                                     double n_sigma = -1.0,
                                     double sigma_perp = -1.0);
hermite_coupling make_hermite_coupling(int n, int m);
rindler_double_gaussian make_rindler_double_gaussian(double sigma,
                                                     double lambda_t, double a,
                                                     double norm = -1.0,
                                                     double sigma_perp = -1.0);

// Pointwise coupling strength; point_like profiles are distributional and
// rejected here.
double evaluate_profile(const spatial_profile& p, double x);

enum class window_path { closed_form, quadrature };
enum class transform_kind { minkowski, rindler_1p1, rindler_3p1 };

bool closed_form_available(const spatial_profile& p, transform_kind kind);

// Frequency window over mode labels, bundling the evaluation choices made
// by a model: which transform applies and which path evaluates it.
struct frequency_window {
    spatial_profile profile;
    transform_kind kind = transform_kind::minkowski;
    window_path path = window_path::closed_form;
    double a = 0.0;    // rindler transforms
    double mass = 0.0; // rindler_3p1 transverse mass contribution
};

// int dx f(x) e^{+ikx}. Closed form for point_like and double_gaussian;
// quadrature otherwise or when forced.
std::complex<double> minkowski_window(const spatial_profile& p, double k,
                                      double tol,
                                      std::optional<window_path> path = {});

// int dxi e^{2 a xi} f(xi) e^{+i omega xi}. Closed form for point_like and
// rindler_double_gaussian (the metric factor cancels, leaving an
// a-independent double Gaussian); quadrature for any real profile.
std::complex<double> rindler_window_1p1(const spatial_profile& p, double omega,
                                        double a, double tol,
                                        std::optional<window_path> path = {});

// Longitudinal Bessel-kernel transform
// int dxi e^{2 a xi} f(xi) K_{i omega/a}((M/a) e^{a xi}).
std::complex<double> rindler_longitudinal_3p1(
    const std::function<double(double)>& f, double omega, double a, double M,
    double tol);

// Full 3+1 window: longitudinal Bessel transform times the transverse
// Gaussian Fourier factor, with M = sqrt(|k_perp|^2 + mass^2). M = 0 is a
// kernel degeneracy and rejected.
std::complex<double> rindler_window_3p1(const spatial_profile& p, double omega,
                                        std::array<double, 2> k_perp, double a,
                                        double mass, double tol);

struct hermite_fit {
    double lambda;
    double sigma;
    double residual; // relative L2 distance after optimal amplitude rescale
    bool converged;
};

// Least-squares fit of an amplitude-rescaled double Gaussian to the
// hermite_coupling(n, m) profile on a uniform 4001-point grid over [-8, 8].
hermite_fit hermite_fit_report(int n, int m);

// Optimal amplitude (in the n_sigma sense) for overlaying
// double_gaussian(sigma, lambda) on a target profile over [-8, 8].
double overlay_amplitude(const spatial_profile& target, double lambda,
                         double sigma);

} // namespace udw
