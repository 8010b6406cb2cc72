#pragma once

#include "udw/errors.hpp"
#include "udw/profiles.hpp"

#include <complex>
#include <optional>
#include <variant>

namespace udw {

struct inertial {};
struct uniformly_accelerated {
    double a; // proper acceleration, right Rindler wedge
};
using trajectory = std::variant<inertial, uniformly_accelerated>;

enum class wedge { right, left };

// Gaussian envelope over the positive mode-label axis, normalised so that
// int_0^inf |phi|^2 = 1.
struct gaussian_packet {
    double center;
    double width;
    double amplitude;
    double operator()(double k) const;
};
gaussian_packet make_gaussian_packet(double center, double width);

struct vacuum_state {};
struct minkowski_particle {
    gaussian_packet phi;
};
struct unruh_particle {
    gaussian_packet phi;
    wedge p;
};
using field_state = std::variant<vacuum_state, minkowski_particle, unruh_particle>;

enum class spacetime_kind { dim1p1_massless, dim3p1_massive };
struct spacetime {
    spacetime_kind kind = spacetime_kind::dim1p1_massless;
    double mass = 0.0; // dim3p1_massive only
};

struct model_spec {
    spacetime st;
    spatial_profile profile = point_like{};
    trajectory traj = inertial{};
    field_state state = vacuum_state{};
    double delta = 0.0;
    // Prefactor on the Rindler mode normalisation, so alternative
    // conventions can be tested from config.
    double rindler_norm_scale = 1.0;
};

// Checks every cross-field constraint (profile vs trajectory, spacetime vs
// mass/state, packet normalisation) and returns the validated spec; throws
// model_error listing all violations.
model_spec validate_model(model_spec m);

enum class rate_path { closed_form, numeric };

struct rate_result {
    double rate; // probability per unit proper time
    rate_path path;
    double est_error;
    std::optional<double> tau; // present only for state-dependent rates
};

// Rindler mode normalisation N_{omega/a}: 1/sqrt(4 pi omega) in 1+1,
// sqrt(sinh(pi omega/a)) / (2 pi^2 sqrt(a)) in 3+1.
double rindler_norm(double omega, double a, const spacetime& st,
                    double scale = 1.0);

struct squeeze_weights {
    double ch; // cosh r >= 1
    double sh; // sinh r >= 0
};
// tanh r = e^{-pi omega / a}.
squeeze_weights unruh_weights(double omega, double a);

// Closed-form vacuum response of an inertial detector:
// theta(-delta - m) sqrt(delta^2 - m^2) |window(-delta)|^2.
rate_result vacuum_rate_inertial(const model_spec& spec, double tol = 1e-10);

// Thermal vacuum response of a uniformly accelerated detector:
// planck_factor(delta, a) * Xi(delta), with Xi carrying the window, mode
// normalisation, and sign gates (k_perp-integrated in 3+1).
rate_result vacuum_rate_accelerated(const model_spec& spec, double tol = 1e-10);

// Dispatch on the trajectory.
rate_result vacuum_rate(const model_spec& spec, double tol = 1e-10);

// Vacuum two-point correlation along the trajectory, evaluated by spectral
// quadrature over the window's support. Stationary: depends on tau - tau'.
std::complex<double> wightman_vacuum(const model_spec& spec, double tau,
                                     double tau_prime, double tol = 1e-10);

// Numeric transition rate 2 Re int_0^inf ds e^{-i delta s} W(tau, tau - s),
// cross-validating the closed forms. Throws quadrature_failure on
// non-convergence.
rate_result vacuum_rate_numeric(const model_spec& spec, double tol);

// Packet-window overlap I(tau): the packet's positive-frequency amplitude
// seen through the detector's window along its trajectory.
std::complex<double> packet_overlap_I(const model_spec& spec, double tau,
                                      double tol = 1e-9);

struct correction_result {
    double value;
    double est_error;
    double im_residue; // consistency residue of the conjugate-pair assembly
};

// State-dependent addition to the vacuum rate, assembled from the half-line
// transforms of I(tau - s) and its conjugate.
correction_result particle_correction(const model_spec& spec, double tau,
                                      double delta, double tol);

// Vacuum rate at delta plus the particle correction at (tau, delta).
rate_result particle_rate(const model_spec& spec, double tau, double delta,
                          double tol);

} // namespace udw
