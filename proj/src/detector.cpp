#include "udw/detector.hpp"

#include "udw/quadrature.hpp"
#include "udw/specfun.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace udw {

namespace {

using cplx = std::complex<double>;
constexpr double kpi = std::numbers::pi;

// Spectral lower cutoff for numeric paths over Rindler frequency; the mode
// normalisation diverges logarithmically in 1+1 as omega -> 0.
constexpr double omega_floor = 1e-3;

std::string join_reasons(const std::vector<std::string>& reasons) {
    std::ostringstream os;
    for (std::size_t i = 0; i < reasons.size(); ++i) {
        if (i) os << "; ";
        os << reasons[i];
    }
    return os.str();
}

const uniformly_accelerated* accel_of(const trajectory& t) {
    return std::get_if<uniformly_accelerated>(&t);
}

bool is_massless_1p1(const spacetime& st) {
    return st.kind == spacetime_kind::dim1p1_massless;
}

// Half-width of the window in the frequency variable, used to size
// oscillatory horizons and packet-overlap supports.
double window_sigma(const spatial_profile& p) {
    if (std::holds_alternative<double_gaussian>(p))
        return std::get<double_gaussian>(p).sigma;
    if (std::holds_alternative<rindler_double_gaussian>(p))
        return std::get<rindler_double_gaussian>(p).sigma;
    if (std::holds_alternative<hermite_coupling>(p)) {
        const auto& h = std::get<hermite_coupling>(p);
        return std::sqrt(2.0 * h.m + 1.0);
    }
    return 0.0; // point-like: no spatial extent
}

// 2 pi int_0^inf kappa |window_3p1(omega, kappa)|^2 dkappa, the transverse
// reduction of the 3+1 response. Shared by both signs of the gap so the
// detailed-balance ratio is exact.
quad::result perp_integral(const model_spec& spec, double omega, double a,
                           double tol) {
    const double mass = spec.st.mass;
    const double wtol = std::max(tol * 1e-2, 1e-13);
    quad::integrand_spec q;
    q.domain = quad::domain_kind::half_line;
    q.f = [&spec, omega, a, mass, wtol](double kappa) -> cplx {
        const cplx w = rindler_window_3p1(spec.profile, omega,
                                          {kappa, 0.0}, a, mass, wtol);
        return 2.0 * kpi * kappa * std::norm(w);
    };
    return quad::integrate_adaptive(q, tol);
}

} // namespace

double gaussian_packet::operator()(double k) const {
    const double u = (k - center) / width;
    return amplitude * std::exp(-0.5 * u * u);
}

gaussian_packet make_gaussian_packet(double center, double width) {
    if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(center) ||
        center < 0.0)
        throw model_error("gaussian packet needs center >= 0 and width > 0");
    // int_0^inf exp(-(k-c)^2/w^2) dk = w sqrt(pi) (1 + erf(c/w)) / 2.
    const double norm2 =
        width * std::sqrt(kpi) * (1.0 + std::erf(center / width)) / 2.0;
    return gaussian_packet{center, width, 1.0 / std::sqrt(norm2)};
}

model_spec validate_model(model_spec m) {
    std::vector<std::string> reasons;

    if (!std::isfinite(m.delta))
        reasons.push_back("delta must be finite");
    if (!(m.rindler_norm_scale > 0.0) || !std::isfinite(m.rindler_norm_scale))
        reasons.push_back("rindler_norm_scale must be positive and finite");

    if (m.st.kind == spacetime_kind::dim1p1_massless) {
        if (m.st.mass != 0.0)
            reasons.push_back("massless 1+1 sector forbids a field mass");
    } else {
        if (!(m.st.mass >= 0.0) || !std::isfinite(m.st.mass))
            reasons.push_back("field mass must be >= 0 and finite");
    }

    const auto* acc = accel_of(m.traj);
    if (acc && (!(acc->a > 0.0) || !std::isfinite(acc->a)))
        reasons.push_back("proper acceleration must be positive and finite");

    if (std::holds_alternative<rindler_double_gaussian>(m.profile)) {
        if (!acc) {
            reasons.push_back(
                "rindler_double_gaussian profile requires the accelerated "
                "trajectory");
        } else {
            const auto& r = std::get<rindler_double_gaussian>(m.profile);
            const double scale = std::max(std::abs(r.a), std::abs(acc->a));
            if (std::abs(r.a - acc->a) > 1e-12 * scale)
                reasons.push_back(
                    "profile acceleration must match the trajectory");
        }
    }
    if (acc && (std::holds_alternative<double_gaussian>(m.profile) ||
                std::holds_alternative<hermite_coupling>(m.profile)))
        reasons.push_back(
            "accelerated trajectory supports point_like or "
            "rindler_double_gaussian profiles only");

    const bool has_packet = !std::holds_alternative<vacuum_state>(m.state);
    if (has_packet) {
        if (!is_massless_1p1(m.st))
            reasons.push_back(
                "particle states are supported in the massless 1+1 sector "
                "only");
        if (std::holds_alternative<minkowski_particle>(m.state) && acc)
            reasons.push_back(
                "a minkowski particle state pairs with the inertial "
                "trajectory");
        if (std::holds_alternative<unruh_particle>(m.state) && !acc)
            reasons.push_back(
                "an unruh particle state pairs with the accelerated "
                "trajectory");
        const gaussian_packet* phi = nullptr;
        if (const auto* mp = std::get_if<minkowski_particle>(&m.state))
            phi = &mp->phi;
        if (const auto* up = std::get_if<unruh_particle>(&m.state))
            phi = &up->phi;
        if (!(phi->width > 0.0) || !std::isfinite(phi->width) ||
            !std::isfinite(phi->center) || phi->center < 0.0) {
            reasons.push_back(
                "gaussian packet needs center >= 0 and width > 0");
        } else {
            quad::integrand_spec q;
            q.domain = quad::domain_kind::half_line;
            q.f = [phi](double k) -> cplx {
                const double v = (*phi)(k);
                return v * v;
            };
            const auto norm = quad::integrate_adaptive(q, 1e-10);
            if (std::abs(norm.value.real() - 1.0) > 1e-8)
                reasons.push_back("gaussian packet is not unit-normalised");
        }
    }

    if (!reasons.empty()) throw model_error(join_reasons(reasons));
    return m;
}

double rindler_norm(double omega, double a, const spacetime& st,
                    double scale) {
    if (!(a > 0.0)) throw model_error("rindler norm needs a > 0");
    if (omega < a * specfun::eps_ir)
        throw infrared_error("frequency below the infrared guard band");
    if (st.kind == spacetime_kind::dim1p1_massless)
        return scale / std::sqrt(4.0 * kpi * omega);
    const double x = kpi * omega / a;
    if (x > 700.0)
        throw error("rindler mode normalisation overflows at this frequency");
    return scale * std::sqrt(std::sinh(x)) / (2.0 * kpi * kpi * std::sqrt(a));
}

squeeze_weights unruh_weights(double omega, double a) {
    if (!(a > 0.0) || !(omega > 0.0))
        throw model_error("squeeze weights need omega > 0 and a > 0");
    const double t = std::exp(-kpi * omega / a);
    const double ch = 1.0 / std::sqrt(-std::expm1(-2.0 * kpi * omega / a));
    return squeeze_weights{ch, t * ch};
}

rate_result vacuum_rate_inertial(const model_spec& spec, double tol) {
    if (accel_of(spec.traj))
        throw model_error("inertial rate called with accelerated trajectory");
    const double m =
        spec.st.kind == spacetime_kind::dim3p1_massive ? spec.st.mass : 0.0;
    const double delta = spec.delta;
    const double gate = specfun::heaviside(-delta - m);
    if (gate == 0.0)
        return rate_result{0.0, rate_path::closed_form, 0.0, std::nullopt};
    const double q = std::sqrt(delta * delta - m * m);
    const cplx w = minkowski_window(spec.profile, -delta, tol);
    const bool closed =
        closed_form_available(spec.profile, transform_kind::minkowski);
    const double rate = q * std::norm(w);
    const double est = closed ? 0.0 : 2.0 * q * std::abs(w) * tol;
    return rate_result{rate,
                       closed ? rate_path::closed_form : rate_path::numeric,
                       est, std::nullopt};
}

rate_result vacuum_rate_accelerated(const model_spec& spec, double tol) {
    const auto* acc = accel_of(spec.traj);
    if (!acc)
        throw model_error("accelerated rate called with inertial trajectory");
    const double a = acc->a;
    const double delta = spec.delta;
    const double n = specfun::planck_factor(delta, a); // throws inside guard
    const double absd = std::abs(delta);
    const double sgn = delta > 0.0 ? 1.0 : -1.0;
    const double nn = rindler_norm(absd, a, spec.st, spec.rindler_norm_scale);
    const double n2 = nn * nn;

    if (spec.st.kind == spacetime_kind::dim1p1_massless) {
        const cplx w = rindler_window_1p1(spec.profile, absd, a, tol);
        const bool closed =
            closed_form_available(spec.profile, transform_kind::rindler_1p1);
        const double xi = sgn * n2 * std::norm(w);
        const double est =
            closed ? 0.0 : std::abs(n) * n2 * 2.0 * std::abs(w) * tol;
        return rate_result{n * xi,
                           closed ? rate_path::closed_form
                                  : rate_path::numeric,
                           est, std::nullopt};
    }

    const auto j = perp_integral(spec, absd, a, tol);
    const double xi = sgn * n2 * j.value.real();
    const double rate = n * xi;
    const double est = std::abs(n) * n2 * j.est_error;
    if (!j.converged)
        throw quadrature_failure("transverse reduction did not converge",
                                 rate, est);
    return rate_result{rate, rate_path::numeric, est, std::nullopt};
}

rate_result vacuum_rate(const model_spec& spec, double tol) {
    if (accel_of(spec.traj)) return vacuum_rate_accelerated(spec, tol);
    return vacuum_rate_inertial(spec, tol);
}

std::complex<double> wightman_vacuum(const model_spec& spec, double tau,
                                     double tau_prime, double tol) {
    if (std::holds_alternative<point_like>(spec.profile))
        throw distributional_profile(
            "point-like profile has no pointwise correlation function");
    const double s = tau - tau_prime;
    const std::optional<double> osc =
        std::abs(s) > 1e-12 ? std::optional<double>(std::abs(s))
                            : std::nullopt;
    const double wtol = std::max(tol * 1e-2, 1e-13);

    quad::integrand_spec q;
    q.domain = quad::domain_kind::half_line;
    q.oscillation = osc;

    if (const auto* acc = accel_of(spec.traj)) {
        const double a = acc->a;
        const double lo = std::max(a * specfun::eps_ir, omega_floor);
        const bool flat = is_massless_1p1(spec.st);
        q.f = [&spec, a, lo, s, wtol, flat, tol](double u) -> cplx {
            const double omega = lo + u;
            const double nn =
                rindler_norm(omega, a, spec.st, spec.rindler_norm_scale);
            double weight = nn * nn;
            if (flat) {
                const cplx w = rindler_window_1p1(spec.profile, omega, a, wtol);
                weight *= std::norm(w);
            } else {
                weight *= perp_integral(spec, omega, a, tol * 1e-1)
                              .value.real();
            }
            const auto uw = unruh_weights(omega, a);
            const cplx phase = std::polar(1.0, -omega * s);
            return weight / (2.0 * kpi) *
                   (uw.ch * uw.ch * phase +
                    uw.sh * uw.sh * std::conj(phase));
        };
        const auto r = quad::integrate_adaptive(q, tol);
        if (!r.converged)
            throw quadrature_failure("correlation quadrature did not converge",
                                     r.value.real(), r.est_error);
        return r.value;
    }

    const double m =
        spec.st.kind == spacetime_kind::dim3p1_massive ? spec.st.mass : 0.0;
    q.f = [&spec, m, s, wtol](double u) -> cplx {
        const double omega = m + u;
        const double disp =
            m == 0.0 ? omega : std::sqrt(u * (omega + m)); // sqrt(w^2 - m^2)
        const cplx w = minkowski_window(spec.profile, omega, wtol);
        return disp * std::norm(w) / (2.0 * kpi) *
               std::polar(1.0, -omega * s);
    };
    const auto r = quad::integrate_adaptive(q, tol);
    if (!r.converged)
        throw quadrature_failure("correlation quadrature did not converge",
                                 r.value.real(), r.est_error);
    return r.value;
}

rate_result vacuum_rate_numeric(const model_spec& spec, double tol) {
    if (std::holds_alternative<point_like>(spec.profile))
        throw distributional_profile(
            "numeric rate needs a pointwise correlation function");
    const double sig = std::max(window_sigma(spec.profile), 0.5);
    const double horizon = 14.0 * sig + 6.0;
    const double wtol = std::max(tol / (4.0 * horizon), 1e-13);
    auto g = [&spec, wtol](double s) -> cplx {
        return wightman_vacuum(spec, s, 0.0, wtol);
    };
    const auto osc = quad::oscillatory_halfline(g, spec.delta, tol, horizon);
    const double rate = 2.0 * osc.value.real();
    const double est = 2.0 * (osc.est_error + horizon * wtol);
    if (!osc.converged)
        throw quadrature_failure("rate quadrature did not converge", rate,
                                 est);
    return rate_result{rate, rate_path::numeric, est, std::nullopt};
}

std::complex<double> packet_overlap_I(const model_spec& spec, double tau,
                                      double tol) {
    const std::optional<double> osc =
        std::abs(tau) > 1e-12 ? std::optional<double>(std::abs(tau))
                              : std::nullopt;
    const double wtol = std::max(tol * 1e-2, 1e-13);

    quad::integrand_spec q;
    q.domain = quad::domain_kind::half_line;
    q.oscillation = osc;

    if (const auto* mp = std::get_if<minkowski_particle>(&spec.state)) {
        const gaussian_packet phi = mp->phi;
        q.f = [&spec, phi, tau, wtol](double k) -> cplx {
            const double amp = phi(k);
            if (amp == 0.0) return 0.0;
            const cplx w = minkowski_window(spec.profile, k, wtol);
            return amp * w / std::sqrt(4.0 * kpi * k) *
                   std::polar(1.0, -k * tau);
        };
        const auto r = quad::integrate_adaptive(q, tol);
        if (!r.converged)
            throw quadrature_failure("packet overlap did not converge",
                                     std::abs(r.value), r.est_error);
        return r.value;
    }

    const auto* up = std::get_if<unruh_particle>(&spec.state);
    if (!up) throw model_error("packet overlap needs a particle state");
    const auto* acc = accel_of(spec.traj);
    if (!acc) throw model_error("unruh packet overlap needs acceleration");
    const double a = acc->a;
    const double lo = std::max(a * specfun::eps_ir, omega_floor);
    const gaussian_packet phi = up->phi;
    const bool right = up->p == wedge::right;
    const double scale = spec.rindler_norm_scale;
    q.f = [&spec, phi, tau, a, lo, wtol, right, scale](double u) -> cplx {
        const double omega = lo + u;
        const double amp = phi(omega);
        if (amp == 0.0) return 0.0;
        const cplx w = rindler_window_1p1(spec.profile, omega, a, wtol);
        const double nn = rindler_norm(omega, a, spec.st, scale);
        const auto uw = unruh_weights(omega, a);
        const cplx phase = right ? std::polar(1.0, -omega * tau)
                                 : std::polar(1.0, omega * tau);
        const double weight = right ? uw.ch : uw.sh;
        return amp * w * nn * weight * phase;
    };
    const auto r = quad::integrate_adaptive(q, tol);
    if (!r.converged)
        throw quadrature_failure("packet overlap did not converge",
                                 std::abs(r.value), r.est_error);
    return r.value;
}

correction_result particle_correction(const model_spec& spec, double tau,
                                      double delta, double tol) {
    const gaussian_packet* phi = nullptr;
    if (const auto* mp = std::get_if<minkowski_particle>(&spec.state))
        phi = &mp->phi;
    if (const auto* up = std::get_if<unruh_particle>(&spec.state))
        phi = &up->phi;
    if (!phi)
        throw model_error("particle correction needs a particle state");

    // Time support of the overlap: the packet and window widths add in
    // quadrature in the frequency variable.
    const double sig_win = window_sigma(spec.profile);
    const double wc2 = 1.0 / (1.0 / (phi->width * phi->width) +
                              sig_win * sig_win);
    const double half_support = 12.0 / std::sqrt(wc2) + 8.0;

    const double itol = std::max(tol * 1e-1, 1e-12);
    const cplx i_tau = packet_overlap_I(spec, tau, itol);

    double est = 0.0;
    bool ok = true;
    auto transform = [&](double gap, bool conj_inner) -> cplx {
        const double s0 = std::max(0.0, tau - half_support);
        const double s1 = tau + half_support;
        if (s1 <= s0) return 0.0;
        const double span = s1 - s0;
        const double gtol = std::max(tol / (8.0 * span), 1e-12);
        auto g = [&spec, tau, s0, gtol, conj_inner](double u) -> cplx {
            const cplx v = packet_overlap_I(spec, tau - s0 - u, gtol);
            return conj_inner ? std::conj(v) : v;
        };
        const auto r = quad::oscillatory_halfline(g, gap, tol / 4.0, span);
        est += r.est_error + span * gtol;
        ok = ok && r.converged;
        return std::polar(1.0, -s0 * gap) * r.value;
    };

    const cplx i1 = transform(delta, false);
    const cplx i2 = transform(delta, true);
    const cplx i1m = transform(-delta, false);
    const cplx i2m = transform(-delta, true);

    // conj of the first pair, reassembled from the -delta transforms so the
    // imaginary residue is a real consistency check.
    const cplx z = std::conj(i_tau) * i1 + i_tau * i2;
    const cplx zbar = i_tau * i2m + std::conj(i_tau) * i1m;
    const cplx corr = z + zbar;

    const double mag = std::abs(i_tau) + itol;
    correction_result out;
    out.value = corr.real();
    out.im_residue = std::abs(corr.imag());
    out.est_error = mag * est + 2.0 * itol * (std::abs(i1) + std::abs(i2) +
                                              std::abs(i1m) + std::abs(i2m));
    if (!ok)
        throw quadrature_failure("particle correction did not converge",
                                 out.value, out.est_error);
    return out;
}

rate_result particle_rate(const model_spec& spec, double tau, double delta,
                          double tol) {
    model_spec at_gap = spec;
    at_gap.delta = delta;
    at_gap.state = vacuum_state{};
    const rate_result vac = vacuum_rate(at_gap, std::min(tol, 1e-10));
    const correction_result corr =
        particle_correction(spec, tau, delta, tol);
    return rate_result{vac.rate + corr.value, rate_path::numeric,
                       vac.est_error + corr.est_error, tau};
}

} // namespace udw
