#include "udw/profiles.hpp"

#include "udw/quadrature.hpp"
#include "udw/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace udw {

namespace {

using cplx = std::complex<double>;

constexpr double two_pi = 2.0 * M_PI;

} // namespace

double unit_peak_norm(double sigma) {
    return 1.0 / std::sqrt(two_pi * sigma * sigma);
}

double_gaussian make_double_gaussian(double sigma, double lambda,
                                     double n_sigma, double sigma_perp) {
    if (!(sigma > 0.0)) throw model_error("double_gaussian requires sigma > 0");
    if (!(lambda >= 0.0))
        throw model_error("double_gaussian requires lambda >= 0");
    if (n_sigma <= 0.0) n_sigma = unit_peak_norm(sigma);
    if (sigma_perp <= 0.0) sigma_perp = sigma;
    return {sigma, lambda, n_sigma, sigma_perp};
}

hermite_coupling make_hermite_coupling(int n, int m) {
    if (n < 0 || n % 2 != 0)
        throw model_error("hermite_coupling requires even n >= 0");
    if (m % 2 == 0)
        throw model_error("hermite_coupling requires odd m (equal parity "
                          "gives an odd coupling)");
    if (m <= n) throw model_error("hermite_coupling requires m > n");
    if (m + 1 > specfun::max_hermite_order)
        throw unsupported_order("hermite_coupling order m exceeds supported "
                                "range");
    return {n, m};
}

rindler_double_gaussian make_rindler_double_gaussian(double sigma,
                                                     double lambda_t, double a,
                                                     double norm,
                                                     double sigma_perp) {
    if (!(sigma > 0.0))
        throw model_error("rindler_double_gaussian requires sigma > 0");
    if (!(lambda_t >= 0.0))
        throw model_error("rindler_double_gaussian requires lambda_t >= 0");
    if (!(a > 0.0)) throw model_error("rindler_double_gaussian requires a > 0");
    if (norm <= 0.0) norm = unit_peak_norm(sigma);
    if (sigma_perp <= 0.0) sigma_perp = sigma;
    return {sigma, lambda_t, a, norm, sigma_perp};
}

namespace {

double coupling_derivative_pair(const hermite_coupling& h, double x) {
    // d/dx phi_m = sqrt(m/2) phi_{m-1} - sqrt((m+1)/2) phi_{m+1}.
    const double dm = std::sqrt(0.5 * h.m) *
                          specfun::oscillator_wavefunction(h.m - 1, x) -
                      std::sqrt(0.5 * (h.m + 1.0)) *
                          specfun::oscillator_wavefunction(h.m + 1, x);
    return specfun::oscillator_wavefunction(h.n, x) * dm;
}

struct profile_eval {
    double x;
    double operator()(const point_like&) const {
        throw distributional_profile("point_like profile has no pointwise "
                                     "values");
    }
    double operator()(const double_gaussian& g) const {
        return g.n_sigma * std::exp(-0.5 * x * x / (g.sigma * g.sigma)) * 2.0 *
               std::cos(g.lambda * x);
    }
    double operator()(const hermite_coupling& h) const {
        return coupling_derivative_pair(h, x);
    }
    double operator()(const rindler_double_gaussian& r) const {
        const double expo = -2.0 * r.a * x - 0.5 * x * x / (r.sigma * r.sigma);
        return r.norm * std::exp(expo) * 2.0 * std::cos(r.lambda_t * x);
    }
};

// e^{2 a xi} f(xi) with the exponents combined before evaluation, so the
// metric factor never overflows against an underflowing profile.
double metric_weighted(const spatial_profile& p, double a, double xi) {
    if (std::holds_alternative<rindler_double_gaussian>(p)) {
        const auto& r = std::get<rindler_double_gaussian>(p);
        const double expo = 2.0 * (a - r.a) * xi -
                            0.5 * xi * xi / (r.sigma * r.sigma);
        if (expo < -745.0) return 0.0;
        return r.norm * std::exp(expo) * 2.0 * std::cos(r.lambda_t * xi);
    }
    if (std::holds_alternative<double_gaussian>(p)) {
        const auto& g = std::get<double_gaussian>(p);
        const double expo =
            2.0 * a * xi - 0.5 * xi * xi / (g.sigma * g.sigma);
        if (expo < -745.0) return 0.0;
        return g.n_sigma * std::exp(expo) * 2.0 * std::cos(g.lambda * xi);
    }
    if (std::abs(xi) > 40.0) return 0.0; // oscillator support exhausted
    return std::exp(2.0 * a * xi) * evaluate_profile(p, xi);
}

double gaussian_pair(double sigma, double center, double k) {
    const double s2 = 0.5 * sigma * sigma;
    const double dm = k - center;
    const double dp = k + center;
    return std::exp(-s2 * dm * dm) + std::exp(-s2 * dp * dp);
}

} // namespace

double evaluate_profile(const spatial_profile& p, double x) {
    return std::visit(profile_eval{x}, p);
}

bool closed_form_available(const spatial_profile& p, transform_kind kind) {
    switch (kind) {
        case transform_kind::minkowski:
            return std::holds_alternative<point_like>(p) ||
                   std::holds_alternative<double_gaussian>(p);
        case transform_kind::rindler_1p1:
            return std::holds_alternative<point_like>(p) ||
                   std::holds_alternative<rindler_double_gaussian>(p);
        case transform_kind::rindler_3p1: return false;
    }
    return false;
}

std::complex<double> minkowski_window(const spatial_profile& p, double k,
                                      double tol,
                                      std::optional<window_path> path) {
    if (std::holds_alternative<rindler_double_gaussian>(p))
        throw model_error("rindler_double_gaussian has no minkowski window; "
                          "use rindler transforms");
    const bool closed =
        path ? (*path == window_path::closed_form)
             : closed_form_available(p, transform_kind::minkowski);
    if (std::holds_alternative<point_like>(p)) return 1.0;
    if (closed) {
        if (!std::holds_alternative<double_gaussian>(p))
            throw model_error("closed-form minkowski window exists only for "
                              "point_like and double_gaussian");
        const auto& g = std::get<double_gaussian>(p);
        return g.n_sigma * std::sqrt(two_pi * g.sigma * g.sigma) *
               gaussian_pair(g.sigma, g.lambda, k);
    }
    return quad::fourier_window_1d([&p](double x) { return evaluate_profile(p, x); },
                                   k, tol);
}

std::complex<double> rindler_window_1p1(const spatial_profile& p, double omega,
                                        double a, double tol,
                                        std::optional<window_path> path) {
    if (!(omega > 0.0))
        throw error("rindler_window_1p1 requires omega > 0");
    if (!(a > 0.0)) throw error("rindler_window_1p1 requires a > 0");
    if (std::holds_alternative<point_like>(p)) return 1.0;
    const bool closed =
        path ? (*path == window_path::closed_form)
             : closed_form_available(p, transform_kind::rindler_1p1);
    if (closed) {
        if (!std::holds_alternative<rindler_double_gaussian>(p))
            throw model_error("closed-form rindler window exists only for "
                              "point_like and rindler_double_gaussian");
        const auto& r = std::get<rindler_double_gaussian>(p);
        return r.norm * std::sqrt(two_pi * r.sigma * r.sigma) *
               gaussian_pair(r.sigma, r.lambda_t, omega);
    }
    quad::integrand_spec spec;
    spec.f = [&p, a, omega](double xi) {
        return metric_weighted(p, a, xi) * std::polar(1.0, omega * xi);
    };
    spec.domain = quad::domain_kind::full_line;
    spec.oscillation = omega;
    auto r = quad::integrate_adaptive(spec, tol);
    if (!r.converged)
        throw quadrature_failure("rindler_window_1p1 did not converge",
                                 std::abs(r.value), r.est_error);
    return r.value;
}

std::complex<double> rindler_longitudinal_3p1(
    const std::function<double(double)>& f, double omega, double a, double M,
    double tol) {
    if (!(M > 0.0))
        throw kernel_degeneracy("rindler_longitudinal_3p1 requires a positive "
                                "transverse mass M");
    if (!(a > 0.0)) throw error("rindler_longitudinal_3p1 requires a > 0");
    const double nu = omega / a;
    const double bessel_tol = std::max(tol * 1e-2, 1e-14);
    quad::integrand_spec spec;
    spec.f = [&f, a, M, nu, bessel_tol](double xi) -> cplx {
        const double fx = f(xi);
        if (fx == 0.0) return 0.0;
        // Combine metric and profile magnitudes in log space.
        const double lw = 2.0 * a * xi + std::log(std::abs(fx));
        if (lw < -745.0) return 0.0;
        const double w = std::copysign(std::exp(lw), fx);
        const double arg = (M / a) * std::exp(a * xi);
        if (arg > 705.0 || arg == 0.0) return 0.0; // kernel out of range
        return w * specfun::bessel_k_imag_auto(nu, arg, bessel_tol).value;
    };
    spec.domain = quad::domain_kind::full_line;
    auto r = quad::integrate_adaptive(spec, tol);
    if (!r.converged)
        throw quadrature_failure("rindler_longitudinal_3p1 did not converge",
                                 std::abs(r.value), r.est_error);
    return r.value;
}

std::complex<double> rindler_window_3p1(const spatial_profile& p, double omega,
                                        std::array<double, 2> k_perp, double a,
                                        double mass, double tol) {
    const double kp = std::hypot(k_perp[0], k_perp[1]);
    const double M = std::hypot(kp, mass);
    if (!(M > 0.0))
        throw kernel_degeneracy("rindler_window_3p1: M = 0 degenerates the "
                                "Bessel kernel (massless, k_perp = 0)");
    if (std::holds_alternative<point_like>(p)) {
        return specfun::bessel_k_imag_auto(omega / a, M / a,
                                           std::max(tol, 1e-13))
            .value;
    }
    if (!std::holds_alternative<rindler_double_gaussian>(p))
        throw model_error("rindler_window_3p1 supports point_like and "
                          "rindler_double_gaussian profiles");
    const auto& r = std::get<rindler_double_gaussian>(p);
    const double transverse =
        std::exp(-0.5 * r.sigma_perp * r.sigma_perp * kp * kp);
    auto f_long = [&r](double xi) {
        const double expo =
            -2.0 * r.a * xi - 0.5 * xi * xi / (r.sigma * r.sigma);
        if (expo > 700.0) return 0.0; // suppressed later by the metric factor
        return r.norm * std::exp(expo) * 2.0 * std::cos(r.lambda_t * xi);
    };
    return transverse * rindler_longitudinal_3p1(f_long, omega, a, M, tol);
}

namespace {

struct fit_grid {
    std::vector<double> x;
    std::vector<double> target;
    double tt = 0.0;

    explicit fit_grid(const hermite_coupling& h) {
        const int npts = 4001;
        x.resize(npts);
        target.resize(npts);
        for (int i = 0; i < npts; ++i) {
            x[i] = -8.0 + 16.0 * i / (npts - 1.0);
            target[i] = coupling_derivative_pair(h, x[i]);
            tt += target[i] * target[i];
        }
    }

    // 1 - cos^2 angle between the target and the double-Gaussian shape.
    double objective(double lambda, double sigma) const {
        const double inv2s2 = 0.5 / (sigma * sigma);
        double dot = 0.0, gg = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double g =
                std::exp(-x[i] * x[i] * inv2s2) * std::cos(lambda * x[i]);
            dot += target[i] * g;
            gg += g * g;
        }
        if (gg == 0.0) return 1.0;
        return 1.0 - dot * dot / (gg * tt);
    }
};

struct simplex_point {
    double lambda;
    double log_sigma;
    double f;
};

} // namespace

hermite_fit hermite_fit_report(int n, int m) {
    const hermite_coupling h = make_hermite_coupling(n, m);
    const fit_grid grid(h);

    double best_l = 1.0, best_s = 1.0, best_f = 2.0;
    for (int il = 0; il <= 120; ++il) {
        const double lambda = 0.05 * il;
        for (int is = 0; is <= 76; ++is) {
            const double sigma = 0.2 + 0.05 * is;
            const double f = grid.objective(lambda, sigma);
            if (f < best_f) {
                best_f = f;
                best_l = lambda;
                best_s = sigma;
            }
        }
    }

    // Nelder-Mead refinement in (lambda, log sigma).
    auto eval = [&grid](double l, double ls) {
        return grid.objective(l, std::exp(ls));
    };
    simplex_point pts[3] = {
        {best_l, std::log(best_s), 0.0},
        {best_l + 0.04, std::log(best_s), 0.0},
        {best_l, std::log(best_s) + 0.04, 0.0},
    };
    for (auto& p : pts) p.f = eval(p.lambda, p.log_sigma);
    bool converged = false;
    for (int it = 0; it < 600; ++it) {
        std::sort(std::begin(pts), std::end(pts),
                  [](const simplex_point& a, const simplex_point& b) {
                      return a.f < b.f;
                  });
        const double spread = std::max(
            std::abs(pts[2].lambda - pts[0].lambda),
            std::abs(pts[2].log_sigma - pts[0].log_sigma));
        if (spread < 1e-10 && pts[2].f - pts[0].f < 1e-15) {
            converged = true;
            break;
        }
        const double cl = 0.5 * (pts[0].lambda + pts[1].lambda);
        const double cs = 0.5 * (pts[0].log_sigma + pts[1].log_sigma);
        const double rl = cl + (cl - pts[2].lambda);
        const double rs = cs + (cs - pts[2].log_sigma);
        const double fr = eval(rl, rs);
        if (fr < pts[0].f) {
            const double el = cl + 2.0 * (cl - pts[2].lambda);
            const double es = cs + 2.0 * (cs - pts[2].log_sigma);
            const double fe = eval(el, es);
            pts[2] = fe < fr ? simplex_point{el, es, fe}
                             : simplex_point{rl, rs, fr};
        } else if (fr < pts[1].f) {
            pts[2] = {rl, rs, fr};
        } else {
            const double kl = cl + 0.5 * (pts[2].lambda - cl);
            const double ks = cs + 0.5 * (pts[2].log_sigma - cs);
            const double fk = eval(kl, ks);
            if (fk < pts[2].f) {
                pts[2] = {kl, ks, fk};
            } else {
                for (int i = 1; i < 3; ++i) {
                    pts[i].lambda =
                        pts[0].lambda + 0.5 * (pts[i].lambda - pts[0].lambda);
                    pts[i].log_sigma = pts[0].log_sigma +
                                       0.5 * (pts[i].log_sigma -
                                              pts[0].log_sigma);
                    pts[i].f = eval(pts[i].lambda, pts[i].log_sigma);
                }
            }
        }
    }
    std::sort(std::begin(pts), std::end(pts),
              [](const simplex_point& a, const simplex_point& b) {
                  return a.f < b.f;
              });
    const double lambda = std::abs(pts[0].lambda);
    const double sigma = std::exp(pts[0].log_sigma);
    const double residual = std::sqrt(std::max(0.0, pts[0].f));
    return {lambda, sigma, residual, converged};
}

double overlay_amplitude(const spatial_profile& target, double lambda,
                         double sigma) {
    const int npts = 4001;
    const double inv2s2 = 0.5 / (sigma * sigma);
    double dot = 0.0, gg = 0.0;
    for (int i = 0; i < npts; ++i) {
        const double x = -8.0 + 16.0 * i / (npts - 1.0);
        const double g = std::exp(-x * x * inv2s2) * 2.0 * std::cos(lambda * x);
        dot += evaluate_profile(target, x) * g;
        gg += g * g;
    }
    return gg == 0.0 ? 0.0 : dot / gg;
}

} // namespace udw
