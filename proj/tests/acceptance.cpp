// Acceptance gate: one line per criterion, exit code = number of failures.
#include "udw/config.hpp"
#include "udw/detector.hpp"
#include "udw/errors.hpp"
#include "udw/profiles.hpp"
#include "udw/specfun.hpp"
#include "udw/sweep.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace udw;
namespace fs = std::filesystem;

namespace {

struct gate {
    int failures = 0;

    void criterion(int id, const std::string& name,
                   const std::function<bool(std::string&)>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string note;
        try {
            ok = body(note);
        } catch (const std::exception& e) {
            ok = false;
            note = std::string("exception: ") + e.what();
        }
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        std::printf("[%s] %02d %s%s%s (%.2f s)\n", ok ? "PASS" : "FAIL", id,
                    name.c_str(), note.empty() ? "" : ": ",
                    note.c_str(), dt);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

model_spec inertial_spec(const spatial_profile& p, double mass, double delta) {
    model_spec m;
    m.st = mass == 0.0
               ? spacetime{spacetime_kind::dim1p1_massless, 0.0}
               : spacetime{spacetime_kind::dim3p1_massive, mass};
    m.profile = p;
    m.delta = delta;
    return validate_model(m);
}

model_spec boost_spec(const spatial_profile& p, double a, double delta) {
    model_spec m;
    m.st = {spacetime_kind::dim1p1_massless, 0.0};
    m.profile = p;
    m.traj = uniformly_accelerated{a};
    m.delta = delta;
    return validate_model(m);
}

// Fixed-step Simpson oracle for int_0^T e^{-x cosh t} cos(nu t) dt with T
// chosen so the discarded tail is below the underflow threshold.
double bessel_oracle(double nu, double x) {
    const double T = std::acosh(std::max(2.0, 745.0 / x));
    const long n = 2 * static_cast<long>(T / 2e-4) + 2;
    const double h = T / static_cast<double>(n);
    long double acc = 0.0L;
    for (long i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) * h;
        const double f = std::exp(-x * std::cosh(t)) * std::cos(nu * t);
        const double w = i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += static_cast<long double>(w * f);
    }
    return static_cast<double>(acc * h / 3.0L);
}

struct cli_env {
    std::string exe;
    std::string cfg;
    fs::path tmp;
    bool available = false;
};

cli_env make_cli_env() {
    cli_env env;
    const char* exe = std::getenv("UDW_CLI");
    const char* cfg = std::getenv("UDW_CONFIG_DIR");
    if (!exe || !cfg) return env;
    env.exe = exe;
    env.cfg = cfg;
    env.tmp = fs::temp_directory_path() / "udw_acceptance";
    fs::remove_all(env.tmp);
    fs::create_directories(env.tmp);
    env.available = true;
    return env;
}

int run_cli(const cli_env& env, const std::string& args) {
    const std::string cmd = "cd \"" + env.tmp.string() + "\" && \"" + env.exe +
                            "\" " + args + " >/dev/null 2>&1";
    const int ret = std::system(cmd.c_str());
    return ret == -1 ? -1 : WEXITSTATUS(ret);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    gate g;

    g.criterion(1, "tuned double-gaussian window grid", [](std::string& note) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto dg = make_double_gaussian(1.0, 5.0);
        sweep_spec grid;
        grid.axis = sweep_axis::k;
        grid.start = -10.0;
        grid.stop = 10.0;
        grid.points = 2001;
        double worst = 0.0, best_v = -1.0, best_k = 0.0;
        for (const double k : axis_values(grid)) {
            const auto closed =
                minkowski_window(dg, k, 1e-13, window_path::closed_form);
            const auto quad =
                minkowski_window(dg, k, 1e-13, window_path::quadrature);
            worst = std::max(worst, std::abs(closed - quad));
            if (k >= 0.0 && closed.real() > best_v) {
                best_v = closed.real();
                best_k = k;
            }
        }
        const double dt = seconds_since(t0);
        std::ostringstream ss;
        ss << "max closed-vs-quadrature gap " << worst << ", positive peak at "
           << best_k;
        note = ss.str();
        return worst <= 1e-12 && std::abs(best_k - 5.0) < 1e-9 && dt < 1.0;
    });

    g.criterion(2, "hermite coupling fit boxes", [](std::string& note) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto f01 = hermite_fit_report(0, 1);
        const auto f03 = hermite_fit_report(0, 3);
        const double s01 = 1.0 / std::sqrt(0.89);
        const bool box01 = std::abs(f01.lambda - 1.66) <= 0.05 &&
                           std::abs(f01.sigma - s01) <= 0.05;
        const bool box03 = std::abs(f03.lambda - 2.5) <= 0.05 &&
                           std::abs(f03.sigma - 1.0) <= 0.05;
        const bool resid = f01.residual < 0.0070 && f03.residual < 0.075;
        std::ostringstream ss;
        ss << "(0,1) optimum (" << f01.lambda << ", " << f01.sigma
           << ") vs box (1.66, " << s01 << ") +-0.05; (0,3) optimum ("
           << f03.lambda << ", " << f03.sigma << ")";
        note = ss.str();
        return box01 && box03 && resid && f01.converged && f03.converged &&
               seconds_since(t0) < 30.0;
    });

    g.criterion(3, "gapped inertial response is exact", [](std::string&) {
        bool ok = true;
        for (const double m : {0.0, 1.0, 1.5}) {
            for (double d = -8.0; d <= 2.0; d += 0.25) {
                const double rate =
                    vacuum_rate(inertial_spec(point_like{}, m, d)).rate;
                const double expect =
                    specfun::heaviside(-d - m) *
                    std::sqrt(std::max(0.0, d * d - m * m));
                ok = ok && rate == expect;
                if (-d < m) ok = ok && rate == 0.0;
                if (m == 0.0) ok = ok && rate == std::abs(d) * (d < 0.0);
            }
        }
        return ok;
    });

    g.criterion(4, "inertial response is band limited", [](std::string& note) {
        const auto dg = make_double_gaussian(1.0, 5.0);
        bool ok = true;
        double worst_far = 0.0;
        for (const double m : {0.0, 1.0, 1.5}) {
            double peak = 0.0, far = 0.0;
            for (double d = -12.0; d <= 2.0; d += 0.01) {
                const double r = vacuum_rate(inertial_spec(dg, m, d)).rate;
                peak = std::max(peak, r);
                if (-d > 11.0) far = std::max(far, r);
            }
            const double near =
                vacuum_rate(inertial_spec(dg, m, -5.0)).rate;
            ok = ok && peak > 0.0 && near > 0.0 && far <= 1e-6 * peak;
            worst_far = std::max(worst_far, far / peak);
        }
        std::ostringstream ss;
        ss << "out-of-band fraction " << worst_far;
        note = ss.str();
        return ok;
    });

    g.criterion(5, "detailed balance of the thermal response",
                [](std::string& note) {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (const double a : {0.1, 1.0, 1.5}) {
            for (const double d : {0.25, 0.5, 1.0, 2.0, 4.0}) {
                for (int prof = 0; prof < 2; ++prof) {
                    const spatial_profile p =
                        prof == 0
                            ? spatial_profile{point_like{}}
                            : spatial_profile{
                                  make_rindler_double_gaussian(1.0, 5.0, a)};
                    const double up = vacuum_rate(boost_spec(p, a, d)).rate;
                    const double down =
                        vacuum_rate(boost_spec(p, a, -d)).rate;
                    const double target = std::exp(-2.0 * M_PI * d / a);
                    worst = std::max(worst,
                                     std::abs(up / down - target) / target);
                }
            }
        }
        std::ostringstream ss;
        ss << "worst relative defect " << worst;
        note = ss.str();
        return worst <= 1e-9 && seconds_since(t0) < 5.0;
    });

    g.criterion(6, "numeric rate transform against the closed form",
                [](std::string& note) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto dg = make_double_gaussian(1.0, 5.0);
        double worst = 0.0;
        for (const double d : {-6.0, -5.0, -4.0}) {
            const auto spec = inertial_spec(dg, 0.0, d);
            const double closed = vacuum_rate(spec).rate;
            const double numeric = vacuum_rate_numeric(spec, 1e-6).rate;
            worst = std::max(worst, std::abs(numeric - closed) / closed);
        }
        std::ostringstream ss;
        ss << "worst relative gap " << worst;
        note = ss.str();
        return worst <= 1e-4 && seconds_since(t0) < 60.0;
    });

    g.criterion(7, "bessel kernel accuracy", [](std::string& note) {
        double worst = 0.0;
        for (const double nu : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            for (const double x : {0.1, 1.0, 5.0, 10.0}) {
                const double got =
                    specfun::bessel_k_imag(nu, x, 1e-12).value;
                worst = std::max(worst, std::abs(got - bessel_oracle(nu, x)));
            }
        }
        const double k0 = specfun::bessel_k_imag(0.0, 1.0, 1e-12).value;
        std::ostringstream ss;
        ss << "worst oracle gap " << worst;
        note = ss.str();
        return worst <= 1e-10 && std::abs(k0 - 0.4210244382) <= 1e-9;
    });

    g.criterion(8, "metric cancellation in the boost window",
                [](std::string& note) {
        double worst = 0.0;
        for (const double a : {0.1, 1.0, 1.5}) {
            const auto rdg = make_rindler_double_gaussian(1.0, 5.0, a);
            for (double w = 0.5; w <= 8.0; w += 0.5) {
                const auto closed = rindler_window_1p1(
                    rdg, w, a, 1e-10, window_path::closed_form);
                const auto quad = rindler_window_1p1(
                    rdg, w, a, 1e-10, window_path::quadrature);
                worst = std::max(worst, std::abs(closed - quad));
            }
        }
        double sup = 0.0;
        const double a0 = 1e-4;
        const auto rdg0 = make_rindler_double_gaussian(1.0, 5.0, a0);
        const auto dg = make_double_gaussian(1.0, 5.0);
        for (double w = 0.5; w <= 10.0; w += 0.25) {
            const auto r = rindler_window_1p1(rdg0, w, a0, 1e-10,
                                              window_path::quadrature);
            const auto m = minkowski_window(dg, w, 1e-12);
            sup = std::max(sup, std::abs(r - m));
        }
        std::ostringstream ss;
        ss << "closed-vs-quadrature " << worst << ", inertial-limit sup "
           << sup;
        note = ss.str();
        return worst <= 1e-8 && sup < 1e-6;
    });

    g.criterion(9, "packet overlap decay and edge rates",
                [](std::string& note) {
        model_spec m;
        m.st = {spacetime_kind::dim1p1_massless, 0.0};
        m.profile = make_double_gaussian(1.0, 5.0);
        m.state = minkowski_particle{make_gaussian_packet(5.0, 0.5)};
        m = validate_model(m);
        double peak = 0.0;
        for (double tau = -50.0; tau <= 50.0; tau += 0.5)
            peak = std::max(peak, std::abs(packet_overlap_I(m, tau, 1e-9)));
        const double tail = std::max(std::abs(packet_overlap_I(m, 50.0, 1e-9)),
                                     std::abs(packet_overlap_I(m, -50.0, 1e-9)));

        model_spec vac = m;
        vac.state = vacuum_state{};
        vac.delta = -5.0;
        const double base = vacuum_rate(validate_model(vac)).rate;
        double edge_gap = 0.0;
        for (const double tau : {-30.0, 30.0}) {
            const double r = particle_rate(m, tau, -5.0, 1e-6).rate;
            edge_gap = std::max(edge_gap, std::abs(r - base) / base);
        }
        std::ostringstream ss;
        ss << "tail fraction " << tail / peak << ", edge defect " << edge_gap;
        note = ss.str();
        return tail < 1e-3 * peak && edge_gap <= 1e-3;
    });

    g.criterion(10, "high-acceleration suppression of the correction",
                [](std::string& note) {
        const auto excursion = [](double a) {
            model_spec m;
            m.st = {spacetime_kind::dim1p1_massless, 0.0};
            m.traj = uniformly_accelerated{a};
            m.profile = make_rindler_double_gaussian(1.0, 5.0, a);
            m.state =
                unruh_particle{make_gaussian_packet(5.0, 0.5), wedge::right};
            m = validate_model(m);
            model_spec vac = m;
            vac.state = vacuum_state{};
            vac.delta = 5.0;
            const double base = vacuum_rate(validate_model(vac)).rate;
            double worst = 0.0;
            for (double tau = -10.0; tau <= 10.0; tau += 2.0)
                worst = std::max(
                    worst,
                    std::abs(particle_correction(m, tau, 5.0, 1e-6).value));
            return worst / base;
        };
        const double hot = excursion(20.0);
        const double cold = excursion(1.0);
        std::ostringstream ss;
        ss << "relative excursion " << hot << " at a=20 vs " << cold
           << " at a=1";
        note = ss.str();
        return hot < 0.05 * cold;
    });

    g.criterion(11, "command-line contract", [](std::string& note) {
        const auto env = make_cli_env();
        if (!env.available) {
            note = "UDW_CLI / UDW_CONFIG_DIR not set";
            return false;
        }
        const auto preset = [&](const std::string& n) {
            return "--config \"" + env.cfg + "/" + n + "\"";
        };
        bool ok = true;
        ok = ok && run_cli(env, "window " + preset("window_dg.ini") +
                                    " --out w.csv") == 0;
        ok = ok && run_cli(env, "rate " + preset("rate_accelerated_rdg.ini") +
                                    " --out r1.csv --workers 2") == 0;
        ok = ok && run_cli(env, "rate " + preset("rate_accelerated_rdg.ini") +
                                    " --out r2.csv --workers 7") == 0;
        ok = ok && run_cli(env, "kms-check " + preset("kms_rdg.ini") +
                                    " --out k.csv") == 0;
        ok = ok && run_cli(env, "particle-rate " +
                                    preset("particle_minkowski.ini") +
                                    " --out p.csv --workers 4") == 0;
        ok = ok && run_cli(env, "fit-hermite " + preset("fit_hermite_03.ini") +
                                    " --out f.csv") == 0;
        ok = ok && run_cli(env, "figure fig1") == 0;
        if (!ok) {
            note = "a subcommand exited nonzero";
            return false;
        }
        const auto r1 = slurp(env.tmp / "r1.csv");
        const auto r2 = slurp(env.tmp / "r2.csv");
        if (r1.empty() || r1 != r2) {
            note = "repeat runs differ";
            return false;
        }
        sweep_table t;
        t.quantity = quantity_kind::vacuum_rate;
        t.rows = parse_csv_rows(r1);
        if (emit_csv(t) != r1) {
            note = "csv round-trip is not value-identical";
            return false;
        }
        note = "six subcommands, byte-identical reruns, stable round-trip";
        return true;
    });

    std::printf("acceptance: %d of 11 criteria passed\n", 11 - g.failures);
    return g.failures;
}
