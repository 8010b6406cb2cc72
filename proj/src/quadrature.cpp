#include "udw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace udw::quad {

namespace {

using cplx = std::complex<double>;

// 15-point Kronrod abscissae (positive half) with the embedded 7-point
// Gauss rule on the odd-indexed nodes.
constexpr double kron_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kron_w[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct segment {
    double a, b;
    cplx value;
    double err;
};

struct seg_order {
    bool operator()(const segment& p, const segment& q) const {
        return p.err < q.err;
    }
};

// One Gauss-Kronrod panel with the QUADPACK error model.
segment gk15(const std::function<cplx(double)>& f, double a, double b,
             long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cplx fv[15];
    // Index layout: 0..6 positive-side pairs, 14 is the center node.
    cplx resk = 0.0, resg = 0.0;
    double resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        fv[2 * i] = f(c + h * kron_x[i]);
        fv[2 * i + 1] = f(c - h * kron_x[i]);
        resk += kron_w[i] * (fv[2 * i] + fv[2 * i + 1]);
        resabs += kron_w[i] * (std::abs(fv[2 * i]) + std::abs(fv[2 * i + 1]));
        if (i % 2 == 1)
            resg += gauss_w[i / 2] * (fv[2 * i] + fv[2 * i + 1]);
    }
    fv[14] = f(c);
    resk += kron_w[7] * fv[14];
    resg += gauss_w[3] * fv[14];
    resabs += kron_w[7] * std::abs(fv[14]);
    evals += 15;

    const cplx mean = resk * 0.5;
    double resasc = kron_w[7] * std::abs(fv[14] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kron_w[i] *
                  (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
    resasc *= h;
    resabs *= h;

    double err = std::abs(resk - resg) * h;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    err = std::max(err, 50.0 * 2.220446049250313e-16 * resabs);
    return {a, b, resk * h, err};
}

result adaptive_core(const std::function<cplx(double)>& f, double a, double b,
                     double tol, long budget, int initial_segments) {
    result out;
    std::priority_queue<segment, std::vector<segment>, seg_order> heap;
    cplx total = 0.0;
    double total_err = 0.0;
    // Seeding must fit the budget too (15 evaluations per segment).
    initial_segments = static_cast<int>(
        std::max<long>(1, std::min<long>(initial_segments, budget / 15)));
    const double w0 = (b - a) / initial_segments;
    for (int i = 0; i < initial_segments; ++i) {
        segment s = gk15(f, a + i * w0, a + (i + 1) * w0, out.evaluations);
        total += s.value;
        total_err += s.err;
        heap.push(s);
    }
    const double min_width = 1e-14 * std::abs(b - a);
    while (total_err > tol && !heap.empty()) {
        if (out.evaluations + 30 > budget) break;
        segment worst = heap.top();
        if (worst.b - worst.a < min_width) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        segment l = gk15(f, worst.a, mid, out.evaluations);
        segment r = gk15(f, mid, worst.b, out.evaluations);
        total += l.value + r.value - worst.value;
        total_err += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
    }
    out.value = total;
    out.est_error = total_err;
    out.converged = total_err <= tol;
    return out;
}

int seed_segments(double span, std::optional<double> oscillation) {
    int n = 4;
    if (oscillation && *oscillation != 0.0) {
        const double cycles = std::abs(*oscillation) * span / (2.0 * M_PI);
        n = std::max(n, static_cast<int>(2.0 * cycles));
    }
    return std::min(n, 2048);
}

} // namespace

result integrate_adaptive(const integrand_spec& spec, double tol, long budget) {
    if (!(tol > 0.0)) throw error("integrate_adaptive requires tol > 0");
    switch (spec.domain) {
        case domain_kind::finite: {
            if (!(spec.b > spec.a))
                throw error("integrate_adaptive requires b > a");
            return adaptive_core(spec.f, spec.a, spec.b, tol, budget,
                                 seed_segments(spec.b - spec.a,
                                               spec.oscillation));
        }
        case domain_kind::half_line: {
            auto& f = spec.f;
            auto mapped = [&f](double t) {
                const double om = 1.0 - t;
                return f(t / om) / (om * om);
            };
            return adaptive_core(mapped, 0.0, 1.0, tol, budget, 8);
        }
        case domain_kind::full_line: {
            auto& f = spec.f;
            auto mapped = [&f](double t) {
                const double om = 1.0 - t * t;
                return f(t / om) * (1.0 + t * t) / (om * om);
            };
            return adaptive_core(mapped, -1.0, 1.0, tol, budget, 16);
        }
    }
    throw error("integrate_adaptive: unknown domain");
}

std::complex<double> fourier_window_1d(
    const std::function<double(double)>& profile, double k, double tol) {
    integrand_spec spec;
    spec.f = [&profile, k](double x) {
        return profile(x) * std::polar(1.0, k * x);
    };
    spec.domain = domain_kind::full_line;
    spec.oscillation = k;
    auto r = integrate_adaptive(spec, tol);
    if (!r.converged)
        throw quadrature_failure("fourier_window_1d did not converge",
                                 std::abs(r.value), r.est_error);
    return r.value;
}

namespace {

// 15-point Gauss-Legendre rule, used to project the panel integrand on
// Legendre polynomials for the phase-extracted (Filon-type) path.
constexpr double gl_x[15] = {
    -0.987992518020485428489565718587,
    -0.937273392400705904307758947710,
    -0.848206583410427216200648320774,
    -0.724417731360170047416186054614,
    -0.570972172608538847537226737254,
    -0.394151347077563369897207370981,
    -0.201194093997434522300628303395,
    0.000000000000000000000000000000,
    0.201194093997434522300628303395,
    0.394151347077563369897207370981,
    0.570972172608538847537226737254,
    0.724417731360170047416186054614,
    0.848206583410427216200648320774,
    0.937273392400705904307758947710,
    0.987992518020485428489565718587,
};
constexpr double gl_w[15] = {
    0.030753241996117268354628393577204,
    0.070366047488108124709267416450667,
    0.107159220467171935011869546685869,
    0.139570677926154314447804794511028,
    0.166269205816993933553200860481209,
    0.186161000015562211026800561866423,
    0.198431485327111576456118326443839,
    0.202578241925561272880620199967519,
    0.198431485327111576456118326443839,
    0.186161000015562211026800561866423,
    0.166269205816993933553200860481209,
    0.139570677926154314447804794511028,
    0.107159220467171935011869546685869,
    0.070366047488108124709267416450667,
    0.030753241996117268354628393577204,
};

constexpr int filon_degree = 12;

const double* legendre_table() {
    // P_n(gl_x[i]) for n <= filon_degree, row-major [n][i].
    static std::vector<double> table = [] {
        std::vector<double> t((filon_degree + 1) * 15);
        for (int i = 0; i < 15; ++i) {
            double pm = 1.0, p = gl_x[i];
            t[0 * 15 + i] = 1.0;
            t[1 * 15 + i] = p;
            for (int n = 1; n < filon_degree; ++n) {
                double pp = ((2.0 * n + 1.0) * gl_x[i] * p - n * pm) / (n + 1.0);
                pm = p;
                p = pp;
                t[(n + 1) * 15 + i] = p;
            }
        }
        return t;
    }();
    return table.data();
}

// int_{-1}^{1} P_n(u) e^{-i theta u} du = 2 (-i)^n j_n(theta), theta >= 0.
void legendre_moments(double theta, cplx* m) {
    const double t = std::abs(theta);
    const bool flip = theta < 0.0;
    const cplx mi(0.0, -1.0);
    cplx phase = 2.0;
    for (int n = 0; n <= filon_degree; ++n) {
        cplx v = phase * std::sph_bessel(unsigned(n), t);
        m[n] = flip ? std::conj(v) : v;
        phase *= mi;
    }
}

struct filon_ctx {
    const std::function<cplx(double)>* g;
    double delta;
    double tol_per_width;
    double min_width;
    long budget;
    long evals = 0;
    cplx total = 0.0;
    double err = 0.0;
    bool ok = true;
};

cplx filon_rule(filon_ctx& ctx, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double* P = legendre_table();
    cplx coef[filon_degree + 1];
    for (int n = 0; n <= filon_degree; ++n) coef[n] = 0.0;
    for (int i = 0; i < 15; ++i) {
        const cplx gi = (*ctx.g)(mid + half * gl_x[i]);
        for (int n = 0; n <= filon_degree; ++n)
            coef[n] += (0.5 * (2.0 * n + 1.0) * gl_w[i] * P[n * 15 + i]) * gi;
    }
    ctx.evals += 15;
    cplx moments[filon_degree + 1];
    legendre_moments(ctx.delta * half, moments);
    cplx sum = 0.0;
    for (int n = 0; n <= filon_degree; ++n) sum += coef[n] * moments[n];
    return half * std::polar(1.0, -ctx.delta * mid) * sum;
}

void filon_recurse(filon_ctx& ctx, double a, double b, cplx whole, int depth) {
    const double mid = 0.5 * (a + b);
    const cplx left = filon_rule(ctx, a, mid);
    const cplx right = filon_rule(ctx, mid, b);
    const double disc = std::abs(left + right - whole);
    const double allowance = ctx.tol_per_width * (b - a);
    if (disc <= allowance || depth >= 40 || (b - a) < ctx.min_width ||
        ctx.evals + 30 > ctx.budget) {
        ctx.total += left + right;
        ctx.err += disc;
        if (disc > allowance && depth >= 40) ctx.ok = false;
        if (ctx.evals + 30 > ctx.budget && disc > allowance) ctx.ok = false;
        return;
    }
    filon_recurse(ctx, a, mid, left, depth + 1);
    filon_recurse(ctx, mid, b, right, depth + 1);
}

} // namespace

result oscillatory_halfline(const std::function<cplx(double)>& g, double delta,
                            double tol, double horizon, double tail_tol) {
    if (!(horizon > 0.0)) throw error("oscillatory_halfline requires horizon > 0");
    if (!(tol > 0.0)) throw error("oscillatory_halfline requires tol > 0");
    if (tail_tol < 0.0) tail_tol = tol * 1e-2;

    // Tail bookkeeping from the decay envelope at the horizon.
    const double gh = std::abs(g(horizon));
    const double g9 = std::abs(g(0.9 * horizon));
    double tail = 0.0;
    if (gh > 0.0) {
        double decay_len = horizon;
        if (g9 > gh) decay_len = 0.1 * horizon / std::log(g9 / gh);
        const double osc_len =
            delta != 0.0 ? 2.0 / std::abs(delta) : decay_len;
        tail = gh * std::min(decay_len, osc_len);
    }

    result out;
    if (std::abs(delta) * horizon <= 50.0) {
        integrand_spec spec;
        spec.f = [&g, delta](double s) {
            return g(s) * std::polar(1.0, -delta * s);
        };
        spec.domain = domain_kind::finite;
        spec.a = 0.0;
        spec.b = horizon;
        spec.oscillation = delta;
        out = integrate_adaptive(spec, tol);
    } else {
        filon_ctx ctx;
        ctx.g = &g;
        ctx.delta = delta;
        ctx.tol_per_width = tol / horizon;
        ctx.min_width = 1e-12 * horizon;
        ctx.budget = default_budget;
        const int n0 = 16;
        const double w0 = horizon / n0;
        for (int i = 0; i < n0; ++i) {
            const double a = i * w0, b = (i + 1) * w0;
            const cplx whole = filon_rule(ctx, a, b);
            filon_recurse(ctx, a, b, whole, 0);
        }
        out.value = ctx.total;
        out.est_error = ctx.err;
        out.evaluations = ctx.evals;
        out.converged = ctx.ok && ctx.err <= tol;
    }
    out.evaluations += 2; // tail probes
    out.est_error += tail;
    out.converged = out.converged && gh <= tail_tol;
    return out;
}

} // namespace udw::quad
