#include "udw/figures.hpp"

#include "udw/errors.hpp"
#include "udw/profiles.hpp"

#include <cmath>
#include <sstream>

namespace udw {

namespace {

experiment_config base(quantity_kind q, sweep_axis ax, double a, double b,
                       long points) {
    experiment_config cfg;
    cfg.quantity = q;
    cfg.sweep = sweep_spec{ax, a, b, points};
    cfg.has_sweep = true;
    return cfg;
}

labeled_config curve(std::string label, experiment_config cfg,
                     const std::string& id) {
    cfg.out.path = id + "_" + label + ".csv";
    cfg.model = validate_model(cfg.model);
    validate_for_quantity(cfg, cfg.quantity);
    return labeled_config{std::move(label), std::move(cfg)};
}

std::string gnuplot_recipe(const figure_bundle& fb) {
    std::ostringstream os;
    os << "gnuplot -e \"set datafile separator ','; "
          "set key autotitle columnhead; plot ";
    for (std::size_t i = 0; i < fb.curves.size(); ++i) {
        if (i) os << ", ";
        os << "'" << fb.id << "_" << fb.curves[i].label
           << ".csv' using 1:2 with lines";
    }
    os << "\"";
    return os.str();
}

// Mass labels without dots so they can live in file names.
std::string mass_label(double m) {
    return m == 0.0 ? "m0" : m == 1.0 ? "m1" : "m1p5";
}
std::string accel_label(double a) {
    return a == 0.1 ? "a0p1" : a == 1.0 ? "a1" : "a1p5";
}

figure_bundle build(const std::string& id) {
    figure_bundle fb;
    fb.id = id;

    if (id == "fig1") {
        auto cfg = base(quantity_kind::window, sweep_axis::k, -10.0, 10.0,
                        2001);
        cfg.model.profile = make_double_gaussian(1.0, 5.0);
        fb.curves.push_back(curve("window", std::move(cfg), id));
        return fb;
    }

    if (id == "fig2" || id == "fig3") {
        const int m = id == "fig2" ? 1 : 3;
        const double lam = id == "fig2" ? 1.66 : 2.5;
        const double sig = id == "fig2" ? 1.0 / std::sqrt(0.89) : 1.0;
        auto hc = base(quantity_kind::profile, sweep_axis::k, -8.0, 8.0, 801);
        hc.model.profile = make_hermite_coupling(0, m);
        const double amp =
            overlay_amplitude(hc.model.profile, lam, sig);
        auto dg = base(quantity_kind::profile, sweep_axis::k, -8.0, 8.0, 801);
        dg.model.profile = make_double_gaussian(sig, lam, amp);
        fb.curves.push_back(curve("hermite", std::move(hc), id));
        fb.curves.push_back(curve("gaussian", std::move(dg), id));
        return fb;
    }

    if (id == "fig4" || id == "fig5") {
        const bool window = id == "fig5";
        for (const double m : {0.0, 1.0, 1.5}) {
            auto cfg = window ? base(quantity_kind::vacuum_rate,
                                     sweep_axis::delta, -12.0, 2.0, 701)
                              : base(quantity_kind::vacuum_rate,
                                     sweep_axis::delta, -8.0, 2.0, 501);
            cfg.model.st = spacetime{spacetime_kind::dim3p1_massive, m};
            cfg.model.profile = window
                                    ? spatial_profile(make_double_gaussian(
                                          1.0, 5.0))
                                    : spatial_profile(point_like{});
            fb.curves.push_back(curve(mass_label(m), std::move(cfg), id));
        }
        return fb;
    }

    if (id == "fig6" || id == "fig7") {
        const bool window = id == "fig7";
        for (const double a : {0.1, 1.0, 1.5}) {
            // Grids avoid the infrared band around delta = 0.
            auto cfg = window ? base(quantity_kind::vacuum_rate,
                                     sweep_axis::delta, -8.0, 8.0, 800)
                              : base(quantity_kind::vacuum_rate,
                                     sweep_axis::delta, -2.0, 2.0, 400);
            cfg.model.traj = uniformly_accelerated{a};
            cfg.model.profile =
                window ? spatial_profile(
                             make_rindler_double_gaussian(1.0, 5.0, a))
                       : spatial_profile(point_like{});
            fb.curves.push_back(curve(accel_label(a), std::move(cfg), id));
        }
        return fb;
    }

    throw config_error("unknown figure id",
                       {"got '" + id + "', expected fig1..fig7"});
}

} // namespace

figure_bundle figure_preset(const std::string& id) {
    figure_bundle fb = build(id);
    fb.recipe = gnuplot_recipe(fb);
    return fb;
}

std::vector<std::string> figure_ids() {
    return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
}

} // namespace udw
