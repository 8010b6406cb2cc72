#include "udw/config.hpp"
#include "udw/errors.hpp"
#include "udw/figures.hpp"
#include "udw/profiles.hpp"
#include "udw/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct cli_options {
    std::string config_path;
    std::string out;
    std::string format;
    int workers = 0;
    double tol = 0.0;
};

void add_common(CLI::App* sub, cli_options& o, bool needs_config) {
    auto* c = sub->add_option("--config", o.config_path,
                              "experiment config file");
    if (needs_config) c->required();
    sub->add_option("--out", o.out, "output path (overrides config)");
    sub->add_option("--format", o.format, "csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", o.workers, "concurrent evaluators");
    sub->add_option("--tol", o.tol, "quadrature tolerance override");
}

void apply_overrides(udw::experiment_config& cfg, const cli_options& o) {
    if (!o.out.empty()) cfg.out.path = o.out;
    if (o.format == "csv") cfg.out.format = udw::output_format::csv;
    if (o.format == "json") cfg.out.format = udw::output_format::json;
    if (o.tol > 0.0) cfg.tol.quad_tol = o.tol;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw udw::config_error("cannot open output file", {"path: " + path});
    out << text;
    if (!out) throw udw::config_error("write failed", {"path: " + path});
}

int run_table(const udw::experiment_config& cfg, int workers) {
    const udw::sweep_table table = udw::run_sweep(cfg, workers);
    const std::string text = cfg.out.format == udw::output_format::json
                                 ? udw::emit_json(table)
                                 : udw::emit_csv(table);
    write_file(cfg.out.path, text);
    for (const auto& r : table.rows)
        if (!r.converged) return 2;
    return 0;
}

int run_quantity(const cli_options& o, udw::quantity_kind q) {
    udw::experiment_config cfg = udw::load_config_file(o.config_path);
    cfg.quantity = q;
    apply_overrides(cfg, o);
    udw::validate_for_quantity(cfg, q);
    const int workers = udw::resolve_workers(o.workers);
    std::cerr << "workers=" << workers << "\n";
    return run_table(cfg, workers);
}

int run_fit(const cli_options& o) {
    udw::experiment_config cfg = udw::load_config_file(o.config_path);
    cfg.quantity = udw::quantity_kind::hermite_fit;
    apply_overrides(cfg, o);
    udw::validate_for_quantity(cfg, cfg.quantity);
    std::cerr << "workers=1\n";
    const auto& hc = std::get<udw::hermite_coupling>(cfg.model.profile);
    const udw::hermite_fit fit = udw::hermite_fit_report(hc.n, hc.m);
    std::string text;
    if (cfg.out.format == udw::output_format::json) {
        nlohmann::ordered_json doc;
        doc["lambda"] = fit.lambda;
        doc["sigma"] = fit.sigma;
        doc["residual"] = fit.residual;
        doc["converged"] = fit.converged;
        text = doc.dump(2) + "\n";
    } else {
        char buf[256];
        std::snprintf(buf, sizeof buf, "lambda,sigma,residual,converged\n");
        text = buf;
        auto fmt = [](double v) {
            char b[64];
            const auto r = std::to_chars(b, b + sizeof b, v);
            return std::string(b, r.ptr);
        };
        text += fmt(fit.lambda) + "," + fmt(fit.sigma) + "," +
                fmt(fit.residual) + "," + (fit.converged ? "true" : "false") +
                "\n";
    }
    write_file(cfg.out.path, text);
    return fit.converged ? 0 : 2;
}

int run_figure(const cli_options& o, const std::string& id) {
    udw::figure_bundle fb = udw::figure_preset(id);
    const int workers = udw::resolve_workers(o.workers);
    std::cerr << "workers=" << workers << "\n";
    int status = 0;
    for (auto& lc : fb.curves) {
        udw::experiment_config cfg = lc.cfg;
        apply_overrides(cfg, o);
        const std::string base = o.out.empty() ? fb.id : o.out;
        const std::string ext =
            cfg.out.format == udw::output_format::json ? "json" : "csv";
        cfg.out.path = base + "_" + lc.label + "." + ext;
        const int rc = run_table(cfg, workers);
        if (rc != 0) status = rc;
        std::cout << cfg.out.path << "\n";
    }
    std::cout << fb.recipe << "\n";
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequency windows and transition rates for spatially "
                 "extended detectors"};
    app.require_subcommand(1);

    cli_options o;
    std::string figure_id;

    auto* window = app.add_subcommand("window", "frequency window sweep");
    add_common(window, o, true);
    auto* rate = app.add_subcommand("rate", "vacuum transition rate sweep");
    add_common(rate, o, true);
    auto* particle =
        app.add_subcommand("particle-rate", "one-particle rate sweep");
    add_common(particle, o, true);
    auto* kms =
        app.add_subcommand("kms-check", "detailed-balance ratio sweep");
    add_common(kms, o, true);
    auto* fit = app.add_subcommand("fit-hermite",
                                   "double-gaussian fit of a hermite "
                                   "coupling profile");
    add_common(fit, o, true);
    auto* figure =
        app.add_subcommand("figure", "run a preset figure reproduction");
    figure->add_option("id", figure_id, "fig1..fig7")->required();
    add_common(figure, o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(window))
            return run_quantity(o, udw::quantity_kind::window);
        if (app.got_subcommand(rate))
            return run_quantity(o, udw::quantity_kind::vacuum_rate);
        if (app.got_subcommand(particle))
            return run_quantity(o, udw::quantity_kind::particle_rate);
        if (app.got_subcommand(kms))
            return run_quantity(o, udw::quantity_kind::kms_check);
        if (app.got_subcommand(fit)) return run_fit(o);
        if (app.got_subcommand(figure)) return run_figure(o, figure_id);
    } catch (const udw::config_error& e) {
        std::cerr << e.what() << "\n";
        for (const auto& s : e.issues) std::cerr << "  - " << s << "\n";
        return 1;
    } catch (const udw::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
