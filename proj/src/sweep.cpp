#include "udw/sweep.hpp"

#include "udw/errors.hpp"
#include "udw/profiles.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>
#include <variant>

namespace udw {

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

const char* path_name(rate_path p) {
    return p == rate_path::closed_form ? "closed_form" : "numeric";
}

sweep_row row_from(double axis, const rate_result& r) {
    return sweep_row{axis, r.rate, r.est_error, r.path, true};
}

sweep_row eval_row(const experiment_config& cfg, double x) {
    const double tol = cfg.tol.quad_tol;
    switch (cfg.quantity) {
    case quantity_kind::profile:
        return sweep_row{x, evaluate_profile(cfg.model.profile, x), 0.0,
                         rate_path::closed_form, true};
    case quantity_kind::window: {
        const auto* acc = std::get_if<uniformly_accelerated>(&cfg.model.traj);
        const std::complex<double> w =
            acc ? rindler_window_1p1(cfg.model.profile, x, acc->a, tol)
                : minkowski_window(cfg.model.profile, x, tol);
        const bool closed = closed_form_available(
            cfg.model.profile,
            acc ? transform_kind::rindler_1p1 : transform_kind::minkowski);
        return sweep_row{x, w.real(), closed ? 0.0 : tol,
                         closed ? rate_path::closed_form : rate_path::numeric,
                         true};
    }
    case quantity_kind::vacuum_rate: {
        model_spec m = cfg.model;
        m.delta = x;
        return row_from(x, vacuum_rate(m, tol));
    }
    case quantity_kind::particle_rate: {
        const double tau =
            cfg.sweep.axis == sweep_axis::tau ? x : cfg.fixed_tau;
        const double gap =
            cfg.sweep.axis == sweep_axis::tau ? cfg.model.delta : x;
        return row_from(x, particle_rate(cfg.model, tau, gap, tol));
    }
    case quantity_kind::kms_check: {
        const auto* acc = std::get_if<uniformly_accelerated>(&cfg.model.traj);
        model_spec m = cfg.model;
        m.delta = x;
        const auto up = vacuum_rate(m, tol);
        m.delta = -x;
        const auto down = vacuum_rate(m, tol);
        const double ratio = up.rate / down.rate;
        const double expect = std::exp(-2.0 * std::numbers::pi * x / acc->a);
        return sweep_row{x, ratio, std::abs(ratio - expect), up.path, true};
    }
    case quantity_kind::hermite_fit:
        break; // handled by the CLI directly, not a sweep
    }
    throw model_error("quantity is not sweepable");
}

} // namespace

sweep_table run_sweep(const experiment_config& cfg, int workers) {
    const std::vector<double> grid = axis_values(cfg.sweep);
    sweep_table table;
    table.quantity = cfg.quantity;
    table.rows.resize(grid.size());

    auto work_one = [&](std::size_t i) {
        try {
            table.rows[i] = eval_row(cfg, grid[i]);
        } catch (const quadrature_failure& e) {
            table.rows[i] = sweep_row{grid[i], e.partial_value, e.est_error,
                                      rate_path::numeric, false};
        } catch (const error&) {
            table.rows[i] =
                sweep_row{grid[i], std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::infinity(),
                          rate_path::numeric, false};
        }
    };

    const int n = std::max(
        1, std::min<int>(workers, static_cast<int>(grid.size())));
    if (n == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) work_one(i);
        return table;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= table.rows.size()) return;
                work_one(i);
            }
        });
    for (auto& th : pool) th.join();
    return table;
}

std::string emit_csv(const sweep_table& t) {
    std::ostringstream os;
    os << "axis,rate,est_error,path,converged\n";
    for (const auto& r : t.rows)
        os << fmt(r.axis) << ',' << fmt(r.value) << ',' << fmt(r.est_error)
           << ',' << path_name(r.path) << ','
           << (r.converged ? "true" : "false") << '\n';
    return os.str();
}

std::string emit_json(const sweep_table& t) {
    nlohmann::ordered_json doc;
    doc["quantity"] = quantity_name(t.quantity);
    doc["columns"] = {"axis", "rate", "est_error", "path", "converged"};
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        row["axis"] = r.axis;
        row["rate"] = r.value;
        row["est_error"] = r.est_error;
        row["path"] = path_name(r.path);
        row["converged"] = r.converged;
        rows.push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

std::vector<sweep_row> parse_csv_rows(const std::string& text) {
    std::vector<sweep_row> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    const auto num = [](const std::string& s) {
        double v = std::numeric_limits<double>::quiet_NaN();
        std::from_chars(s.data(), s.data() + s.size(), v);
        return v;
    };
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const auto c = line.find(',', pos);
            cells.push_back(line.substr(pos, c - pos));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        if (cells.size() != 5) continue;
        rows.push_back(sweep_row{num(cells[0]), num(cells[1]), num(cells[2]),
                                 cells[3] == "closed_form"
                                     ? rate_path::closed_form
                                     : rate_path::numeric,
                                 cells[4] == "true"});
    }
    return rows;
}

int resolve_workers(int cli_workers) {
    if (cli_workers > 0) return cli_workers;
    if (const char* env = std::getenv("UDW_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

} // namespace udw
